import os

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables
load_dotenv(".env")


class Settings(BaseSettings):
    """Application settings"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="JAHANGIR_",
        case_sensitive=False,
        extra="ignore",  # Ignore extra environment variables
    )

    # Logging
    log_level: str = "INFO"
    log_dir: str = "logs"
    log_to_file: bool = True

    # Worker pool
    default_shards: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    checkpoint_every: int = Field(default=64, ge=1)

    # Extraction
    falsification_log: str = "data/falsifications.jsonl"

    # Sampling beyond the exact path-search ceiling
    sample_path_budget: int = Field(default=200_000, ge=1)

    show_progress: bool = True


settings = Settings()
