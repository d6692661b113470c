import threading
from pathlib import Path
from typing import Optional

from jahangir_ramsey.core.config import settings
from jahangir_ramsey.schemas.trace import FalsificationRecord
from jahangir_ramsey.utils.logger import get_logger

logger = get_logger("falsification_sink")


class FalsificationSink:
    """Append-only JSON-lines log of falsification records, one writer at a time."""

    def __init__(self, path: Optional[Path | str] = None) -> None:
        self.path = Path(path or settings.falsification_log)
        self._lock = threading.Lock()
        self.records: list[FalsificationRecord] = []

    def append(self, record: FalsificationRecord) -> None:
        with self._lock:
            self.records.append(record)
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(record.model_dump_json() + "\n")
        logger.error(f"Falsification recorded by {record.operation}: {record.graph6}")

    def load(self) -> list[FalsificationRecord]:
        if not self.path.exists():
            return []
        with self.path.open(encoding="utf-8") as handle:
            return [FalsificationRecord.model_validate_json(line) for line in handle if line.strip()]
