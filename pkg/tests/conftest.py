from pathlib import Path

import pytest

from jahangir_ramsey.core.config import settings


@pytest.fixture(autouse=True)
def quiet_settings(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    monkeypatch.setattr(settings, "show_progress", False)
    monkeypatch.setattr(settings, "log_to_file", False)
    monkeypatch.setattr(settings, "falsification_log", str(tmp_path / "falsifications.jsonl"))
