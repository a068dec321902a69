# ladderkit/core/log_manager.py

from __future__ import annotations

from datetime import datetime
from pathlib import Path


class LogManager:
    """Daily plain-text log files: <config_dir>/log/yyyyMMdd_{app}.log"""

    def __init__(self, config_dir: str | Path, app_name: str = "app", log_dir: str | Path | None = None):
        self.config_dir = Path(config_dir)
        self.app_name = app_name
        self.log_dir = Path(log_dir) if log_dir is not None else self.config_dir / "log"
        self.log_dir.mkdir(parents=True, exist_ok=True)

    def _get_log_file_path(self) -> Path:
        """Generate log file path with format yyyyMMdd_{app}.log"""
        date_str = datetime.now().strftime("%Y%m%d")
        return self.log_dir / f"{date_str}_{self.app_name}.log"

    def get_current_log_path(self) -> Path:
        return self._get_log_file_path()

    def _write_log(self, message: str) -> None:
        """Write a timestamped message to the daily log file"""
        timestamp = datetime.now().strftime("%H%M%S.%f")[:-2]  # hhmmss.ffff
        log_entry = f"{timestamp} {message}\n"

        try:
            with open(self._get_log_file_path(), "a", encoding="utf-8") as f:
                f.write(log_entry)
        except Exception:
            pass  # logging never takes a run down

    def _format(self, level: str, where: str, message: str, meta: dict | None) -> str:
        prefix = f"{level} " if level else ""
        log_msg = f"{prefix}[{where}] {message}"
        if meta:
            log_msg += f" | {meta}"
        return log_msg

    def log_info(self, where: str, message: str, meta: dict | None = None) -> None:
        """Log an info message with optional metadata"""
        self._write_log(self._format("", where, message, meta))

    def log_debug(self, where: str, message: str, meta: dict | None = None) -> None:
        self._write_log(self._format("DEBUG", where, message, meta))

    def log_warning(self, where: str, message: str, meta: dict | None = None) -> None:
        self._write_log(self._format("WARN", where, message, meta))

    def log_error(self, where: str, message: str, meta: dict | None = None) -> None:
        self._write_log(self._format("ERROR", where, message, meta))

    def log_check(self, name: str, passed: bool, meta: dict | None = None) -> None:
        """One line per oracle check (verification runs)."""
        status = "PASS" if passed else "FAIL"
        self._write_log(self._format("CHECK", name, status, meta))
