from __future__ import annotations

import copy
import json
import os
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from ladderkit.app_info import CONFIG_DIR, ENV_MAX_ORDER, LOG_DIR, SETTINGS_PATH

try:
    from .log_manager import LogManager
except Exception:
    LogManager = None  # type: ignore

DEFAULT_SETTINGS: Dict[str, Any] = {
    # run defaults, overridden per command by RunConfig
    "order": 2,
    "max_order": 6,
    "cutoff": 64,
    "lambda_values": [0.01, 0.02, 0.05],
    "max_level": 8,
    "normalization": "intermediate",   # "intermediate" | "unit"
    "symbolic_units": "symbolic",
    "numeric_units": "natural",
    "output_format": "text",           # "text" | "latex" | "json"
    "tolerances": {
        "oracle": 1e-8,
        "cutoff": 1e-10,
        "hermitian": 1e-12,
        "exact_floor": 1e-10,
        "slope_margin": 0.9,
    },
    "worker_threads": 4,
    "seed": 0,
    "logging_enabled": True,
    "log_checks": True,
}


def overlay(base: Mapping[str, Any], patch: Mapping[str, Any], depth: Optional[int] = None) -> Dict[str, Any]:
    """
    Copy of base with patch laid over it. Nested dicts merge key by key down
    to `depth` levels (None: all the way); anything else is replaced.
    """
    out = dict(base)
    for key, value in patch.items():
        below = out.get(key)
        if isinstance(value, dict) and isinstance(below, dict) and (depth is None or depth > 0):
            out[key] = overlay(below, value, None if depth is None else depth - 1)
        else:
            out[key] = value
    return out


class SettingsManager:
    """
    Persistent run defaults + logging shims.

    Values resolve as: DEFAULT_SETTINGS < settings.json < environment
    (LADDERKIT_MAX_ORDER). Command-line flags are applied later by RunConfig.
    Keys starting with "_" are runtime-only and never written back.
    """

    def __init__(self, settings_path: Path | None = None, log_dir: Path | None = None) -> None:
        self.settings_path: Path = Path(settings_path) if settings_path is not None else SETTINGS_PATH
        self.config_dir: Path = CONFIG_DIR
        self.logs_dir: Path = Path(log_dir) if log_dir is not None else LOG_DIR
        self.default_settings: Dict[str, Any] = copy.deepcopy(DEFAULT_SETTINGS)

        self.settings: Dict[str, Any] = overlay(self.default_settings, self._read_file(), depth=1)
        self._apply_environment()

        self.log_manager = None
        if self.settings.get("logging_enabled", True) and LogManager is not None:
            try:
                self.log_manager = LogManager(self.config_dir, "ladderkit", log_dir=self.logs_dir)
            except Exception:
                self.log_manager = None

    # ----- typed getters ------------------------------------------------------
    def _int(self, key: str, minimum: Optional[int] = None) -> int:
        value = int(self.settings.get(key, self.default_settings[key]))
        return value if minimum is None else max(minimum, value)

    def order(self) -> int:
        return self._int("order")

    def max_order(self) -> int:
        return self._int("max_order")

    def cutoff(self) -> int:
        return self._int("cutoff")

    def max_level(self) -> int:
        return self._int("max_level")

    def worker_threads(self) -> int:
        return self._int("worker_threads", minimum=1)

    def lambda_values(self) -> List[float]:
        return [float(v) for v in self.settings.get("lambda_values", self.default_settings["lambda_values"])]

    def normalization(self) -> str:
        return str(self.settings.get("normalization", self.default_settings["normalization"]))

    def tolerance(self, name: str) -> float:
        table = self.settings.get("tolerances") or {}
        return float(table.get(name, self.default_settings["tolerances"][name]))

    def get(self, key: str, default=None):
        return self.settings.get(key, default)

    def update_settings(self, patch: Dict[str, Any], persist: bool = True) -> None:
        """Merge patch at any depth; optionally save."""
        self.settings = overlay(self.settings, patch)
        if persist:
            self.save_settings()

    # ----- logging shims -------------------------------------------------------
    def _emit(self, method: str, *args: Any) -> None:
        handler = getattr(self.log_manager, method, None) if self.log_manager else None
        if handler is None:
            return
        try:
            handler(*args)
        except Exception:
            pass

    def log_info(self, where: str, message: str, meta: dict | None = None) -> None:
        self._emit("log_info", where, message, meta or {})

    def log_debug(self, where: str, message: str, meta: dict | None = None) -> None:
        self._emit("log_debug", where, message, meta or {})

    def log_warning(self, where: str, message: str, meta: dict | None = None) -> None:
        self._emit("log_warning", where, message, meta or {})

    def log_error(self, where: str, message: str, meta: dict | None = None) -> None:
        self._emit("log_error", where, message, meta or {})

    def log_check(self, name: str, passed: bool, meta: dict | None = None) -> None:
        if self.settings.get("log_checks", True):
            self._emit("log_check", name, passed, meta or {})

    def log_system_event(self, where: str, message: str, meta: dict | None = None) -> None:
        self.log_info(where, message, meta)

    def get_log_file_path(self) -> Optional[Path]:
        if not self.log_manager:
            return None
        try:
            return Path(self.log_manager.get_current_log_path())
        except Exception:
            return None

    # ----- file IO -----------------------------------------------------------------
    def _read_file(self) -> Dict[str, Any]:
        # unreadable or non-object files fall back to the defaults
        try:
            data = json.loads(self.settings_path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return {}
        return data if isinstance(data, dict) else {}

    def _apply_environment(self) -> None:
        raw = os.environ.get(ENV_MAX_ORDER, "").strip()
        if not raw:
            return
        try:
            self.settings["max_order"] = int(raw)
        except ValueError:
            self.settings.setdefault("_env_errors", []).append(f"{ENV_MAX_ORDER}={raw!r} is not an integer")

    def save_settings(self) -> bool:
        """Write to a sibling .tmp, fsync, swap into place, then read back. True on success."""
        payload = {k: v for k, v in self.settings.items() if not k.startswith("_")}
        target = self.settings_path
        staging = target.with_suffix(".tmp")
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            with staging.open("w", encoding="utf-8") as f:
                json.dump(payload, f, indent=2)
                f.flush()
                os.fsync(f.fileno())
            staging.replace(target)
        except OSError as e:
            self.log_error("SettingsManager", f"Could not write {target}: {e}")
            return False

        if self._read_file() != json.loads(json.dumps(payload)):
            self.log_error("SettingsManager", f"Read-back of {target} does not match what was written")
            return False
        return True
