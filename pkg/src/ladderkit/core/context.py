# ladderkit/core/context.py

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ladderkit.core.settings import SettingsManager


@dataclass
class AppContext:
    """
    Lightweight application context for LadderKit.

    Stores references to shared services; creating one has no side effects
    beyond what SettingsManager does (reading settings, opening the log dir).
    """

    settings_manager: Optional[SettingsManager] = None

    @classmethod
    def create(
        cls,
        settings_path: Path | None = None,
        log_dir: Path | None = None,
    ) -> "AppContext":
        """
        Convenience constructor that creates a fresh SettingsManager
        and wires it into the context.
        """
        return cls(settings_manager=SettingsManager(settings_path=settings_path, log_dir=log_dir))
