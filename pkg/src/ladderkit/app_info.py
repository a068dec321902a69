# src/ladderkit/app_info.py
# A dependency-light module that owns app metadata + standard paths.

from __future__ import annotations

from pathlib import Path

# QtCore is only needed for QStandardPaths; keep the import optional so
# headless installs without the Qt runtime still get usable paths.
try:
    from PySide6.QtCore import QStandardPaths
except Exception:
    QStandardPaths = None  # type: ignore

# ---- App identity ---------------------------------------------------------
APP_ORG  = "ladderkit.org"
APP_NAME = "LadderKit"
APP_ID   = f"{APP_ORG}.{APP_NAME}"

# Version (single source of truth is package __init__.py if available)
try:
    from . import __version__ as APP_VERSION  # defined in ladderkit/__init__.py
except Exception:
    APP_VERSION = "0.0.0-dev"

# Environment overrides
ENV_MAX_ORDER = "LADDERKIT_MAX_ORDER"
ENV_HOME      = "LADDERKIT_HOME"


# ---- Standard locations (cross-platform) ----------------------------------
def _writable_base(kind_name: str) -> Path:
    if QStandardPaths is not None:
        try:
            kind = getattr(QStandardPaths, kind_name)
            location = QStandardPaths.writableLocation(kind)
            if location:
                return Path(location)
        except Exception:
            pass
    return Path.home() / ".local" / "share"


def app_dir(kind_name: str) -> Path:
    """
    Returns a per-user directory for the app, e.g.
    - Windows: %APPDATA%/LadderKit/ladderkit.org
    - macOS:   ~/Library/Application Support/LadderKit/ladderkit.org
    - Linux:   ~/.local/share/LadderKit/ladderkit.org (or ~/.config for AppConfigLocation)

    `kind_name` is a QStandardPaths.StandardLocation member name. Creation is
    best effort: a read-only home never breaks an import.
    """
    import os

    override = os.environ.get(ENV_HOME)
    if override:
        path = Path(override) / kind_name
    else:
        path = _writable_base(kind_name) / APP_NAME / APP_ORG
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError:
        pass
    return path


# Commonly used paths
SETTINGS_PATH = app_dir("AppLocalDataLocation") / "settings.json"
DATA_DIR      = app_dir("AppDataLocation")
CONFIG_DIR    = app_dir("AppConfigLocation")
LOG_DIR       = CONFIG_DIR / "log"
