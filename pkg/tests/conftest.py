import os
import tempfile

# app_info resolves its directories at import time
os.environ.setdefault("LADDERKIT_HOME", tempfile.mkdtemp(prefix="ladderkit-tests-"))

import pytest

from ladderkit.core.context import AppContext
from ladderkit.core.settings import SettingsManager


@pytest.fixture
def settings_manager(tmp_path, monkeypatch):
    monkeypatch.delenv("LADDERKIT_MAX_ORDER", raising=False)
    return SettingsManager(settings_path=tmp_path / "settings.json", log_dir=tmp_path / "log")


@pytest.fixture
def ctx(settings_manager):
    return AppContext(settings_manager=settings_manager)
