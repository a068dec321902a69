import json

from ladderkit.core.settings import SettingsManager


def test_defaults(settings_manager):
    assert settings_manager.order() == 2
    assert settings_manager.max_order() == 6
    assert settings_manager.cutoff() == 64
    assert settings_manager.lambda_values() == [0.01, 0.02, 0.05]
    assert settings_manager.tolerance("oracle") == 1e-8
    assert settings_manager.worker_threads() == 4


def test_file_values_merge_with_defaults(tmp_path, monkeypatch):
    monkeypatch.delenv("LADDERKIT_MAX_ORDER", raising=False)
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"cutoff": 96, "tolerances": {"oracle": 1e-6}}), encoding="utf-8")
    sm = SettingsManager(settings_path=path, log_dir=tmp_path / "log")
    assert sm.cutoff() == 96
    assert sm.tolerance("oracle") == 1e-6
    assert sm.tolerance("hermitian") == 1e-12


def test_environment_raises_the_order_cap(tmp_path, monkeypatch):
    monkeypatch.setenv("LADDERKIT_MAX_ORDER", "9")
    sm = SettingsManager(settings_path=tmp_path / "s.json", log_dir=tmp_path / "log")
    assert sm.max_order() == 9


def test_bad_environment_value_is_recorded(tmp_path, monkeypatch):
    monkeypatch.setenv("LADDERKIT_MAX_ORDER", "lots")
    sm = SettingsManager(settings_path=tmp_path / "s.json", log_dir=tmp_path / "log")
    assert sm.max_order() == 6
    assert sm.get("_env_errors")


def test_save_skips_private_keys(settings_manager):
    settings_manager.settings["_env_errors"] = ["x"]
    settings_manager.update_settings({"tolerances": {"oracle": 1e-7}})
    saved = json.loads(settings_manager.settings_path.read_text(encoding="utf-8"))
    assert "_env_errors" not in saved
    assert saved["tolerances"]["oracle"] == 1e-7
    assert saved["tolerances"]["cutoff"] == 1e-10


def test_log_lines_land_in_the_daily_file(settings_manager):
    settings_manager.log_info("Test", "hello", {"k": 1})
    settings_manager.log_check("energies", False, {"level": 0})
    text = settings_manager.get_log_file_path().read_text(encoding="utf-8")
    assert "[Test] hello | {'k': 1}" in text
    assert "CHECK [energies] FAIL" in text
