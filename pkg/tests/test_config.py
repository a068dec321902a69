import pytest

from ladderkit.cli.config import RunConfig
from ladderkit.core.errors import CutoffMarginError, LadderKitError, OrderCapError


def test_from_settings(settings_manager):
    cfg = RunConfig.from_settings(settings_manager)
    assert cfg.order == 2 and cfg.max_order == 6
    assert cfg.tolerance("oracle", 0.0) == 1e-8


def test_merge_skips_unset_values():
    cfg = RunConfig(order=3, tolerances={"oracle": 1e-8, "cutoff": 1e-10})
    merged = cfg.merged({"order": None, "levels": (), "lambda_values": [0.1], "tolerances": {"oracle": 1e-6}})
    assert merged.order == 3
    assert merged.levels == ()
    assert merged.lambda_values == (0.1,)
    assert merged.tolerances == {"oracle": 1e-6, "cutoff": 1e-10}


def test_unknown_keys_are_rejected():
    with pytest.raises(LadderKitError):
        RunConfig().merged({"cutof": 12})


def test_validate():
    with pytest.raises(OrderCapError):
        RunConfig(order=7, max_order=6).validate()
    with pytest.raises(LadderKitError):
        RunConfig(output="html").validate()
    with pytest.raises(LadderKitError):
        RunConfig(lambda_values=(0.0,)).validate()


def test_cutoff_resolution():
    cfg = RunConfig(order=2)
    assert cfg.resolve_cutoff(1, 64, strict=True) == (64, None)
    dim, warning = RunConfig(order=4).resolve_cutoff(4, 32, strict=True)
    assert dim == 72 and "raised" in warning
    assert RunConfig(order=2, cutoff=10).resolve_cutoff(1, 64, strict=False)[0] == 16
    with pytest.raises(CutoffMarginError):
        RunConfig(order=2, cutoff=10).resolve_cutoff(1, 64, strict=True)


def test_degree_scaled_defaults():
    assert RunConfig().resolve_lambdas(4, [0.01, 0.02, 0.05]) == pytest.approx([1e-4, 2e-4, 5e-4])
    assert RunConfig().resolve_lambdas(1, [0.01]) == [0.01]
    assert RunConfig().resolve_levels(4) == [0, 1, 2, 3, 4]
    assert RunConfig(levels=(3, 1, 3)).resolve_levels(1) == [1, 3]


def test_units_defaults():
    assert RunConfig().units_for(numeric=True) == "natural"
    assert RunConfig().units_for(numeric=False) == "symbolic"
    assert RunConfig(units_mode="natural").units_for(numeric=False) == "natural"
