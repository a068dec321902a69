# ladderkit/cli/config.py
"""
Run configuration for one command.

Resolution order (last wins): SettingsManager defaults and settings.json,
the optional JSON run file given with --config, then command-line flags.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

from ladderkit.core.errors import CutoffMarginError, LadderKitError, OrderCapError
from ladderkit.numeric.verify import minimum_cutoff

OUTPUT_FORMATS = ("text", "latex", "json")
UNITS_MODES = ("natural", "symbolic")

# Operators above quadratic order grow like n^(g/2) in the Fock basis, so the
# default λ grid shrinks by a decade per extra degree and the default levels
# stop at HIGH_DEGREE_MAX_LEVEL.
HIGH_DEGREE_MAX_LEVEL = 4


@dataclass
class RunConfig:
    perturbation: str = ""
    observable: str = ""
    order: int = 2
    cutoff: Optional[int] = None
    lambda_values: Tuple[float, ...] = ()
    units_mode: Optional[str] = None
    output: str = "text"
    normalization: str = "intermediate"
    levels: Tuple[int, ...] = ()
    max_level: int = 8
    max_order: int = 6
    tolerances: Dict[str, float] = field(default_factory=dict)
    seed: int = 0

    # ----- construction ---------------------------------------------------------
    @classmethod
    def from_settings(cls, settings_manager) -> "RunConfig":
        if settings_manager is None:
            return cls()
        tolerances = {
            name: settings_manager.tolerance(name)
            for name in ("oracle", "cutoff", "hermitian", "exact_floor", "slope_margin")
        }
        return cls(
            order=settings_manager.order(),
            cutoff=None,
            lambda_values=(),
            output=str(settings_manager.get("output_format", "text")),
            normalization=settings_manager.normalization(),
            max_level=settings_manager.max_level(),
            max_order=settings_manager.max_order(),
            tolerances=tolerances,
            seed=int(settings_manager.get("seed", 0)),
        )

    def merged(self, patch: Mapping[str, Any]) -> "RunConfig":
        """Copy with the non-None entries of patch applied; tolerances merge key by key."""
        known = set(self.__dataclass_fields__)
        unknown = sorted(k for k in patch if k not in known)
        if unknown:
            raise LadderKitError(f"unknown run option(s): {', '.join(unknown)}")
        values: Dict[str, Any] = {}
        for key, value in patch.items():
            if value is None:
                continue
            if key == "tolerances":
                values[key] = {**self.tolerances, **{k: float(v) for k, v in dict(value).items()}}
            elif key in ("lambda_values", "levels"):
                if len(value) == 0:
                    continue
                cast = float if key == "lambda_values" else int
                values[key] = tuple(cast(v) for v in value)
            else:
                values[key] = value
        return replace(self, **values)

    @staticmethod
    def load_run_file(path: Path) -> Dict[str, Any]:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise LadderKitError(f"run file {path} must hold a JSON object")
        return data

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["lambda_values"] = list(self.lambda_values)
        data["levels"] = list(self.levels)
        return data

    # ----- checks and derived values ----------------------------------------------
    def validate(self) -> None:
        if self.order < 0:
            raise LadderKitError(f"order must be non-negative, got {self.order}")
        if self.order > self.max_order:
            raise OrderCapError(
                f"order {self.order} exceeds the cap {self.max_order} (raise it with LADDERKIT_MAX_ORDER)",
                order=self.order,
                max_order=self.max_order,
            )
        if self.output not in OUTPUT_FORMATS:
            raise LadderKitError(f"unknown output format {self.output!r}")
        if self.units_mode is not None and self.units_mode not in UNITS_MODES:
            raise LadderKitError(f"unknown units mode {self.units_mode!r}")
        if any(lam <= 0 for lam in self.lambda_values):
            raise LadderKitError("coupling values must be positive")
        if any(n < 0 for n in self.levels):
            raise LadderKitError("levels must be non-negative")

    def units_for(self, numeric: bool) -> str:
        """Explicit --units, else natural for numeric commands and symbolic for emitters."""
        if self.units_mode is not None:
            return self.units_mode
        return "natural" if numeric else "symbolic"

    def tolerance(self, name: str, fallback: float) -> float:
        return float(self.tolerances.get(name, fallback))

    def resolve_cutoff(self, degree: int, settings_cutoff: int, strict: bool) -> Tuple[int, Optional[str]]:
        """
        (cutoff, warning). Without -D the cutoff is max(settings, 4·M·g + 8);
        an explicit -D below that bound raises in strict mode and is raised otherwise.
        """
        needed = minimum_cutoff(self.order, max(1, degree))
        if self.cutoff is None:
            if settings_cutoff >= needed:
                return settings_cutoff, None
            return needed, f"cutoff raised from {settings_cutoff} to {needed} for order {self.order}"
        if self.cutoff >= needed:
            return self.cutoff, None
        if strict:
            raise CutoffMarginError(
                f"cutoff {self.cutoff} is below the margin {needed} for order {self.order} and degree {degree}",
                cutoff=self.cutoff,
                required=needed,
            )
        return needed, f"cutoff raised from {self.cutoff} to {needed} for order {self.order}"

    def resolve_lambdas(self, degree: int, defaults: List[float]) -> List[float]:
        if self.lambda_values:
            return list(self.lambda_values)
        scale = 10.0 ** min(0, 2 - degree)
        return [lam * scale for lam in defaults]

    def resolve_levels(self, degree: int) -> List[int]:
        if self.levels:
            return sorted(set(self.levels))
        top = self.max_level if degree <= 2 else min(self.max_level, HIGH_DEGREE_MAX_LEVEL)
        return list(range(top + 1))
