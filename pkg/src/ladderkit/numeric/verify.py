# ladderkit/numeric/verify.py
"""
Oracle battery: every symbolic output of the engine is compared against the
literal sums of rs_sums and the Jacobi eigensolver in a truncated Fock space.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ladderkit.algebra.operator_poly import OperatorPoly
from ladderkit.core.errors import CutoffMarginError
from ladderkit.engine.perturbation import LadderConstruction
from ladderkit.numeric.fock import (
    FockMatrix,
    UnitValues,
    basis_vector,
    hamiltonian_matrix,
    series_matrix,
    to_matrix,
)
from ladderkit.numeric.jacobi import eig_hermitian
from ladderkit.numeric.rs_sums import CUTOFF_GUARD, PerturbedLevel, margin_ok, require_margin, rs_sums

CHECK_NAMES = (
    "energies",
    "states",
    "alpha_residual",
    "alpha_matrix",
    "eigensolver",
    "intertwining",
    "cutoff_stability",
)


# ---------------------------------------------------------------------------
# Report types
# ---------------------------------------------------------------------------
@dataclass
class VerificationCheck:
    """One oracle comparison. `samples` holds (λ, residual) pairs for slope checks."""

    name: str
    level: Optional[int]
    residual: float
    passed: bool
    lam: Optional[float] = None
    slope: Optional[float] = None
    detail: str = ""
    samples: List[Tuple[float, float]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "lambda": self.lam,
            "level": self.level,
            "residual": self.residual,
            "slope": self.slope,
            "pass": self.passed,
            "detail": self.detail,
            "samples": [[lam, res] for lam, res in self.samples],
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "VerificationCheck":
        return VerificationCheck(
            name=data["name"],
            level=data.get("level"),
            residual=float(data.get("residual", 0.0)),
            passed=bool(data.get("pass", False)),
            lam=data.get("lambda"),
            slope=data.get("slope"),
            detail=data.get("detail", ""),
            samples=[(float(a), float(b)) for a, b in data.get("samples", [])],
        )


class VerificationReport:
    """Checks plus errata findings for one perturbation; JSON on disk."""

    def __init__(self, perturbation: str = "", order: int = 0, cutoff: int = 0):
        self.perturbation = perturbation
        self.order = order
        self.cutoff = cutoff
        self.checks: List[VerificationCheck] = []
        self.errata: List[Dict[str, Any]] = []
        self.created_at = datetime.now().isoformat()
        self.version = "1.0"

    def add(self, checks: Sequence[VerificationCheck]) -> None:
        self.checks.extend(checks)

    @property
    def passed(self) -> bool:
        checks_ok = all(c.passed for c in self.checks)
        errata_ok = all(item.get("engine_agrees", False) for item in self.errata)
        return checks_ok and errata_ok

    def failures(self) -> List[VerificationCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "perturbation": self.perturbation,
            "order": self.order,
            "cutoff": self.cutoff,
            "version": self.version,
            "created_at": self.created_at,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "errata": list(self.errata),
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "VerificationReport":
        report = VerificationReport(data.get("perturbation", ""), int(data.get("order", 0)), int(data.get("cutoff", 0)))
        report.version = data.get("version", "1.0")
        report.created_at = data.get("created_at", datetime.now().isoformat())
        report.checks = [VerificationCheck.from_dict(c) for c in data.get("checks", [])]
        report.errata = list(data.get("errata", []))
        return report

    @staticmethod
    def load(file_path: Path) -> "VerificationReport":
        with open(file_path, "r", encoding="utf-8") as f:
            return VerificationReport.from_dict(json.load(f))

    def save(self, file_path: Path) -> None:
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------
def residual_slope(lam_values: Sequence[float], residuals: Sequence[float], floor: float = 1e-10) -> Optional[float]:
    """Least-squares slope of log(residual) against log(λ), using points above `floor`."""
    points = [(math.log(lam), math.log(res)) for lam, res in zip(lam_values, residuals) if lam > 0 and res > floor]
    if len(points) < 2:
        return None
    xs = np.array([p[0] for p in points])
    ys = np.array([p[1] for p in points])
    xm = xs.mean()
    denom = float(np.sum((xs - xm) ** 2))
    if denom == 0.0:
        return None
    return float(np.sum((xs - xm) * (ys - ys.mean())) / denom)


def slope_check(
    name: str,
    level: int,
    lam_values: Sequence[float],
    residuals: Sequence[float],
    order: int,
    floor: float,
    margin: float,
) -> VerificationCheck:
    """Residuals must vanish like λ^(M+1); residuals all at the float floor count as exact."""
    samples = list(zip(lam_values, residuals))
    worst_lam, worst = max(samples, key=lambda s: s[1]) if samples else (None, 0.0)
    slope = residual_slope(lam_values, residuals, floor)
    if slope is None:
        return VerificationCheck(name, level, worst, True, worst_lam, None, "at float floor", samples)
    passed = slope >= order + margin
    detail = f"slope {slope:.3f} (need >= {order + margin:.1f})"
    return VerificationCheck(name, level, worst, passed, worst_lam, slope, detail, samples)


def _relative(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


def _reach(V: OperatorPoly) -> int:
    return max(1, V.degree)


def alpha_margin_ok(n: int, order: int, degree: int, dim: int) -> bool:
    """Room for ã⁽ᴹ⁾|n⁽ᴹ⁾⟩ without truncation: n + 2Mg + 1 < D and n ≤ D/2 − Mg."""
    return (
        margin_ok(n, order, degree, dim)
        and n + 2 * order * degree + 1 <= dim - 1
        and n <= dim // 2 - order * degree
    )


def interior_levels(max_level: int, order: int, degree: int, dim: int) -> List[int]:
    return [n for n in range(max_level + 1) if alpha_margin_ok(n, order, degree, dim)]


def minimum_cutoff(order: int, degree: int) -> int:
    """Smallest cutoff the command line accepts for a run: 4·M·g + 8."""
    return 4 * order * degree + 8


def perturbed_levels(
    V: OperatorPoly,
    order: int,
    levels: Sequence[int],
    dim: int,
    units: UnitValues,
    normalization: str = "intermediate",
) -> Dict[int, PerturbedLevel]:
    vm = to_matrix(V, dim, units)
    out = {}
    for n in sorted(set(levels)):
        level = rs_sums(vm, order, n, units, degree=_reach(V))
        out[n] = level.normalized() if normalization == "unit" else level
    return out


def alpha_oracle_matrix(
    V: OperatorPoly,
    order: int,
    dim: int,
    units: UnitValues = UnitValues(),
    normalization: str = "intermediate",
) -> Tuple[List[FockMatrix], int]:
    """
    α₍ₘ₎ rebuilt column by column from literal RS states:

        α₍ₘ₎|n⟩ = √n η₍ₘ₎(n−1) − Σ_{l<m} α₍ₗ₎ η₍ₘ₋ₗ₎(n)

    Returns the matrices and the last column that is free of truncation
    effects for every m ≤ M (columns beyond it are left at zero).
    """
    g = _reach(V)
    rs_limit = dim - CUTOFF_GUARD - order * g
    last_valid = [dim - 1]
    for m in range(1, order + 1):
        candidates = [rs_limit] + [last_valid[l] - (m - l) * g for l in range(m)]
        last_valid.append(min(candidates))
    usable = last_valid[order]
    if usable < 0:
        raise CutoffMarginError(
            f"cutoff {dim} leaves no column of alpha_{order} free of truncation",
            order=order,
            degree=g,
            cutoff=dim,
        )

    levels = perturbed_levels(V, order, range(rs_limit + 1), dim, units, normalization)
    matrices = [to_matrix(OperatorPoly.annihilator(), dim, units)]
    for m in range(1, order + 1):
        entries = np.zeros((dim, dim), dtype=complex)
        for n in range(last_valid[m] + 1):
            column = np.zeros(dim, dtype=complex)
            if n > 0:
                column += math.sqrt(n) * levels[n - 1].state_series[m]
            for l in range(m):
                column -= matrices[l].entries @ levels[n].state_series[m - l]
            entries[:, n] = column
        matrices.append(FockMatrix(entries))
    return matrices, usable


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------
def verify_energies(
    construction: LadderConstruction,
    levels: Dict[int, PerturbedLevel],
    units: UnitValues,
    tol: float,
) -> List[VerificationCheck]:
    out = []
    for n, level in sorted(levels.items()):
        worst = 0.0
        for m in range(construction.order + 1):
            symbolic = construction.energies[m].evaluate_complex(n, *units.as_tuple())
            worst = max(worst, _relative(symbolic, level.energy_series[m]))
        out.append(VerificationCheck("energies", n, worst, worst <= tol, detail=f"orders 0..{construction.order}"))
    return out


def verify_states(
    construction: LadderConstruction,
    levels: Dict[int, PerturbedLevel],
    dim: int,
    units: UnitValues,
    tol: float,
) -> List[VerificationCheck]:
    omega_mats = [to_matrix(w, dim, units) for w in construction.states.omegas]
    out = []
    for n, level in sorted(levels.items()):
        worst = 0.0
        e_n = basis_vector(n, dim)
        for m, mat in enumerate(omega_mats):
            symbolic = mat @ e_n
            diff = np.max(np.abs(symbolic - level.state_series[m]), initial=0.0)
            worst = max(worst, float(diff) / max(1.0, float(np.max(np.abs(level.state_series[m]), initial=0.0))))
        out.append(VerificationCheck("states", n, worst, worst <= tol, detail=construction.normalization))
    return out


def alpha_residuals(
    construction: LadderConstruction,
    n: int,
    levels: Dict[int, PerturbedLevel],
    lam_values: Sequence[float],
    dim: int,
    units: UnitValues,
) -> List[float]:
    """‖ã⁽ᴹ⁾|n⁽ᴹ⁾⟩ − √n|(n−1)⁽ᴹ⁾⟩‖ for each λ."""
    out = []
    for lam in lam_values:
        a_tilde = series_matrix(construction.alphas.coeffs, lam, dim, units)
        state = levels[n].state_at(lam)
        target = math.sqrt(n) * levels[n - 1].state_at(lam) if n > 0 else np.zeros(dim, dtype=complex)
        out.append(float(np.linalg.norm(a_tilde @ state - target)))
    return out


def verify_alpha(
    construction: LadderConstruction,
    levels: Dict[int, PerturbedLevel],
    lam_values: Sequence[float],
    dim: int,
    units: UnitValues,
    floor: float,
    margin: float,
) -> List[VerificationCheck]:
    g = _reach(construction.V)
    out = []
    for n in sorted(levels):
        if not alpha_margin_ok(n, construction.order, g, dim) or (n > 0 and n - 1 not in levels):
            continue
        residuals = alpha_residuals(construction, n, levels, lam_values, dim, units)
        out.append(slope_check("alpha_residual", n, lam_values, residuals, construction.order, floor, margin))
    return out


def verify_alpha_matrix(
    construction: LadderConstruction,
    dim: int,
    units: UnitValues,
    tol: float,
) -> List[VerificationCheck]:
    oracle, usable = alpha_oracle_matrix(construction.V, construction.order, dim, units, construction.normalization)
    out = []
    for m in range(1, construction.order + 1):
        symbolic = to_matrix(construction.alphas[m], dim, units).entries[:, : usable + 1]
        reference = oracle[m].entries[:, : usable + 1]
        scale = max(1.0, float(np.max(np.abs(reference), initial=0.0)))
        residual = float(np.max(np.abs(symbolic - reference), initial=0.0)) / scale
        out.append(
            VerificationCheck("alpha_matrix", None, residual, residual <= tol, detail=f"alpha_{m}, columns 0..{usable}")
        )
    return out


def eigen_spectra(
    V: OperatorPoly,
    lam_values: Sequence[float],
    dim: int,
    units: UnitValues,
    hermitian_tol: float,
) -> Dict[float, np.ndarray]:
    return {lam: eig_hermitian(hamiltonian_matrix(V, lam, dim, units), hermitian_tol)[0] for lam in lam_values}


def verify_eigensolver(
    construction: LadderConstruction,
    spectra: Dict[float, np.ndarray],
    levels: Sequence[int],
    lam_values: Sequence[float],
    units: UnitValues,
    floor: float,
    margin: float,
) -> List[VerificationCheck]:
    out = []
    for n in sorted(levels):
        residuals = [
            abs(float(spectra[lam][n]) - construction.energies.partial_sum(n, lam, units.as_tuple()))
            for lam in lam_values
        ]
        out.append(slope_check("eigensolver", n, lam_values, residuals, construction.order, floor, margin))
    return out


def verify_intertwining(
    construction: LadderConstruction,
    levels: Dict[int, PerturbedLevel],
    lam_values: Sequence[float],
    dim: int,
    units: UnitValues,
    floor: float,
    margin: float,
) -> List[VerificationCheck]:
    """‖(H − E⁽ᴹ⁾_{n−1}) ã⁽ᴹ⁾|n⁽ᴹ⁾⟩‖ = O(λ^(M+1))."""
    g = _reach(construction.V)
    out = []
    for n in sorted(levels):
        if n == 0 or n - 1 not in levels or n + (2 * construction.order + 1) * g + 1 > dim - 1:
            continue
        residuals = []
        for lam in lam_values:
            h = hamiltonian_matrix(construction.V, lam, dim, units)
            a_tilde = series_matrix(construction.alphas.coeffs, lam, dim, units)
            lowered = a_tilde @ levels[n].state_at(lam)
            energy = construction.energies.partial_sum(n - 1, lam, units.as_tuple())
            residuals.append(float(np.linalg.norm(h @ lowered - energy * lowered)))
        out.append(slope_check("intertwining", n, lam_values, residuals, construction.order, floor, margin))
    return out


def verify_cutoff_stability(
    construction: LadderConstruction,
    levels: Sequence[int],
    dim: int,
    units: UnitValues,
    tol: float,
) -> List[VerificationCheck]:
    """Doubling the cutoff must not move interior energies or state coefficients."""
    small = perturbed_levels(construction.V, construction.order, levels, dim, units, construction.normalization)
    large = perturbed_levels(construction.V, construction.order, levels, 2 * dim, units, construction.normalization)
    out = []
    for n in sorted(levels):
        worst = float(np.max(np.abs(small[n].energy_series - large[n].energy_series), initial=0.0))
        for m in range(construction.order + 1):
            padded = np.zeros(2 * dim, dtype=complex)
            padded[:dim] = small[n].state_series[m]
            worst = max(worst, float(np.max(np.abs(padded - large[n].state_series[m]), initial=0.0)))
        out.append(VerificationCheck("cutoff_stability", n, worst, worst <= tol, detail=f"D={dim} vs D={2 * dim}"))
    return out


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------
class VerificationRunner:
    """
    Runs the oracle battery for one LadderConstruction.

    Per-level work goes to a thread pool; the report lists checks in
    CHECK_NAMES order and by ascending level regardless of completion order.
    """

    def __init__(self, settings_manager=None):
        self.settings_manager = settings_manager

    # ----- logging -------------------------------------------------------------
    def _log_info(self, message: str, meta: Optional[dict] = None) -> None:
        if self.settings_manager:
            self.settings_manager.log_info("VerificationRunner", message, meta)

    def _log_error(self, message: str, meta: Optional[dict] = None) -> None:
        if self.settings_manager:
            self.settings_manager.log_error("VerificationRunner", message, meta)

    def _log_check(self, check: VerificationCheck) -> None:
        if self.settings_manager:
            self.settings_manager.log_check(
                check.name,
                check.passed,
                {"level": check.level, "residual": check.residual, "slope": check.slope},
            )

    def _tol(self, name: str, fallback: float) -> float:
        if self.settings_manager:
            return self.settings_manager.tolerance(name)
        return fallback

    def _workers(self) -> int:
        if self.settings_manager:
            return self.settings_manager.worker_threads()
        return 4

    # ----- battery ---------------------------------------------------------------
    def run(
        self,
        construction: LadderConstruction,
        dim: int,
        levels: Sequence[int],
        lam_values: Sequence[float],
        units: UnitValues = UnitValues(),
        checks: Sequence[str] = CHECK_NAMES,
        label: str = "",
        oracle_tol: Optional[float] = None,
    ) -> VerificationReport:
        oracle_tol = self._tol("oracle", 1e-8) if oracle_tol is None else oracle_tol
        cutoff_tol = self._tol("cutoff", 1e-10)
        hermitian_tol = self._tol("hermitian", 1e-12)
        floor = self._tol("exact_floor", 1e-10)
        margin = self._tol("slope_margin", 0.9)

        order = construction.order
        g = _reach(construction.V)
        for n in levels:
            require_margin(n, order, g, dim)

        report = VerificationReport(label or str(construction.V), order, dim)
        self._log_info(
            f"Verifying order {order} at cutoff {dim}",
            {"levels": list(levels), "lambda": list(lam_values), "checks": list(checks)},
        )

        needed = sorted(set(levels) | {n - 1 for n in levels if n > 0})
        states = perturbed_levels(construction.V, order, needed, dim, units, construction.normalization)
        spectra: Dict[float, np.ndarray] = {}
        if "eigensolver" in checks:
            spectra = eigen_spectra(construction.V, lam_values, dim, units, hermitian_tol)

        def per_level(n: int) -> Dict[str, List[VerificationCheck]]:
            own = {n: states[n]}
            with_prev = {k: states[k] for k in (n - 1, n) if k in states}
            results: Dict[str, List[VerificationCheck]] = {}
            if "energies" in checks:
                results["energies"] = verify_energies(construction, own, units, oracle_tol)
            if "states" in checks:
                results["states"] = verify_states(construction, own, dim, units, oracle_tol)
            if "alpha_residual" in checks:
                results["alpha_residual"] = [
                    c for c in verify_alpha(construction, with_prev, lam_values, dim, units, floor, margin)
                    if c.level == n
                ]
            if "eigensolver" in checks:
                results["eigensolver"] = verify_eigensolver(
                    construction, spectra, [n], lam_values, units, floor, margin
                )
            if "intertwining" in checks:
                results["intertwining"] = [
                    c for c in verify_intertwining(construction, with_prev, lam_values, dim, units, floor, margin)
                    if c.level == n
                ]
            return results

        with ThreadPoolExecutor(max_workers=self._workers()) as pool:
            per_level_results = list(pool.map(per_level, sorted(levels)))

        tasks: Dict[str, Callable[[], List[VerificationCheck]]] = {
            "alpha_matrix": lambda: verify_alpha_matrix(construction, dim, units, oracle_tol),
            "cutoff_stability": lambda: verify_cutoff_stability(construction, levels, dim, units, cutoff_tol),
        }
        for name in CHECK_NAMES:
            if name not in checks:
                continue
            if name in tasks:
                report.add(tasks[name]())
            else:
                for results in per_level_results:
                    report.add(results.get(name, []))

        for check in report.checks:
            self._log_check(check)
        failures = report.failures()
        if failures:
            self._log_error(f"{len(failures)} check(s) failed", {"names": sorted({c.name for c in failures})})
        else:
            self._log_info(f"All {len(report.checks)} checks passed")
        return report
