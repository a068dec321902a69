# ladderkit/cli/controller.py
"""
Command implementations behind the click surface.

LadderController turns a RunConfig into a report object; rendering and exit
codes are left to the caller. Batch files reuse the same dispatch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from ladderkit.algebra.operator_poly import require_hermitian
from ladderkit.cli.config import RunConfig
from ladderkit.cli.formatters import ExpectationBlock, LadderReport, render
from ladderkit.core.context import AppContext
from ladderkit.core.errors import (
    CutoffMarginError,
    HermiticityError,
    LadderKitError,
    VerificationError,
)
from ladderkit.engine.expectation import expectation
from ladderkit.engine.perturbation import LadderConstruction
from ladderkit.engine.selfcheck import SelfCheckResult, run_selfcheck
from ladderkit.numeric.errata import ErrataItem, items_for, run_errata
from ladderkit.numeric.fock import UnitValues
from ladderkit.numeric.verify import CHECK_NAMES, VerificationReport, VerificationRunner, alpha_margin_ok
from ladderkit.parser import parse_operator

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HERMITICITY = 2
EXIT_VERIFICATION = 3

# Per-command options a batch record may carry besides RunConfig fields.
BATCH_EXTRAS = {
    "verify": ("checks", "errata"),
    "errata": ("keys",),
    "selfcheck": ("count", "max_degree"),
}


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, HermiticityError):
        return EXIT_HERMITICITY
    if isinstance(error, (CutoffMarginError, VerificationError)):
        return EXIT_VERIFICATION
    return EXIT_USAGE


@dataclass
class CommandResult:
    """Rendered output plus the exit code the command asks for."""

    command: str
    output: str
    exit_code: int = EXIT_OK
    warnings: List[str] = field(default_factory=list)
    payload: Any = None


class LadderController:
    COMMANDS = ("correct", "spectrum", "expect", "verify", "errata", "selfcheck", "batch")

    def __init__(self, ctx: Optional[AppContext] = None):
        self.ctx = ctx or AppContext()
        self.settings_manager = self.ctx.settings_manager
        self.warnings: List[str] = []

    # ----- logging -------------------------------------------------------------
    def _log_info(self, message: str, meta: Optional[dict] = None) -> None:
        if self.settings_manager:
            self.settings_manager.log_info("LadderController", message, meta)

    def _log_warning(self, message: str, meta: Optional[dict] = None) -> None:
        self.warnings.append(message)
        if self.settings_manager:
            self.settings_manager.log_warning("LadderController", message, meta)

    def _log_error(self, message: str, meta: Optional[dict] = None) -> None:
        if self.settings_manager:
            self.settings_manager.log_error("LadderController", message, meta)

    # ----- configuration ---------------------------------------------------------
    def base_config(self) -> RunConfig:
        return RunConfig.from_settings(self.settings_manager)

    def build_config(self, flags: Dict[str, Any], config_file: Optional[Path] = None) -> RunConfig:
        cfg = self.base_config()
        if config_file is not None:
            cfg = cfg.merged(RunConfig.load_run_file(Path(config_file)))
        cfg = cfg.merged(flags)
        cfg.validate()
        for message in (self.settings_manager.get("_env_errors", []) if self.settings_manager else []):
            self._log_warning(message)
        return cfg

    def _settings_cutoff(self) -> int:
        return self.settings_manager.cutoff() if self.settings_manager else 64

    def _settings_lambdas(self) -> List[float]:
        return self.settings_manager.lambda_values() if self.settings_manager else [0.01, 0.02, 0.05]

    def _construction(self, cfg: RunConfig) -> LadderConstruction:
        if not cfg.perturbation.strip():
            raise LadderKitError("no perturbation given (use -V or a run file)")
        V = require_hermitian(parse_operator(cfg.perturbation), "perturbation V")
        construction = LadderConstruction.build(V, cfg.order, cfg.normalization)
        self._log_info(
            "Built ladder corrections",
            {"V": cfg.perturbation, "order": cfg.order, "normalization": cfg.normalization},
        )
        return construction

    def _report(self, command: str, cfg: RunConfig, construction: LadderConstruction) -> LadderReport:
        report = LadderReport(
            command=command,
            perturbation=cfg.perturbation,
            V=construction.V,
            order=cfg.order,
            normalization=cfg.normalization,
            units=cfg.units_for(numeric=False),
        )
        defect = construction.defect_order
        if defect is not None:
            report.notes.append(
                f"[a~, a~dag] - 1 is nonzero from order {defect} ({cfg.normalization} normalization)"
            )
        return report

    # ----- dispatch ----------------------------------------------------------------
    def execute_command(self, name: str, cfg: RunConfig, **extra: Any) -> CommandResult:
        if name not in self.COMMANDS:
            raise LadderKitError(f"unknown command: {name}")
        self.warnings = []
        self._log_info(f"Executing: {name}", {"config": cfg.to_dict()})
        handler = getattr(self, f"cmd_{name}")
        try:
            result = handler(cfg, **extra)
        except LadderKitError as e:
            self._log_error(f"{name} failed: {e}", e.to_dict())
            raise
        result.warnings = list(self.warnings) + result.warnings
        return result

    # ----- symbolic commands -----------------------------------------------------------
    def cmd_correct(self, cfg: RunConfig) -> CommandResult:
        construction = self._construction(cfg)
        report = self._report("correct", cfg, construction)
        report.alphas = list(construction.alphas.coeffs)
        report.creations = list(construction.creations.coeffs)
        report.numbers = list(construction.numbers.coeffs)
        return CommandResult("correct", render(report, cfg.output), payload=report)

    def cmd_spectrum(self, cfg: RunConfig) -> CommandResult:
        construction = self._construction(cfg)
        report = self._report("spectrum", cfg, construction)
        report.epsilons = list(construction.energies.eps)
        lambdas = cfg.resolve_lambdas(construction.degree, self._settings_lambdas())
        natural = UnitValues().as_tuple()
        for n in cfg.resolve_levels(construction.degree):
            report.levels[n] = {
                "epsilons": [e.evaluate_complex(n, *natural).real for e in construction.energies.eps],
                "partial_sums": {
                    str(lam): construction.energies.partial_sum(n, lam, natural) for lam in lambdas
                },
            }
        return CommandResult("spectrum", render(report, cfg.output), payload=report)

    def cmd_expect(self, cfg: RunConfig) -> CommandResult:
        if not cfg.observable:
            raise LadderKitError("expect needs an observable (-O)")
        construction = self._construction(cfg)
        O = parse_operator(cfg.observable)
        result = expectation(construction.V, O, cfg.order, cfg.normalization, states=construction.states)
        report = self._report("expect", cfg, construction)
        report.norms = list(construction.norms)
        report.expectations = ExpectationBlock(
            cfg.observable, list(result.value), list(result.norm), list(result.ratio)
        )
        return CommandResult("expect", render(report, cfg.output), payload=report)

    # ----- oracle commands ----------------------------------------------------------------
    def cmd_verify(
        self,
        cfg: RunConfig,
        checks: Sequence[str] = CHECK_NAMES,
        errata: bool = True,
        save_path: Optional[Path] = None,
    ) -> CommandResult:
        unknown = [c for c in checks if c not in CHECK_NAMES]
        if unknown:
            raise LadderKitError(f"unknown check(s): {', '.join(unknown)}")
        construction = self._construction(cfg)
        degree = max(1, construction.degree)
        dim, warning = cfg.resolve_cutoff(degree, self._settings_cutoff(), strict=True)
        if warning:
            self._log_warning(warning)
        lambdas = cfg.resolve_lambdas(construction.degree, self._settings_lambdas())

        if cfg.levels:
            levels = cfg.resolve_levels(construction.degree)
            outside = [n for n in levels if not alpha_margin_ok(n, cfg.order, degree, dim)]
            if outside:
                raise CutoffMarginError(
                    f"levels {outside} are too close to the cutoff {dim} for order {cfg.order}",
                    levels=outside,
                    cutoff=dim,
                )
        else:
            levels = [n for n in cfg.resolve_levels(construction.degree) if alpha_margin_ok(n, cfg.order, degree, dim)]
            if not levels:
                raise CutoffMarginError(f"no level fits inside cutoff {dim} for order {cfg.order}", cutoff=dim)

        runner = VerificationRunner(self.settings_manager)
        report = runner.run(
            construction,
            dim,
            levels,
            lambdas,
            UnitValues(),
            checks=list(checks),
            label=cfg.perturbation,
            oracle_tol=cfg.tolerance("oracle", 1e-8),
        )
        if errata:
            keys = items_for(construction.V)
            if keys:
                self._log_info("Adjudicating published forms", {"items": keys})
                report.errata = [item.to_dict() for item in run_errata(keys)]
        if save_path is not None:
            report.save(Path(save_path))
            self._log_info(f"Saved verification report to {save_path}")
        code = EXIT_OK if report.passed else EXIT_VERIFICATION
        return CommandResult("verify", render_verification(report, cfg.output), code, payload=report)

    def cmd_errata(self, cfg: RunConfig, keys: Optional[Sequence[str]] = None) -> CommandResult:
        selected = list(keys) if keys else None
        try:
            items = run_errata(selected)
        except KeyError as e:
            raise LadderKitError(str(e.args[0]))
        for item in items:
            self._log_info(f"Errata {item.key}: winner {item.winner}", {"engine_agrees": item.engine_agrees})
        code = EXIT_OK if all(item.engine_agrees for item in items) else EXIT_VERIFICATION
        return CommandResult("errata", render_errata(items, cfg.output), code, payload=items)

    def cmd_selfcheck(self, cfg: RunConfig, count: int = 20, max_degree: int = 4) -> CommandResult:
        results = run_selfcheck(count, cfg.order, cfg.seed, max_degree)
        failed = [r for r in results if not r.passed]
        if failed:
            self._log_error(f"{len(failed)} of {len(results)} random perturbations failed", {"seed": cfg.seed})
        code = EXIT_VERIFICATION if failed else EXIT_OK
        return CommandResult("selfcheck", render_selfcheck(results, cfg.output), code, payload=results)

    # ----- batch ----------------------------------------------------------------------
    def cmd_batch(self, cfg: RunConfig, path: Optional[Path] = None) -> CommandResult:
        if path is None:
            raise LadderKitError("batch needs a run file")
        batch = BatchFile.load(Path(path))
        self._log_info(f"Batch '{batch.name}' with {len(batch.runs)} run(s)")
        outputs: List[str] = []
        code = EXIT_OK
        payloads = []
        for index, run in enumerate(batch.runs, start=1):
            run = dict(run)
            command = str(run.pop("command", "")).lower()
            if command in ("batch", ""):
                raise LadderKitError(f"run {index}: missing or nested command")
            extra = {k: run.pop(k) for k in BATCH_EXTRAS.get(command, ()) if k in run}
            run_cfg = cfg.merged(run)
            run_cfg.validate()
            self._log_info(f"Batch run {index}: {command}")
            result = self.execute_command(command, run_cfg, **extra)
            outputs.append(f"# run {index}: {command}\n{result.output}")
            payloads.append(result.payload)
            code = max(code, result.exit_code)
        return CommandResult("batch", "\n".join(outputs), code, payload=payloads)


# ---------------------------------------------------------------------------
# Batch files
# ---------------------------------------------------------------------------
class BatchFile:
    """A named list of command records; JSON on disk."""

    def __init__(self, name: str = "Untitled batch", runs: Optional[List[Dict[str, Any]]] = None):
        self.name = name
        self.runs: List[Dict[str, Any]] = list(runs or [])
        self.created_at = datetime.now().isoformat()
        self.version = "1.0"

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "version": self.version, "created_at": self.created_at, "runs": self.runs}

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "BatchFile":
        batch = BatchFile(data.get("name", "Untitled batch"), data.get("runs", []))
        batch.version = data.get("version", "1.0")
        batch.created_at = data.get("created_at", datetime.now().isoformat())
        return batch

    @staticmethod
    def load(file_path: Path) -> "BatchFile":
        with open(file_path, "r", encoding="utf-8") as f:
            data = json.load(f)
        if not isinstance(data, dict) or not isinstance(data.get("runs"), list):
            raise LadderKitError(f"{file_path} is not a batch file (expected an object with a 'runs' list)")
        return BatchFile.from_dict(data)

    def save(self, file_path: Path) -> None:
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)


# ---------------------------------------------------------------------------
# Oracle report rendering
# ---------------------------------------------------------------------------
def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.3g}"


def render_verification(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    rows = [
        (c.name, "-" if c.level is None else str(c.level), _fmt(c.lam), _fmt(c.residual), _fmt(c.slope),
         "PASS" if c.passed else "FAIL", c.detail)
        for c in report.checks
    ]
    if fmt == "latex":
        body = "\n".join(" & ".join(r[:6]).replace("_", r"\_") + r" \\" for r in rows)
        return (
            "\\documentclass{article}\n\\begin{document}\n"
            f"\\section*{{Verification, order {report.order}, cutoff {report.cutoff}}}\n"
            "\\begin{tabular}{llllll}\ncheck & level & $\\lambda$ & residual & slope & result \\\\\n\\hline\n"
            f"{body}\n\\end{{tabular}}\n\\end{{document}}\n"
        )
    lines = [f"verify V = {report.perturbation}, order {report.order}, cutoff {report.cutoff}"]
    for name, level, lam, residual, slope, status, detail in rows:
        line = f"  {status} {name:<16} n={level:<3} lambda={lam:<8} residual={residual:<10} slope={slope}"
        lines.append(f"{line}  {detail}" if detail else line)
    for item in report.errata:
        lines.append(
            f"  errata {item['key']}: winner = {item['winner']!s}, engine agrees = {item['engine_agrees']}"
        )
    lines.append("PASSED" if report.passed else f"FAILED ({len(report.failures())} check(s))")
    return "\n".join(lines) + "\n"


def render_errata(items: Sequence[ErrataItem], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([item.to_dict() for item in items], indent=2) + "\n"
    lines = []
    for item in items:
        lines.append(f"{item.key}: {item.title}")
        for name in item.candidates:
            mark = "*" if name == item.winner else " "
            lines.append(f"  {mark} {name:<28} residual {item.residuals[name]:.3g}")
        lines.append(f"    engine residual {item.engine_residual:.3g}, agrees with winner: {item.engine_agrees}")
        if item.notes:
            lines.append(f"    {item.notes}")
    return "\n".join(lines) + "\n"


def render_selfcheck(results: Sequence[SelfCheckResult], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in results], indent=2) + "\n"
    lines = []
    for index, r in enumerate(results, start=1):
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{status} #{index:<3} V = {r.V}  alpha2={r.alpha2_matches} "
            f"defect={r.commutator_defect} number={r.number_matches}"
        )
    passed = sum(1 for r in results if r.passed)
    lines.append(f"{passed}/{len(results)} passed")
    return "\n".join(lines) + "\n"
