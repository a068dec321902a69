# ladderkit/cli/formatters.py
"""
Report rendering for the symbolic commands: plain text, a standalone LaTeX
document, or JSON.

JSON schema (version "1.0"):

    {
      "version": "1.0",
      "command": "correct" | "spectrum" | "expect",
      "V": str,                     # perturbation as typed
      "V_normal_ordered": OperatorPoly.to_dict(),
      "order": int,
      "normalization": "intermediate" | "unit",
      "units": "natural" | "symbolic",
      "alphas":  [{"order": m, "text": str, "poly": OperatorPoly.to_dict()}],
      "creations": [...same shape...],
      "numbers":   [...same shape...],
      "omegas":    [...same shape...],
      "epsilons":  [{"order": m, "text": str, "poly": DiagonalPoly.to_dict()}],
      "norms":     [...same shape as epsilons...],
      "expectations": null | {"observable": str,
                              "value": [...], "norm": [...], "ratio": [...]},
      "levels": {"<n>": {"epsilons": [float], "partial_sums": {"<λ>": float}}},
      "notes": [str]
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

from ladderkit.algebra.diagonal import DiagonalPoly
from ladderkit.algebra.operator_poly import OperatorPoly
from ladderkit.algebra.scalar import FloatScalar, Scalar, ScalarSum, UnitMonomial

REPORT_VERSION = "1.0"

Poly = Union[OperatorPoly, DiagonalPoly]


@dataclass
class ExpectationBlock:
    observable: str
    value: List[DiagonalPoly]
    norm: List[DiagonalPoly]
    ratio: List[DiagonalPoly]


@dataclass
class LadderReport:
    command: str
    perturbation: str
    V: OperatorPoly
    order: int
    normalization: str = "intermediate"
    units: str = "symbolic"
    alphas: List[OperatorPoly] = field(default_factory=list)
    creations: List[OperatorPoly] = field(default_factory=list)
    numbers: List[OperatorPoly] = field(default_factory=list)
    omegas: List[OperatorPoly] = field(default_factory=list)
    epsilons: List[DiagonalPoly] = field(default_factory=list)
    norms: List[DiagonalPoly] = field(default_factory=list)
    expectations: Optional[ExpectationBlock] = None
    levels: Dict[int, Dict[str, Any]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def in_units(self) -> "LadderReport":
        """Copy with ħ = m = ω = 1 applied when the report is in natural units."""
        if self.units != "natural":
            return self

        def nat(items):
            return [p.natural() for p in items]

        expectations = None
        if self.expectations is not None:
            e = self.expectations
            expectations = ExpectationBlock(e.observable, nat(e.value), nat(e.norm), nat(e.ratio))
        return LadderReport(
            command=self.command,
            perturbation=self.perturbation,
            V=self.V.natural(),
            order=self.order,
            normalization=self.normalization,
            units=self.units,
            alphas=nat(self.alphas),
            creations=nat(self.creations),
            numbers=nat(self.numbers),
            omegas=nat(self.omegas),
            epsilons=nat(self.epsilons),
            norms=nat(self.norms),
            expectations=expectations,
            levels=self.levels,
            notes=list(self.notes),
        )

    # ----- JSON -----------------------------------------------------------------
    def to_dict(self) -> Dict[str, Any]:
        def series(items: Sequence[Poly]) -> List[Dict[str, Any]]:
            return [{"order": m, "text": str(p), "poly": p.to_dict()} for m, p in enumerate(items)]

        expectations = None
        if self.expectations is not None:
            e = self.expectations
            expectations = {
                "observable": e.observable,
                "value": series(e.value),
                "norm": series(e.norm),
                "ratio": series(e.ratio),
            }
        return {
            "version": REPORT_VERSION,
            "command": self.command,
            "V": self.perturbation,
            "V_normal_ordered": self.V.to_dict(),
            "order": self.order,
            "normalization": self.normalization,
            "units": self.units,
            "alphas": series(self.alphas),
            "creations": series(self.creations),
            "numbers": series(self.numbers),
            "omegas": series(self.omegas),
            "epsilons": series(self.epsilons),
            "norms": series(self.norms),
            "expectations": expectations,
            "levels": {str(n): data for n, data in sorted(self.levels.items())},
            "notes": list(self.notes),
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "LadderReport":
        def ops(items) -> List[OperatorPoly]:
            return [OperatorPoly.from_dict(item["poly"]) for item in items or []]

        def diags(items) -> List[DiagonalPoly]:
            return [DiagonalPoly.from_dict(item["poly"]) for item in items or []]

        expectations = None
        if data.get("expectations"):
            e = data["expectations"]
            expectations = ExpectationBlock(e["observable"], diags(e["value"]), diags(e["norm"]), diags(e["ratio"]))
        return LadderReport(
            command=data.get("command", ""),
            perturbation=data.get("V", ""),
            V=OperatorPoly.from_dict(data.get("V_normal_ordered", {})),
            order=int(data.get("order", 0)),
            normalization=data.get("normalization", "intermediate"),
            units=data.get("units", "symbolic"),
            alphas=ops(data.get("alphas")),
            creations=ops(data.get("creations")),
            numbers=ops(data.get("numbers")),
            omegas=ops(data.get("omegas")),
            epsilons=diags(data.get("epsilons")),
            norms=diags(data.get("norms")),
            expectations=expectations,
            levels={int(n): v for n, v in (data.get("levels") or {}).items()},
            notes=list(data.get("notes", [])),
        )


# ---------------------------------------------------------------------------
# Plain text
# ---------------------------------------------------------------------------
def _text_series(lines: List[str], title: str, symbol: str, items: Sequence[Poly]) -> None:
    if not items:
        return
    lines.append(f"{title}:")
    for m, p in enumerate(items):
        lines.append(f"  {symbol}_({m}) = {p}")


def render_text(report: LadderReport) -> str:
    r = report.in_units()
    lines = [
        f"V = {r.perturbation}",
        f"  normal ordered: {r.V}",
        f"order M = {r.order}, normalization = {r.normalization}, units = {r.units}",
    ]
    _text_series(lines, "annihilation corrections", "alpha", r.alphas)
    _text_series(lines, "creation corrections", "alpha^dag", r.creations)
    _text_series(lines, "number corrections", "nu", r.numbers)
    _text_series(lines, "state corrections", "Omega", r.omegas)
    _text_series(lines, "energy corrections", "eps", r.epsilons)
    _text_series(lines, "norm <n|n>", "Z", r.norms)
    if r.expectations is not None:
        e = r.expectations
        lines.append(f"expectation of O = {e.observable}:")
        _text_series(lines, "  <n|O|n> (unnormalized)", "  v", e.value)
        _text_series(lines, "  <n|n>", "  z", e.norm)
        _text_series(lines, "  <O> (normalized)", "  r", e.ratio)
    if r.levels:
        lines.append("levels (hbar = m = omega = 1):")
        for n, data in sorted(r.levels.items()):
            eps = ", ".join(f"{v:.12g}" for v in data.get("epsilons", []))
            lines.append(f"  n = {n}: eps = [{eps}]")
            for lam, value in data.get("partial_sums", {}).items():
                lines.append(f"    E(lambda={lam}) = {value:.15g}")
    for note in r.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# LaTeX
# ---------------------------------------------------------------------------
_LATEX_BASIS = {"": "", "sqrt2": r"\sqrt{2}", "i": "i", "i sqrt2": r"i\sqrt{2}"}
_LATEX_UNIT = {"hbar": r"\hbar", "m": "m", "omega": r"\omega"}


def latex_units(units: UnitMonomial) -> str:
    parts = []
    for name, exp in units.symbols():
        glyph = _LATEX_UNIT[name]
        parts.append(glyph if exp == "1" else f"{glyph}^{{{exp}}}")
    return " ".join(parts)


def latex_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return rf"\frac{{{x.numerator}}}{{{x.denominator}}}"


def latex_scalar(s: Union[Scalar, FloatScalar]) -> str:
    units = latex_units(s.units)
    if isinstance(s, FloatScalar):
        v = s.value
        value = f"{v.real:.12g}" if v.imag == 0 else rf"\left({v.real:.12g} {v.imag:+.12g} i\right)"
        return f"{value} {units}".strip()
    pieces = []
    for index, (coef, basis) in enumerate(s.value_terms()):
        mag = abs(coef)
        glyph = _LATEX_BASIS[basis]
        body = glyph if (glyph and mag == 1) else f"{latex_fraction(mag)}{glyph}"
        if index == 0:
            pieces.append(f"-{body}" if coef < 0 else body)
        else:
            pieces.append(f" {'-' if coef < 0 else '+'} {body}")
    value = "".join(pieces) or "0"
    if not units:
        return value
    if len(pieces) > 1:
        value = rf"\left({value}\right)"
    if value in ("1", "-1"):
        return units if value == "1" else f"-{units}"
    return f"{value}\\, {units}"


def latex_sum(c: ScalarSum) -> str:
    texts = [latex_scalar(s) for s in c]
    if not texts:
        return "0"
    if len(texts) == 1:
        return texts[0]
    joined = " + ".join(texts).replace("+ -", "- ")
    return rf"\left({joined}\right)"


def _join_terms(bodies: List[str]) -> str:
    if not bodies:
        return "0"
    out = bodies[0]
    for body in bodies[1:]:
        out += f" - {body[1:]}" if body.startswith("-") else f" + {body}"
    return out


def _with_coefficient(coeff: str, word: str) -> str:
    if not word:
        return coeff
    if coeff == "1":
        return word
    if coeff == "-1":
        return f"-{word}"
    if (" + " in coeff or " - " in coeff) and not coeff.startswith(r"\left("):
        coeff = rf"\left({coeff}\right)"
    return f"{coeff}\\, {word}"


def latex_word(j: int, k: int) -> str:
    parts = []
    if j:
        parts.append(r"a^{\dagger}" if j == 1 else rf"a^{{\dagger {j}}}")
    if k:
        parts.append("a" if k == 1 else f"a^{{{k}}}")
    return " ".join(parts)


def latex_operator(poly: OperatorPoly) -> str:
    return _join_terms([_with_coefficient(latex_sum(c), latex_word(j, k)) for (j, k), c in poly.items()])


def latex_diagonal(poly: DiagonalPoly) -> str:
    bodies = []
    for power in range(len(poly.coeffs) - 1, -1, -1):
        c = poly.coeffs[power]
        if c.is_zero:
            continue
        var = "" if power == 0 else ("n" if power == 1 else f"n^{{{power}}}")
        bodies.append(_with_coefficient(latex_sum(c), var))
    return _join_terms(bodies)


def latex_escape(text: str) -> str:
    table = {
        "\\": r"\textbackslash{}",
        "^": r"\^{}",
        "_": r"\_",
        "&": r"\&",
        "%": r"\%",
        "$": r"\$",
        "#": r"\#",
        "{": r"\{",
        "}": r"\}",
        "~": r"\~{}",
    }
    return "".join(table.get(ch, ch) for ch in text)


def _latex_block(lines: List[str], title: str, symbol: str, items: Sequence[Poly]) -> None:
    if not items:
        return
    lines.append(rf"\subsection*{{{title}}}")
    lines.append(r"\begin{align*}")
    rows = []
    for m, p in enumerate(items):
        body = latex_operator(p) if isinstance(p, OperatorPoly) else latex_diagonal(p)
        rows.append(rf"{symbol}_{{({m})}} &= {body}")
    lines.append(" \\\\\n".join(rows))
    lines.append(r"\end{align*}")


def render_latex(report: LadderReport) -> str:
    r = report.in_units()
    lines = [
        r"\documentclass{article}",
        r"\usepackage{amsmath}",
        r"\usepackage[margin=2cm]{geometry}",
        r"\allowdisplaybreaks",
        r"\begin{document}",
        rf"\section*{{Ladder corrections for $V = {latex_operator(r.V)}$}}",
        rf"Input: \texttt{{{latex_escape(r.perturbation)}}}; order $M = {r.order}$; "
        rf"normalization: {r.normalization}; units: {r.units}.",
    ]
    _latex_block(lines, "Annihilation corrections", r"\alpha", r.alphas)
    _latex_block(lines, "Creation corrections", r"\alpha^{\dagger}", r.creations)
    _latex_block(lines, "Number corrections", r"\nu", r.numbers)
    _latex_block(lines, "State corrections", r"\Omega", r.omegas)
    _latex_block(lines, "Energy corrections", r"\varepsilon", r.epsilons)
    _latex_block(lines, "Norm", "Z", r.norms)
    if r.expectations is not None:
        e = r.expectations
        lines.append(rf"\subsection*{{Expectation of \texttt{{{latex_escape(e.observable)}}}}}")
        _latex_block(lines, "Unnormalized", "v", e.value)
        _latex_block(lines, "Normalized", "r", e.ratio)
    for note in r.notes:
        lines.append(rf"\paragraph{{Note.}} {latex_escape(note)}")
    lines.append(r"\end{document}")
    return "\n".join(lines) + "\n"


def render_json(report: LadderReport) -> str:
    return json.dumps(report.in_units().to_dict(), indent=2, ensure_ascii=False) + "\n"


RENDERERS = {"text": render_text, "latex": render_latex, "json": render_json}


def render(report: LadderReport, fmt: str) -> str:
    return RENDERERS[fmt](report)
