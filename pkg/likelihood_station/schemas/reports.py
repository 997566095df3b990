"""
Pydantic schemas for command reports
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

SIGNIFICANT_DIGITS = 17


def round_float(x: float) -> float:
    """
    Plain float that survives a 17-significant-digit text round trip unchanged

    JSON output then carries the shortest repr that parses back to the same
    double, not a fixed count of 17 digits.
    """
    return float(f"{float(x):.{SIGNIFICANT_DIGITS}g}")


def _floats(values: Sequence[float]) -> List[float]:
    return [round_float(v) for v in values]


class SolutionEntry(BaseModel):
    """One critical point; coordinates as [re, im] pairs"""

    point: List[List[float]]
    residual: float
    real: bool
    positive: bool
    multiplicity: int = 1

    @classmethod
    def from_point(cls, point) -> "SolutionEntry":
        return cls(
            point=[[round_float(z.real), round_float(z.imag)] for z in point.coords],
            residual=round_float(point.residual),
            real=point.is_real,
            positive=point.is_positive,
            multiplicity=point.multiplicity,
        )


class MaximumEntry(BaseModel):
    """One certified local maximum"""

    point: List[float]
    log_likelihood: float
    multipliers: List[float]
    eigenvalues: List[float]
    is_global_among_found: bool = False

    @classmethod
    def from_report(cls, report) -> "MaximumEntry":
        return cls(
            point=_floats(report.point),
            log_likelihood=round_float(report.log_likelihood),
            multipliers=_floats(report.multipliers),
            eigenvalues=_floats(report.restricted_hessian_eigenvalues),
            is_global_among_found=report.is_global_among_found,
        )


class RunReport(BaseModel):
    """Machine-readable outcome of one command"""

    command: List[str]
    model: Optional[str] = None
    seed: int = 0
    ml_degree: Optional[int] = None
    certified: Optional[bool] = None
    solutions: List[SolutionEntry] = Field(default_factory=list)
    maxima: List[MaximumEntry] = Field(default_factory=list)
    timings: Dict[str, float] = Field(default_factory=dict)
    timed_out: Optional[str] = None
    extra: Dict[str, Any] = Field(default_factory=dict)

    def to_json(self) -> str:
        payload = self.model_dump()
        payload["timings"] = {k: round_float(v) for k, v in self.timings.items()}
        if not payload["extra"]:
            del payload["extra"]
        return json.dumps(payload, indent=2, sort_keys=False)

    def to_text(self) -> str:
        """Aligned human-readable summary."""
        rows = [("command", " ".join(self.command))]
        if self.model is not None:
            rows.append(("model", self.model))
        rows.append(("seed", str(self.seed)))
        if self.ml_degree is not None:
            flag = "certified" if self.certified else "not certified"
            rows.append(("ml_degree", f"{self.ml_degree} ({flag})"))
        if self.solutions:
            real = sum(s.multiplicity for s in self.solutions if s.real)
            positive = sum(s.multiplicity for s in self.solutions if s.positive)
            total = sum(s.multiplicity for s in self.solutions)
            rows.append(("solutions", f"{total} ({real} real, {positive} positive)"))
        for key, value in self.extra.items():
            rows.append((key, str(value)))
        if self.timed_out:
            rows.append(("timed_out", self.timed_out))
        width = max(len(k) for k, _ in rows)
        lines = [f"{k.ljust(width)}  {v}" for k, v in rows]

        for i, entry in enumerate(self.solutions, start=1):
            coords = ", ".join(_format_complex(re, im) for re, im in entry.point)
            tag = "positive" if entry.positive else ("real" if entry.real else "complex")
            mult = f" x{entry.multiplicity}" if entry.multiplicity > 1 else ""
            lines.append(f"  [{i:>3}] {tag:<8} residual={entry.residual:.2e}{mult}  ({coords})")

        for i, entry in enumerate(self.maxima, start=1):
            marker = " (global)" if entry.is_global_among_found else ""
            coords = ", ".join(f"{x:.10g}" for x in entry.point)
            lines.append(f"  max {i}{marker}: log L = {entry.log_likelihood:.10f}  ({coords})")

        if self.timings:
            stages = ", ".join(f"{k}={v:.3f}s" for k, v in self.timings.items())
            lines.append(f"timings{' ' * max(width - 7, 0)}  {stages}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()


def _format_complex(re: float, im: float) -> str:
    if im == 0.0:
        return f"{re:.10g}"
    sign = "+" if im >= 0 else "-"
    return f"{re:.10g}{sign}{abs(im):.10g}i"
