"""Report records for identity residuals and inequality verdicts."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from polycore import GaussianRational


def _json_value(value):
    if isinstance(value, GaussianRational):
        return value.to_json()
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    return value


@dataclass
class IdentityReport:
    """Residual of one identity, LHS minus RHS."""

    identity_id: str  # eq15, eq16, eq17, eq21 or eq25
    backend: str  # exact or numeric
    residual: Union[GaussianRational, float, None]  # None when gated
    tolerance: float = 0.0  # scaled numeric tolerance; unused by the exact backend
    hypothesis_ok: bool = True
    inputs: Dict[str, Any] = field(default_factory=dict)
    note: str = ""

    @property
    def passed(self) -> Optional[bool]:
        if not self.hypothesis_ok or self.residual is None:
            return None
        if isinstance(self.residual, GaussianRational):
            return self.residual.is_zero
        return self.residual <= self.tolerance

    @property
    def magnitude(self) -> Optional[float]:
        if self.residual is None:
            return None
        return abs(complex(self.residual))

    def to_dict(self) -> dict:
        return {
            "id": self.identity_id,
            "backend": self.backend,
            "residual": _json_value(self.residual),
            "holds": self.passed,
            "hypothesis_ok": self.hypothesis_ok,
            "inputs": _json_value(self.inputs),
        }


@dataclass
class BoundReport:
    """
    Verdict for lower <= value <= upper; one side may be absent.

    Floats are for display. The verdict itself is decided on squared
    quantities, exactly whenever every input is rational.
    """

    bound_id: str  # eq26 .. eq42
    value: Optional[float]
    lower: Optional[float] = None
    upper: Optional[float] = None
    holds: Optional[bool] = None  # None when the hypotheses fail
    hypothesis_ok: bool = True
    backend: str = "exact"  # exact when the verdict used only rational data
    inputs: Dict[str, Any] = field(default_factory=dict)
    note: str = ""

    @property
    def lhs(self) -> Optional[float]:
        return self.lower if self.lower is not None else self.value

    @property
    def rhs(self) -> Optional[float]:
        return self.upper if self.upper is not None else self.value

    def to_dict(self) -> dict:
        out = {
            "id": self.bound_id,
            "backend": self.backend,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "holds": self.holds,
            "hypothesis_ok": self.hypothesis_ok,
            "inputs": _json_value(self.inputs),
        }
        if self.note:
            out["note"] = self.note
        return out


def gated_bound(bound_id: str, reason: str, **inputs) -> BoundReport:
    """Report for a lemma whose preconditions do not hold."""
    return BoundReport(bound_id, None, hypothesis_ok=False, inputs=inputs, note=reason)


Report = Union[IdentityReport, BoundReport]


def reports_to_dataframe(reports: List[Report]) -> pd.DataFrame:
    """
    One row per report.

    Args:
        reports: Identity and bound reports, in any mix

    Returns:
        DataFrame with id, kind, backend, holds, hypothesis_ok and the
        numeric columns of each report kind
    """
    if not reports:
        return pd.DataFrame()

    records = []
    for rep in reports:
        if isinstance(rep, IdentityReport):
            records.append({
                "id": rep.identity_id,
                "kind": "identity",
                "backend": rep.backend,
                "holds": rep.passed,
                "hypothesis_ok": rep.hypothesis_ok,
                "residual": rep.magnitude,
                "value": None,
                "lower": None,
                "upper": None,
                "note": rep.note,
            })
        else:
            records.append({
                "id": rep.bound_id,
                "kind": "bound",
                "backend": rep.backend,
                "holds": rep.holds,
                "hypothesis_ok": rep.hypothesis_ok,
                "residual": None,
                "value": rep.value,
                "lower": rep.lower,
                "upper": rep.upper,
                "note": rep.note,
            })

    return pd.DataFrame(records)


def summarize(reports: List[Report]) -> dict:
    """
    Aggregate verdict counts.

    Returns:
        Dict with totals, holds, gated and violations, plus a per-id
        breakdown of violations
    """
    if not reports:
        return {}

    df = reports_to_dataframe(reports)
    evaluated = df[df["hypothesis_ok"]]
    violations = evaluated[evaluated["holds"] == False]  # noqa: E712

    summary = {
        "total": len(df),
        "evaluated": len(evaluated),
        "gated": int((~df["hypothesis_ok"]).sum()),
        "holds": int((evaluated["holds"] == True).sum()),  # noqa: E712
        "violations": len(violations),
        "exact": int((df["backend"] == "exact").sum()),
    }
    summary["violations_by_id"] = violations["id"].value_counts().to_dict() if len(violations) else {}
    return summary
