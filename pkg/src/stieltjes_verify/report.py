"""Verification records and their JSON form."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

RECORD_KEYS = ("id", "lhs", "rhs", "abs_err", "rel_err", "pass", "suspect",
               "n_evals", "elapsed_ms")


def _clean(v):
    """Make a value JSON-safe: non-finite floats become None, numpy scalars floats."""
    if isinstance(v, dict):
        return {str(k): _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    try:
        f = float(v)
    except (TypeError, ValueError):
        return str(v)
    if hasattr(v, "dtype") and getattr(v.dtype, "kind", "") in "iu":
        return int(v)
    return f if math.isfinite(f) else None


def passes(abs_err: float, rel_err: float, rhs: float, tol: float) -> bool:
    """abs_err <= tol, or rel_err <= tol once |rhs| exceeds one."""
    if not (math.isfinite(abs_err)):
        return False
    return abs_err <= tol or (abs(rhs) > 1.0 and rel_err <= tol)


@dataclass
class VerificationRecord:
    id: str
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    passed: bool
    suspect: bool = False
    n_evals: int = 0
    elapsed_ms: Optional[float] = None
    tol: float = math.nan
    detail: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, id: str, lhs: float, rhs: float, tol: float, **kw):
        lhs, rhs = float(lhs), float(rhs)
        abs_err = abs(lhs - rhs)
        rel_err = abs_err / abs(rhs) if rhs != 0 else abs_err
        return cls(id, lhs, rhs, abs_err, rel_err, passes(abs_err, rel_err, rhs, tol),
                   tol=tol, **kw)

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "id": self.id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "pass": bool(self.passed),
            "suspect": bool(self.suspect),
            "n_evals": int(self.n_evals),
            "elapsed_ms": (round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None
                           else None),
            "tol": self.tol,
        }
        if self.detail:
            d["detail"] = self.detail
        return _clean(d)

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=False, allow_nan=False)
