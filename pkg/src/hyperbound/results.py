"""Result and report records returned across the package.

Predicates are tri-state everywhere: ``True``, ``False`` or ``None`` for
"not applicable to this shape of parameters".
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class EvalResult:
    value: float
    abs_err: float
    terms_used: int
    method: str = ""

    def __post_init__(self):
        if not self.abs_err >= 0:
            raise ValueError(f"abs_err must be nonnegative, got {self.abs_err!r}")
        if self.terms_used < 1:
            raise ValueError("terms_used must be >= 1")

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class Hypothesis:
    """One named predicate inside a certificate."""

    name: str
    status: Optional[bool]
    witness: Any = None


@dataclass
class BoundCertificate:
    family: str
    hypotheses: list
    lower: Optional[float]
    upper: Optional[float]
    reference_value: Optional[float] = None
    # bound name -> hypothesis name (or tuple of names) that gates it
    gates: dict = field(default_factory=dict)
    # additional envelopes and constants (second upper bound, c, d, f1, ...)
    extra: dict = field(default_factory=dict)

    def status(self, name):
        for h in self.hypotheses:
            if h.name == name:
                return h.status
        raise KeyError(name)

    def gated(self, bound):
        """True when the hypothesis behind ``bound`` holds."""
        gate = self.gates.get(bound)
        if gate is None:
            return True
        names = (gate,) if isinstance(gate, str) else gate
        return all(self.status(n) is True for n in names)

    @property
    def advisory(self):
        return any(h.status is False for h in self.hypotheses)

    def sandwich_ok(self, tol=1e-9):
        """Check ``lower - tol <= reference <= upper + tol`` for certified envelopes."""
        if self.reference_value is None:
            return None
        ref = self.reference_value
        ok = True
        if self.lower is not None and self.gated("lower"):
            ok &= self.lower - tol * max(1.0, abs(ref)) <= ref
        if self.upper is not None and self.gated("upper"):
            ok &= ref <= self.upper + tol * max(1.0, abs(ref))
        for name, val in self.extra.items():
            if name.startswith("upper") and name in self.gates and self.gated(name):
                ok &= ref <= val + tol * max(1.0, abs(ref))
        return bool(ok)

    def to_dict(self):
        return asdict(self)


@dataclass
class MonotoneReport:
    kind: str
    grid: dict
    min_margin: float
    tolerance: float
    passed: bool
    n_max: Optional[int] = None
    worst: dict = field(default_factory=dict)
    hypotheses: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)
