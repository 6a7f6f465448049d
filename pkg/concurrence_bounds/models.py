"""Structured result types.

Bound computations return these data objects; the CLI renders them as a
text table, JSON or CSV.
"""
from dataclasses import dataclass, field
from typing import List

from concurrence_bounds.partition import Cut


@dataclass(frozen=True)
class CutBounds:
    """Every per-cut intermediate of the multipartite lower bound.

    ``m``/``n_big`` are min/max of the two side dimensions; when side A is
    the larger one the sides were relabelled (``swapped``) before the
    formulas were evaluated. b1..b3 are unclamped and may be negative.
    """
    cut: Cut
    m: int
    n_big: int
    ppt_norm: float
    realign_norm: float
    corr_norm: float
    t_norm: float
    purity_a: float
    purity_b: float
    b1: float
    b2: float
    b3: float
    swapped: bool = False

    @property
    def best(self) -> float:
        return max(self.b1, self.b2, self.b3)

    def to_dict(self) -> dict:
        return {
            'cut': {'side_a': list(self.cut.side_a), 'side_b': list(self.cut.side_b)},
            'm': self.m,
            'n_big': self.n_big,
            'ppt_norm': self.ppt_norm,
            'realign_norm': self.realign_norm,
            'corr_norm': self.corr_norm,
            't_norm': self.t_norm,
            'purity_a': self.purity_a,
            'purity_b': self.purity_b,
            'b1': self.b1,
            'b2': self.b2,
            'b3': self.b3,
            'swapped': self.swapped,
        }


@dataclass(frozen=True)
class BoundReport:
    """All bounds for one state plus the entanglement verdict."""
    dims: List[int]
    per_cut: List[CutBounds]
    lower_eq12: float
    lower_eq13: float
    upper_eq13: float
    upper_eq14: float
    best_lower: float
    best_upper: float
    entangled: bool

    def to_dict(self) -> dict:
        return {
            'dims': list(self.dims),
            'per_cut': [c.to_dict() for c in self.per_cut],
            'lower_eq12': self.lower_eq12,
            'lower_eq13': self.lower_eq13,
            'upper_eq13': self.upper_eq13,
            'upper_eq14': self.upper_eq14,
            'best_lower': self.best_lower,
            'best_upper': self.best_upper,
            'entangled': self.entangled,
        }


CSV_HEADER = ['x', 'lower_eq12', 'lower_eq13', 'upper_eq13', 'upper_eq14',
              'b1', 'b2', 'b3']


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a white-noise sweep (one CSV record)."""
    x: float
    lower_eq12: float
    lower_eq13: float
    upper_eq13: float
    upper_eq14: float
    b1_max: float
    b2_max: float
    b3_max: float

    def values(self) -> List[float]:
        """Values in CSV_HEADER order."""
        return [self.x, self.lower_eq12, self.lower_eq13, self.upper_eq13,
                self.upper_eq14, self.b1_max, self.b2_max, self.b3_max]


@dataclass
class SuiteResult:
    """Outcome of one property suite run by selftest."""
    name: str
    passed: int = 0
    failed: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0
