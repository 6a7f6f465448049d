"""Bipartite cuts and proper subsystem subsets.

Both are enumerated by bitmask: bit i set means subsystem i is a member
(of side A for a cut). Cuts keep subsystem 0 on side A so each unordered
bipartition appears exactly once.
"""
from dataclasses import dataclass
from typing import List, Tuple

from concurrence_bounds.errors import PartitionError

MAX_SUBSYSTEMS = 16


def _check_count(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise PartitionError(f'need at least 2 subsystems, got {n!r}')
    if n > MAX_SUBSYSTEMS:
        raise PartitionError(f'at most {MAX_SUBSYSTEMS} subsystems supported, got {n}')


def _members(mask: int, n: int) -> Tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


@dataclass(frozen=True)
class SubsetIndex:
    """A proper nonempty subset of {0, ..., n-1}, strictly increasing."""
    members: Tuple[int, ...]
    n: int

    def __post_init__(self):
        m = self.members
        if not 1 <= len(m) <= self.n - 1:
            raise PartitionError(f'subset {m} is not a proper nonempty subset of {self.n}')
        if any(b <= a for a, b in zip(m, m[1:])) or m[0] < 0 or m[-1] >= self.n:
            raise PartitionError(f'subset {m} must be strictly increasing within 0..{self.n - 1}')

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.members)

    def complement(self) -> 'SubsetIndex':
        return SubsetIndex(_members(~self.mask & ((1 << self.n) - 1), self.n), self.n)


@dataclass(frozen=True)
class Cut:
    """An unordered bipartition in canonical form (subsystem 0 on side A)."""
    side_a: Tuple[int, ...]
    side_b: Tuple[int, ...]
    n: int

    def __post_init__(self):
        if not self.side_a or not self.side_b:
            raise PartitionError('both sides of a cut must be nonempty')
        if sorted(self.side_a + self.side_b) != list(range(self.n)):
            raise PartitionError(
                f'cut {self.side_a}|{self.side_b} does not partition 0..{self.n - 1}')
        for side in (self.side_a, self.side_b):
            if list(side) != sorted(side):
                raise PartitionError(f'cut side {side} must be strictly increasing')
        if self.side_a[0] != 0:
            raise PartitionError('canonical cuts keep subsystem 0 on side A')

    @classmethod
    def from_side_a(cls, side_a, n: int) -> 'Cut':
        """Build a cut from side A, canonicalizing if subsystem 0 is on side B."""
        a = tuple(sorted(set(side_a)))
        b = tuple(i for i in range(n) if i not in a)
        if a and a[0] != 0:
            a, b = b, a
        return cls(a, b, n)

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.side_a)

    def label(self) -> str:
        """Human-readable form, e.g. ``0,2|1``."""
        return (','.join(map(str, self.side_a)) + '|'
                + ','.join(map(str, self.side_b)))


# =============================================================================
# Enumeration
# =============================================================================

def enumerate_cuts(n: int) -> List[Cut]:
    """All 2^(n-1) - 1 canonical cuts, side-A bitmask ascending."""
    _check_count(n)
    return [Cut(alpha.members, alpha.complement().members, n)
            for alpha in enumerate_subsets(n) if alpha.members[0] == 0]


def enumerate_subsets(n: int) -> List[SubsetIndex]:
    """All 2^n - 2 proper nonempty subsets, bitmask ascending."""
    _check_count(n)
    return [SubsetIndex(_members(mask, n), n) for mask in range(1, (1 << n) - 1)]
