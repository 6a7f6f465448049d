"""Normalized generalized Gell-Mann basis of SU(d).

Generators are Hermitian, traceless and satisfy Tr(l_k l_m) = delta_km.
Order: symmetric block, antisymmetric block (both over pairs j < k in
lexicographic order), then the diagonal block l = 1 .. d-1. The C and T
correlation matrices are indexed in this order.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from concurrence_bounds.errors import DimensionError
from concurrence_bounds.linalg import ComplexMatrix


@dataclass(frozen=True)
class GeneratorBasis:
    """The d^2 - 1 generators, also available stacked as a (d^2-1, d, d) array."""
    d: int
    mats: Tuple[ComplexMatrix, ...]

    @property
    def stacked(self) -> np.ndarray:
        return np.stack(self.mats)


def _unit(d: int, j: int, k: int) -> np.ndarray:
    e = np.zeros((d, d), dtype=np.complex128)
    e[j, k] = 1.0
    return e


@lru_cache(maxsize=32, typed=True)
def su_generators(d: int) -> GeneratorBasis:
    """Generalized Gell-Mann matrices scaled to unit Hilbert-Schmidt norm."""
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise DimensionError(f'SU(d) generators need d >= 2, got {d!r}')

    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    root2 = np.sqrt(2.0)
    mats = [(_unit(d, j, k) + _unit(d, k, j)) / root2 for j, k in pairs]
    mats += [-1j * (_unit(d, j, k) - _unit(d, k, j)) / root2 for j, k in pairs]
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -float(l)
        mats.append(np.diag(diag / np.sqrt(l * (l + 1))).astype(np.complex128))

    for m in mats:
        m.flags.writeable = False
    return GeneratorBasis(d, tuple(mats))
