"""Multipartite states: construction, validation and index reshuffling.

Index convention: subsystems are numbered from 0 and multi-indices are
mixed radix with the lowest listed subsystem most significant. Partial
trace, bipartite view, partial transpose and realignment all go through
``_regroup`` so they agree on that convention.
"""
from dataclasses import dataclass
from functools import reduce
from math import prod
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from concurrence_bounds.config import DEFAULT_TOLERANCES, Tolerances
from concurrence_bounds.errors import (
    DimensionError, HermiticityError, NormalizationError, PartitionError,
    PositivityError, TraceError, WeightError,
)
from concurrence_bounds.linalg import (
    ComplexMatrix, as_matrix, dagger, hermitian_eig, hermiticity_defect, purity,
)
from concurrence_bounds.partition import Cut, SubsetIndex


@dataclass(frozen=True)
class MultipartiteState:
    """A validated density matrix on the tensor product of ``dims``."""
    dims: Tuple[int, ...]
    rho: ComplexMatrix

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]


@dataclass(frozen=True)
class PureState:
    """A unit state vector on the tensor product of ``dims``."""
    dims: Tuple[int, ...]
    amplitudes: npt.NDArray[np.complex128]

    @property
    def n(self) -> int:
        return len(self.dims)

    def density(self) -> MultipartiteState:
        """The projector |psi><psi| as a MultipartiteState."""
        psi = self.amplitudes
        return _state(self.dims, np.outer(psi, np.conj(psi)))


AnyState = Union[MultipartiteState, PureState]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.flags.writeable = False
    return a


def _state(dims, rho) -> MultipartiteState:
    return MultipartiteState(tuple(int(d) for d in dims), _frozen(rho))


def _check_dims(dims) -> Tuple[int, ...]:
    dims = tuple(dims)
    if not dims:
        raise DimensionError('dims must list at least one subsystem')
    for d in dims:
        if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 2:
            raise DimensionError(f'subsystem dimensions must be integers >= 2, got {dims}')
    return tuple(int(d) for d in dims)


# =============================================================================
# Validation and constructors
# =============================================================================

def validate(dims, matrix, tol: Tolerances = DEFAULT_TOLERANCES) -> MultipartiteState:
    """Return a MultipartiteState if ``matrix`` is a density matrix on ``dims``.

    Raises DimensionError, HermiticityError, TraceError or PositivityError.
    """
    dims = _check_dims(dims)
    m = as_matrix(matrix)
    size = prod(dims)
    if m.shape != (size, size):
        raise DimensionError(
            f'dims {list(dims)} need a {size}x{size} matrix, got {m.shape[0]}x{m.shape[1]}')
    defect = hermiticity_defect(m)
    if defect > tol.hermitian:
        raise HermiticityError(f'matrix is not Hermitian (defect {defect:.3e})')
    tr = complex(np.trace(m))
    if abs(tr - 1.0) > tol.trace:
        raise TraceError(f'trace is {tr.real:.10g}, expected 1')
    lowest = hermitian_eig(m, tol).eigenvalues[-1]
    if lowest < -tol.positivity:
        raise PositivityError(f'smallest eigenvalue {lowest:.3e} is negative')
    return _state(dims, m)


def pure_state(dims, amplitudes, tol: Tolerances = DEFAULT_TOLERANCES) -> PureState:
    """Validate a state vector and wrap it as a PureState."""
    dims = _check_dims(dims)
    psi = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if psi.size != prod(dims):
        raise DimensionError(f'dims {list(dims)} need {prod(dims)} amplitudes, got {psi.size}')
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > tol.pure_norm:
        raise NormalizationError(f'state vector norm is {norm:.12g}, expected 1')
    return PureState(dims, _frozen(psi))


def ghz(n: int) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2) on n qubits."""
    if not isinstance(n, int) or n < 2:
        raise PartitionError(f'GHZ state needs n >= 2 qubits, got {n!r}')
    psi = np.zeros(2 ** n, dtype=np.complex128)
    psi[0] = psi[-1] = 1.0 / np.sqrt(2.0)
    return PureState((2,) * n, _frozen(psi))


def bell_state() -> PureState:
    return ghz(2)


def product_state(dims) -> PureState:
    """|0...0> on ``dims``."""
    dims = _check_dims(dims)
    psi = np.zeros(prod(dims), dtype=np.complex128)
    psi[0] = 1.0
    return PureState(dims, _frozen(psi))


def ghz_basis_vector(j: int, sign: int) -> np.ndarray:
    """(|j>_12 |0>_3 + sign |3-j>_12 |1>_3)/sqrt(2), j in binary on qubits 1, 2."""
    v = np.zeros(8, dtype=np.complex128)
    v[2 * j] = 1.0
    v[2 * (3 - j) + 1] = sign
    return v / np.sqrt(2.0)


def dct_state(lam0p: float, lam0m: float, lam: Sequence[float],
              tol: Tolerances = DEFAULT_TOLERANCES) -> MultipartiteState:
    """Three-qubit state diagonal in the GHZ basis.

    Weight ``lam0p``/``lam0m`` on |Psi_0^+->, ``lam[j-1]`` on each of
    |Psi_j^+>, |Psi_j^->; the weights must satisfy
    lam0p + lam0m + 2 * sum(lam) == 1.
    """
    lam = [float(v) for v in lam]
    if len(lam) != 3:
        raise WeightError(f'expected three lambda_j weights, got {len(lam)}')
    weights = [float(lam0p), float(lam0m)] + lam
    if any(w < 0 or not np.isfinite(w) for w in weights):
        raise WeightError(f'weights must be non-negative, got {weights}')
    total = lam0p + lam0m + 2.0 * sum(lam)
    if abs(total - 1.0) > tol.weight_norm:
        raise WeightError(f'lam0p + lam0m + 2*sum(lam) = {total:.12g}, expected 1')

    rho = np.zeros((8, 8), dtype=np.complex128)
    terms = [(lam0p, 0, 1), (lam0m, 0, -1)]
    terms += [(lam[j - 1], j, s) for j in (1, 2, 3) for s in (1, -1)]
    for w, j, s in terms:
        v = ghz_basis_vector(j, s)
        rho += w * np.outer(v, np.conj(v))
    return validate((2, 2, 2), rho, tol)


def as_density(s: AnyState) -> MultipartiteState:
    return s.density() if isinstance(s, PureState) else s


def white_noise_mix(s: AnyState, x: float) -> MultipartiteState:
    """(1-x)/D * I + x * rho."""
    if not 0.0 <= x <= 1.0:
        raise WeightError(f'noise parameter x must lie in [0, 1], got {x}')
    s = as_density(s)
    size = s.dim
    return _state(s.dims, (1.0 - x) / size * np.eye(size) + x * s.rho)


# =============================================================================
# Index reshuffling
# =============================================================================

def _regroup(m: np.ndarray, dims: Sequence[int], first: Sequence[int],
             second: Sequence[int]) -> np.ndarray:
    """View an operator on ``dims`` as T[a, b, a', b'].

    ``a`` is the mixed-radix index over the factors in ``first`` and ``b``
    over ``second``, each in the order listed (earlier factor more
    significant). ``first + second`` must be a permutation of the factors,
    so the result is a permutation similarity of ``m``.
    """
    n = len(dims)
    size = prod(dims)
    if m.shape != (size, size):
        raise DimensionError(f'operator of shape {m.shape} does not act on dims {list(dims)}')
    order = list(first) + list(second)
    if sorted(order) != list(range(n)):
        raise PartitionError(f'{list(first)}|{list(second)} is not a partition of {n} factors')
    da = prod(dims[i] for i in first)
    db = prod(dims[i] for i in second)
    t = m.reshape(tuple(dims) * 2).transpose(order + [n + i for i in order])
    return t.reshape(da, db, da, db)


def _keep_indices(keep, n: int) -> Tuple[int, ...]:
    if isinstance(keep, SubsetIndex):
        if keep.n != n:
            raise PartitionError(f'subset is over {keep.n} subsystems, state has {n}')
        return keep.members
    return SubsetIndex(tuple(sorted(keep)), n).members


def partial_trace(s: AnyState, keep: Union[SubsetIndex, Iterable[int]]) -> ComplexMatrix:
    """Reduced density matrix on the ``keep`` factors."""
    kept = _keep_indices(keep, s.n)
    rest = [i for i in range(s.n) if i not in kept]
    if isinstance(s, PureState):
        psi = s.amplitudes.reshape(s.dims).transpose(list(kept) + rest)
        mat = psi.reshape(prod(s.dims[i] for i in kept), -1)
        return mat @ dagger(mat)
    return np.einsum('ajbj->ab', _regroup(s.rho, s.dims, kept, rest))


def ordered_view(s: AnyState, first: Sequence[int],
                 second: Sequence[int]) -> Tuple[ComplexMatrix, int, int]:
    """Bipartite operator with ``first`` factors as side A and ``second`` as B."""
    s = as_density(s)
    t = _regroup(s.rho, s.dims, first, second)
    da, db = t.shape[0], t.shape[1]
    return t.reshape(da * db, da * db), da, db


def bipartite_view(s: AnyState, cut: Cut) -> Tuple[ComplexMatrix, int, int]:
    """The state re-indexed as an operator on H_A (x) H_B for ``cut``."""
    if cut.n != s.n:
        raise PartitionError(f'cut is over {cut.n} subsystems, state has {s.n}')
    return ordered_view(s, cut.side_a, cut.side_b)


def _as_pair(m, da: int, db: int) -> np.ndarray:
    return _regroup(as_matrix(m), (da, db), (0,), (1,))


def partial_transpose(m, da: int, db: int) -> ComplexMatrix:
    """<i,k|out|j,l> = <j,k|m|i,l>: transpose of the A indices."""
    return _as_pair(m, da, db).transpose(2, 1, 0, 3).reshape(da * db, da * db)


def realign(m, da: int, db: int) -> ComplexMatrix:
    """da^2 x db^2 matrix; row i*da + j, column k*db + l holds <i,k|m|j,l>."""
    return _as_pair(m, da, db).transpose(0, 2, 1, 3).reshape(da * da, db * db)


def linear_entropy(rho) -> float:
    return 1.0 - purity(rho)


# =============================================================================
# Random states (seeded through numpy Generators)
# =============================================================================

def _gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_pure_state(dims, rng: np.random.Generator) -> PureState:
    """Normalized standard complex Gaussian vector."""
    dims = _check_dims(dims)
    psi = _gaussian(rng, prod(dims))
    return PureState(dims, _frozen(psi / np.linalg.norm(psi)))


def random_density(dims, rng: np.random.Generator,
                   rank: Optional[int] = None) -> MultipartiteState:
    """G G^dag / Tr(G G^dag) with G a Gaussian D x rank matrix."""
    dims = _check_dims(dims)
    size = prod(dims)
    g = _gaussian(rng, (size, rank or size))
    rho = g @ dagger(g)
    rho = 0.5 * (rho + dagger(rho))
    return _state(dims, rho / np.trace(rho).real)


def random_unitary(d: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar unitary from the QR factorization of a Ginibre matrix."""
    q, r = np.linalg.qr(_gaussian(rng, (d, d)) / np.sqrt(2.0))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def local_unitary(dims, rng: np.random.Generator) -> ComplexMatrix:
    """U_1 (x) ... (x) U_N with independent Haar factors."""
    return reduce(np.kron, [random_unitary(d, rng) for d in _check_dims(dims)])


def apply_unitary(s: AnyState, u) -> MultipartiteState:
    s = as_density(s)
    u = as_matrix(u)
    return _state(s.dims, u @ s.rho @ dagger(u))


def random_product_mixture(dims, rng: np.random.Generator,
                           max_terms: int = 8) -> MultipartiteState:
    """Convex mixture of 1..max_terms fully product pure states."""
    dims = _check_dims(dims)
    terms = int(rng.integers(1, max_terms + 1))
    weights = rng.dirichlet(np.ones(terms))
    rho = np.zeros((prod(dims),) * 2, dtype=np.complex128)
    for w in weights:
        factors = [random_pure_state((d,), rng).amplitudes for d in dims]
        v = reduce(np.kron, factors)
        rho += w * np.outer(v, np.conj(v))
    return _state(dims, rho)
