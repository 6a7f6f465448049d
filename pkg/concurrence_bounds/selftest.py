"""Seeded property suites run by the ``selftest`` subcommand.

Each suite draws its own samples from a shared numpy Generator and returns
a SuiteResult; ``run_selftest`` runs them in a fixed order so a given seed
always reproduces the same states.
"""
from typing import Callable, List

import numpy as np

from concurrence_bounds.bounds import (
    bounds_eq13, cut_prefactor, lower_theorem2, pure_c2, pure_cn, upper_eq14,
)
from concurrence_bounds.config import DEFAULT_TOLERANCES, Tolerances
from concurrence_bounds.linalg import purity
from concurrence_bounds.log import logger
from concurrence_bounds.models import SuiteResult
from concurrence_bounds.partition import enumerate_cuts
from concurrence_bounds.qstate import (
    apply_unitary, local_unitary, partial_trace, random_density,
    random_product_mixture, random_pure_state,
)

SLACK = 1e-9
PURE_DIMS = [(2, 2, 2), (2, 3, 2), (2, 2, 2, 2)]

Suite = Callable[[int, np.random.Generator, Tolerances], SuiteResult]


def _check(result: SuiteResult, ok: bool, detail: str) -> None:
    if ok:
        result.passed += 1
    else:
        result.failed += 1
        result.failures.append(detail)


def linear_entropy_subadditivity(samples: int, rng: np.random.Generator,
                                 tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    """1 - Tr rho^2 <= (1 - Tr rho_A^2) + (1 - Tr rho_B^2) on random bipartite states."""
    result = SuiteResult('linear-entropy subadditivity')
    for k in range(samples):
        dims = (int(rng.integers(2, 5)), int(rng.integers(2, 5)))
        s = random_density(dims, rng)
        lhs = 1.0 - purity(s.rho)
        rhs = (1.0 - purity(partial_trace(s, [0]))) + (1.0 - purity(partial_trace(s, [1])))
        _check(result, lhs <= rhs + SLACK, f'sample {k} dims {dims}: {lhs:.12g} > {rhs:.12g}')
    return result


def pure_cut_domination(samples: int, rng: np.random.Generator,
                        tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    """C_N(psi) >= 2^((3-N)/2) C_2 on every cut for random pure states."""
    result = SuiteResult('pure-state cut domination')
    for k in range(samples):
        dims = PURE_DIMS[k % len(PURE_DIMS)]
        psi = random_pure_state(dims, rng)
        cn = pure_cn(psi)
        factor = cut_prefactor(psi.n)
        for cut in enumerate_cuts(psi.n):
            c2 = pure_c2(psi, cut)
            _check(result, cn >= factor * c2 - SLACK,
                   f'sample {k} cut {cut.label()}: C_N {cn:.12g} < {factor * c2:.12g}')
    return result


def pure_state_collapse(samples: int, rng: np.random.Generator,
                        tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    """Purity lower bound and spectral upper bound both equal C_N on pure states."""
    result = SuiteResult('pure-state collapse')
    for k in range(samples):
        dims = PURE_DIMS[k % len(PURE_DIMS)]
        psi = random_pure_state(dims, rng)
        cn = pure_cn(psi)
        lower, _ = bounds_eq13(psi, tol)
        upper = upper_eq14(psi, tol)
        _check(result, abs(lower - cn) <= SLACK and abs(upper - cn) <= SLACK,
               f'sample {k} dims {dims}: C_N {cn:.12g}, lower {lower:.12g}, upper {upper:.12g}')
    return result


def spectral_upper_dominance(samples: int, rng: np.random.Generator,
                             tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    """The spectral upper bound never exceeds the purity upper bound."""
    result = SuiteResult('spectral upper bound dominance')
    for k in range(samples):
        s = random_density((2, 2, 2), rng, rank=int(rng.integers(1, 9)))
        spectral = upper_eq14(s, tol)
        _, purity_upper = bounds_eq13(s, tol)
        _check(result, spectral <= purity_upper + SLACK,
               f'sample {k}: spectral {spectral:.12g} > purity {purity_upper:.12g}')
    return result


def sandwich_consistency(samples: int, rng: np.random.Generator,
                         tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    """Every lower bound stays below every upper bound."""
    result = SuiteResult('lower/upper sandwich')
    for k in range(samples):
        s = random_density((2, 2, 2), rng, rank=int(rng.integers(1, 4)))
        lower12, _ = lower_theorem2(s, tol)
        lower13, upper13 = bounds_eq13(s, tol)
        upper14 = upper_eq14(s, tol)
        lo, hi = max(lower12, lower13), min(upper13, upper14)
        _check(result, lo <= hi + SLACK, f'sample {k}: lower {lo:.12g} > upper {hi:.12g}')
    return result


def separable_not_detected(samples: int, rng: np.random.Generator,
                           tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    """Mixtures of product states give zero for both lower bounds."""
    result = SuiteResult('separable non-detection')
    for k in range(samples):
        s = random_product_mixture((2, 2, 2), rng)
        lower12, _ = lower_theorem2(s, tol)
        lower13, _ = bounds_eq13(s, tol)
        _check(result, lower12 <= SLACK and lower13 <= SLACK,
               f'sample {k}: cut bound {lower12:.3e}, purity bound {lower13:.3e}')
    return result


def local_unitary_invariance(samples: int, rng: np.random.Generator,
                             tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    """Bounds are unchanged by U_1 (x) U_2 (x) U_3."""
    result = SuiteResult('local-unitary invariance')
    dims = (2, 2, 2)
    for k in range(samples):
        s = random_density(dims, rng, rank=int(rng.integers(1, 4)))
        t = apply_unitary(s, local_unitary(dims, rng))
        before = (lower_theorem2(s, tol)[0], *bounds_eq13(s, tol))
        after = (lower_theorem2(t, tol)[0], *bounds_eq13(t, tol))
        drift = max(abs(a - b) for a, b in zip(before, after))
        _check(result, drift <= 1e-8, f'sample {k}: bounds moved by {drift:.3e}')
    return result


def run_selftest(samples: int = 200, seed: int = 20240607,
                 tol: Tolerances = DEFAULT_TOLERANCES) -> List[SuiteResult]:
    """Run every suite; the slower mixed-state suites use a quarter of the samples."""
    rng = np.random.default_rng(seed)
    plan = [
        (linear_entropy_subadditivity, samples),
        (pure_cut_domination, samples),
        (pure_state_collapse, samples),
        (spectral_upper_dominance, samples),
        (sandwich_consistency, max(1, samples // 4)),
        (separable_not_detected, max(1, samples // 2)),
        (local_unitary_invariance, max(1, samples // 4)),
    ]
    results = []
    for suite, count in plan:
        res = suite(count, rng, tol)
        logger.info('{}: {} passed, {} failed', res.name, res.passed, res.failed)
        results.append(res)
    return results
