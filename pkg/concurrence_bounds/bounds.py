"""Concurrence formulas and bounds.

Pure-state bipartite and N-partite concurrence, the three bipartite lower
bounds (PPT/realignment, covariance matrix, correlation matrix) evaluated on
every cut, the multipartite lower bound built from them, the purity sandwich
and the spectral upper bound, assembled into a BoundReport.
"""
from concurrent.futures import ThreadPoolExecutor
from math import sqrt
from typing import List, Tuple

import numpy as np

from concurrence_bounds.config import DEFAULT_TOLERANCES, Tolerances
from concurrence_bounds.errors import PartitionError
from concurrence_bounds.generators import su_generators
from concurrence_bounds.linalg import hermitian_eig, purity, spectrum_abs_sum, trace_norm
from concurrence_bounds.log import logger
from concurrence_bounds.models import BoundReport, CutBounds
from concurrence_bounds.partition import Cut, enumerate_cuts, enumerate_subsets
from concurrence_bounds.qstate import (
    AnyState, PureState, as_density, ordered_view,
    partial_trace, partial_transpose, pure_state, realign,
)


# =============================================================================
# Pure-state concurrence
# =============================================================================

def pure_c2(psi: PureState, cut: Cut) -> float:
    """sqrt(2 (1 - Tr rho_A^2)) for the side-A reduction of ``cut``."""
    if cut.n != psi.n:
        raise PartitionError(f'cut is over {cut.n} subsystems, state has {psi.n}')
    p = purity(partial_trace(psi, cut.side_a))
    return sqrt(max(0.0, 2.0 * (1.0 - p)))


def pure_cn(psi: PureState) -> float:
    """2^(1 - N/2) sqrt((2^N - 2) - sum_alpha Tr rho_alpha^2)."""
    n = psi.n
    # A pure state's reductions on a subset and on its complement share
    # their purity, so summing over cuts covers every alpha twice.
    total = 2.0 * sum(purity(partial_trace(psi, cut.side_a))
                      for cut in enumerate_cuts(n))
    return 2.0 ** (1.0 - n / 2.0) * sqrt(max(0.0, (2 ** n - 2) - total))


# =============================================================================
# Bipartite lower bounds on one cut
# =============================================================================

def _expectations(view4: np.ndarray, da: int, db: int):
    """<l_i (x) l_j>, <l_i (x) I>, <I (x) l_j> and the two reductions."""
    ga = su_generators(da).stacked
    gb = su_generators(db).stacked
    rho_a = np.einsum('ajbj->ab', view4)
    rho_b = np.einsum('jajb->ab', view4)
    joint = np.real(np.einsum('abcd,ica,jdb->ij', view4, ga, gb))
    local_a = np.real(np.einsum('ab,iba->i', rho_a, ga))
    local_b = np.real(np.einsum('ab,iba->i', rho_b, gb))
    return joint, local_a, local_b, rho_a, rho_b


def cut_bounds(s: AnyState, cut: Cut, tol: Tolerances = DEFAULT_TOLERANCES) -> CutBounds:
    """Evaluate B1, B2 and B3 and their ingredients on one cut.

    The formulas assume the first side is the smaller one, so a cut with
    dA > dB is evaluated with the sides exchanged (M = min, N = max).
    """
    s = as_density(s)
    if cut.n != s.n:
        raise PartitionError(f'cut is over {cut.n} subsystems, state has {s.n}')

    view, da, db = ordered_view(s, cut.side_a, cut.side_b)
    swapped = da > db
    if swapped:
        view, da, db = ordered_view(s, cut.side_b, cut.side_a)
    m, nb = da, db

    ppt_norm, ppt_min = spectrum_abs_sum(partial_transpose(view, da, db), tol)
    realign_norm = trace_norm(realign(view, da, db), tol)

    joint, local_a, local_b, rho_a, rho_b = _expectations(
        view.reshape(da, db, da, db), da, db)
    corr_norm = trace_norm(joint - np.outer(local_a, local_b), tol)
    t_norm = trace_norm(0.5 * da * db * joint, tol)
    purity_a, purity_b = purity(rho_a), purity(rho_b)

    b1 = sqrt(2.0 / (m * (m - 1))) * (max(ppt_norm, realign_norm) - 1.0)
    b2 = ((2.0 * corr_norm - (1.0 - purity_a) - (1.0 - purity_b))
          / sqrt(2.0 * m * (m - 1)))
    b3 = (sqrt(8.0 / (m ** 3 * nb ** 2 * (m - 1)))
          * (t_norm - sqrt(m * nb * (m - 1) * (nb - 1)) / 2.0))

    if swapped:
        purity_a, purity_b = purity_b, purity_a
    logger.debug('cut {}: ppt={:.6g} (min eig {:.3g}) realign={:.6g} B1={:.6g} B2={:.6g} B3={:.6g}',
                 cut.label(), ppt_norm, ppt_min, realign_norm, b1, b2, b3)
    return CutBounds(cut=cut, m=m, n_big=nb, ppt_norm=ppt_norm,
                     realign_norm=realign_norm, corr_norm=corr_norm,
                     t_norm=t_norm, purity_a=purity_a, purity_b=purity_b,
                     b1=b1, b2=b2, b3=b3, swapped=swapped)


def b1(s: AnyState, cut: Cut, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """PPT / realignment bound; negative values mean no detection."""
    return cut_bounds(s, cut, tol).b1


def b2(s: AnyState, cut: Cut, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Covariance-matrix bound."""
    return cut_bounds(s, cut, tol).b2


def b3(s: AnyState, cut: Cut, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Correlation-matrix bound."""
    return cut_bounds(s, cut, tol).b3


# =============================================================================
# Multipartite bounds
# =============================================================================

def cut_prefactor(n: int) -> float:
    """2^((3-N)/2) for N >= 3; a two-party state takes the bipartite bound as is."""
    return 1.0 if n == 2 else 2.0 ** ((3.0 - n) / 2.0)


def lower_theorem2(s: AnyState, tol: Tolerances = DEFAULT_TOLERANCES,
                   workers: int = 1) -> Tuple[float, List[CutBounds]]:
    """max(0, 2^((3-N)/2) * max over cuts of max(B1, B2, B3)).

    A best cut value at or below ``tol.bound_floor`` is reported as 0.
    Cuts are evaluated concurrently when ``workers`` > 1; per_cut is always
    in cut bitmask order.
    """
    s = as_density(s)
    cuts = enumerate_cuts(s.n)
    if workers > 1 and len(cuts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_cut = list(pool.map(lambda c: cut_bounds(s, c, tol), cuts))
    else:
        per_cut = [cut_bounds(s, c, tol) for c in cuts]
    best = max(c.best for c in per_cut)
    if best <= tol.bound_floor:
        return 0.0, per_cut
    return max(0.0, cut_prefactor(s.n) * best), per_cut


def subset_purity_sum(s: AnyState) -> float:
    """sum over all proper nonempty subsets alpha of Tr rho_alpha^2."""
    return sum(purity(partial_trace(s, alpha)) for alpha in enumerate_subsets(s.n))


def _floored_sqrt(plus: float, minus: float, tol: Tolerances) -> float:
    """sqrt(plus - minus); zero when the difference is rounding of the terms."""
    radicand = plus - minus
    if radicand <= tol.noise_floor * max(abs(plus), abs(minus), 1.0):
        return 0.0
    return sqrt(radicand)


def bounds_eq13(s: AnyState, tol: Tolerances = DEFAULT_TOLERANCES) -> Tuple[float, float]:
    """Purity sandwich (lower, upper) on C_N.

    lower = sqrt(max(0, (4 - 2^(3-N)) Tr rho^2 - 2^(2-N) S))
    upper = sqrt(2^(2-N) ((2^N - 2) - S)), S the subset purity sum.
    Radicands within ``tol.noise_floor`` of their terms count as zero.
    """
    s = as_density(s)
    n = s.n
    total = 2.0 ** (2 - n) * subset_purity_sum(s)
    lower = _floored_sqrt((4.0 - 2.0 ** (3 - n)) * purity(s.rho), total, tol)
    upper = _floored_sqrt(2.0 ** (2 - n) * (2 ** n - 2), total, tol)
    return lower, upper


def lower_eq13(s: AnyState, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    return bounds_eq13(s, tol)[0]


def upper_eq14(s: AnyState, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """sum_i lambda_i C_N(|psi_i>) over the spectral decomposition of rho.

    Eigenvalues at or below ``tol.eig_cutoff`` are skipped. Inside a
    degenerate eigenspace the Jacobi basis is used as returned.
    """
    s = as_density(s)
    eig = hermitian_eig(s.rho, tol)
    total = 0.0
    for k, lam in enumerate(eig.eigenvalues):
        if lam <= tol.eig_cutoff:
            break
        psi = pure_state(s.dims, eig.eigenvectors[:, k], tol)
        total += lam * pure_cn(psi)
    return total


def report(s: AnyState, tol: Tolerances = DEFAULT_TOLERANCES,
           workers: int = 1) -> BoundReport:
    """Every bound for ``s`` and the entanglement verdict."""
    s = as_density(s)
    lower12, per_cut = lower_theorem2(s, tol, workers)
    lower13, upper13 = bounds_eq13(s, tol)
    upper14 = upper_eq14(s, tol)
    best_lower = max(lower12, lower13)
    best_upper = min(upper13, upper14)
    if best_lower > best_upper + 1e-8:
        logger.warning('lower bound {:.10g} exceeds upper bound {:.10g}',
                       best_lower, best_upper)
    return BoundReport(
        dims=list(s.dims), per_cut=per_cut,
        lower_eq12=lower12, lower_eq13=lower13,
        upper_eq13=upper13, upper_eq14=upper14,
        best_lower=best_lower, best_upper=best_upper,
        entangled=best_lower > tol.verdict,
    )


# =============================================================================
# Text rendering
# =============================================================================

def format_report(rep: BoundReport) -> str:
    """Aligned human-readable rendering of a BoundReport."""
    widths = [12, 4, 4, 11, 11, 11, 11, 11, 11, 11]
    hdr = ['Cut', 'M', 'N', '||T_A||', '||R||', '||C||', '||T||',
           'B1', 'B2', 'B3']
    lines = [f"  State dims: {' x '.join(map(str, rep.dims))}", '',
             '  ' + ''.join(h.ljust(w) for h, w in zip(hdr, widths)),
             '  ' + '-' * sum(widths)]
    for c in rep.per_cut:
        row = [c.cut.label(), str(c.m), str(c.n_big)]
        row += [f'{v:.6f}' for v in (c.ppt_norm, c.realign_norm, c.corr_norm,
                                     c.t_norm, c.b1, c.b2, c.b3)]
        lines.append('  ' + ''.join(v.ljust(w) for v, w in zip(row, widths)))
    lines.append('  ' + '-' * sum(widths))
    summary = [
        ('Lower bound (cuts)', rep.lower_eq12),
        ('Lower bound (purity)', rep.lower_eq13),
        ('Upper bound (purity)', rep.upper_eq13),
        ('Upper bound (spectral)', rep.upper_eq14),
        ('Best lower bound', rep.best_lower),
        ('Best upper bound', rep.best_upper),
    ]
    lines += [f'  {label:<24}{value:.10f}' for label, value in summary]
    verdict = 'ENTANGLED' if rep.entangled else 'not detected'
    lines.append(f'  {"Verdict":<24}{verdict}')
    return '\n'.join(lines)
