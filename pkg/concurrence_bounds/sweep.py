"""White-noise state families, parameter sweeps and threshold searches."""

import csv
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import timedelta
from typing import Callable, List, Optional, Sequence, TextIO

import humanize
import numpy as np

from concurrence_bounds.bounds import lower_eq13, lower_theorem2, report
from concurrence_bounds.config import DEFAULT_TOLERANCES, ScanConfig, Tolerances
from concurrence_bounds.errors import (
    FamilyError, GridError, NeverPositiveError, NoCrossingError,
)
from concurrence_bounds.log import logger
from concurrence_bounds.models import CSV_HEADER, SweepRow
from concurrence_bounds.qstate import (
    MultipartiteState, dct_state, ghz, product_state, white_noise_mix,
)
from concurrence_bounds.statefile import load_state

FAMILIES = ('ghz', 'dct', 'product', 'file')
BOUND_NAMES = ('eq12', 'eq13')

# lam0p dominant; lower bound 1/3 at x = 1 and detection from x = 3/7
DEFAULT_DCT_WEIGHTS = (1 / 2, 0.0, 1 / 12, 1 / 12, 1 / 12)


def _elapsed(start: float) -> str:
    return humanize.precisedelta(timedelta(seconds=time.perf_counter() - start),
                                 minimum_unit='milliseconds')


@dataclass(frozen=True)
class StateFamily:
    """rho(x) = (1-x)/D I + x base, for x in [0, 1]."""
    name: str
    base: MultipartiteState

    def at(self, x: float) -> MultipartiteState:
        return white_noise_mix(self.base, x)


def build_family(name: str, n: int = 3, weights: Optional[Sequence[float]] = None,
                 path=None, tol: Tolerances = DEFAULT_TOLERANCES) -> StateFamily:
    """Construct a named family.

    ``ghz`` and ``product`` use ``n`` qubits, ``dct`` takes the five weights
    (lam0p, lam0m, lam1, lam2, lam3), ``file`` reads ``path``.
    """
    if name == 'ghz':
        return StateFamily(f'ghz{n}', ghz(n).density())
    if name == 'product':
        return StateFamily(f'product{n}', product_state((2,) * n).density())
    if name == 'dct':
        w = list(DEFAULT_DCT_WEIGHTS if weights is None else weights)
        if len(w) != 5:
            raise FamilyError(f'dct family needs 5 weights, got {len(w)}')
        return StateFamily('dct', dct_state(w[0], w[1], w[2:], tol))
    if name == 'file':
        if path is None:
            raise FamilyError('file family needs a state file path')
        return StateFamily(str(path), load_state(path, tol))
    raise FamilyError(f'unknown state family {name!r}; expected one of {", ".join(FAMILIES)}')


# =============================================================================
# Sweeps
# =============================================================================

def grid(xmin: float, xmax: float, steps: int) -> List[float]:
    """steps + 1 uniformly spaced points from xmin to xmax inclusive."""
    if not 0.0 <= xmin < xmax <= 1.0:
        raise GridError(f'need 0 <= xmin < xmax <= 1, got xmin={xmin}, xmax={xmax}')
    if steps < 2:
        raise GridError(f'need at least 2 steps, got {steps}')
    return np.linspace(xmin, xmax, steps + 1).tolist()


def sweep_row(s: MultipartiteState, x: float,
              tol: Tolerances = DEFAULT_TOLERANCES) -> SweepRow:
    rep = report(s, tol)
    return SweepRow(
        x=x,
        lower_eq12=rep.lower_eq12,
        lower_eq13=rep.lower_eq13,
        upper_eq13=rep.upper_eq13,
        upper_eq14=rep.upper_eq14,
        b1_max=max(c.b1 for c in rep.per_cut),
        b2_max=max(c.b2 for c in rep.per_cut),
        b3_max=max(c.b3 for c in rep.per_cut),
    )


def scan(family: StateFamily, xs: Sequence[float],
         tol: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> List[SweepRow]:
    """Evaluate every grid point; rows come back in grid order."""
    start = time.perf_counter()

    def evaluate(x: float) -> SweepRow:
        row = sweep_row(family.at(x), x, tol)
        logger.debug('{} x={:.6f}: lower={:.6g}', family.name, x, row.lower_eq12)
        return row

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(evaluate, xs))
    else:
        rows = [evaluate(x) for x in xs]
    logger.info('scanned {} points of {} in {}', len(rows), family.name, _elapsed(start))
    return rows


def write_csv(rows: Sequence[SweepRow], out: TextIO, digits: int = 12) -> None:
    """Header plus one record per row, numbers to ``digits`` significant digits."""
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([f'{v:.{digits}g}' for v in row.values()])


# =============================================================================
# Threshold and crossover searches
# =============================================================================

def lower_bound_at(family: StateFamily, x: float, bound: str,
                   tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """The named multipartite lower bound of the family at ``x``."""
    s = family.at(x)
    if bound == 'eq12':
        return lower_theorem2(s, tol)[0]
    if bound == 'eq13':
        return lower_eq13(s, tol)
    raise ValueError(f'unknown bound {bound!r}; expected one of {", ".join(BOUND_NAMES)}')


def _bisect(f: Callable[[float], bool], lo: float, hi: float, accuracy: float) -> float:
    """Midpoint of the final bracket; f(lo) is False and f(hi) is True."""
    while hi - lo > accuracy:
        mid = 0.5 * (lo + hi)
        if f(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def find_threshold(family: StateFamily, bound: str,
                   tol: Tolerances = DEFAULT_TOLERANCES,
                   cfg: Optional[ScanConfig] = None) -> float:
    """Smallest x in [0, 1] where the named lower bound exceeds tol.verdict.

    The bound is sampled on a coarse grid first; a decrease between grid
    points is logged since bisection assumes the bound is monotone in x.
    """
    cfg = cfg or ScanConfig()
    start = time.perf_counter()
    xs = grid(0.0, 1.0, cfg.monotonic_grid)
    values = [lower_bound_at(family, x, bound, tol) for x in xs]
    for k in range(len(xs) - 1):
        if values[k + 1] < values[k] - 1e-12:
            logger.warning('{} {} bound is not monotone: {:.6g} at x={:.4f}, {:.6g} at x={:.4f}',
                           family.name, bound, values[k], xs[k], values[k + 1], xs[k + 1])
            break

    positive = [v > tol.verdict for v in values]
    if not any(positive):
        raise NeverPositiveError(f'{bound} lower bound is never positive on [0, 1] for {family.name}')
    first = positive.index(True)
    if first == 0:
        return 0.0

    x_star = _bisect(lambda x: lower_bound_at(family, x, bound, tol) > tol.verdict,
                     xs[first - 1], xs[first], cfg.threshold_accuracy)
    logger.info('{} {} threshold {:.6f} found in {}', family.name, bound, x_star, _elapsed(start))
    return x_star


def find_crossover(family: StateFamily, tol: Tolerances = DEFAULT_TOLERANCES,
                   cfg: Optional[ScanConfig] = None) -> float:
    """x where the cut-based bound drops below the purity bound.

    Looks for the first grid interval on which lower_eq12 - lower_eq13 goes
    from positive to non-positive and bisects inside it.
    """
    cfg = cfg or ScanConfig()
    start = time.perf_counter()

    def gap(x: float) -> float:
        return lower_bound_at(family, x, 'eq12', tol) - lower_bound_at(family, x, 'eq13', tol)

    xs = grid(0.0, 1.0, cfg.monotonic_grid)
    gaps = [gap(x) for x in xs]
    for k in range(len(xs) - 1):
        if gaps[k] > tol.verdict and gaps[k + 1] <= 0.0:
            x_star = _bisect(lambda x: gap(x) <= 0.0, xs[k], xs[k + 1], cfg.threshold_accuracy)
            logger.info('{} crossover {:.6f} found in {}', family.name, x_star, _elapsed(start))
            return x_star
    raise NoCrossingError(f'eq12 and eq13 lower bounds do not cross on [0, 1] for {family.name}')
