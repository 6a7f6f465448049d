"""Tests for concurrence_bounds.bounds module."""
from functools import reduce
from math import sqrt

import numpy as np
import pytest

from concurrence_bounds.bounds import (
    b1, b2, b3, bounds_eq13, cut_bounds, cut_prefactor, format_report,
    lower_eq13, lower_theorem2, pure_c2, pure_cn, report, subset_purity_sum,
    upper_eq14,
)
from concurrence_bounds.config import Tolerances
from concurrence_bounds.errors import PartitionError
from concurrence_bounds.linalg import purity
from concurrence_bounds.partition import Cut, enumerate_cuts
from concurrence_bounds.qstate import (
    apply_unitary, bell_state, dct_state, ghz, local_unitary, partial_trace, product_state,
    pure_state, random_density, random_product_mixture, random_pure_state, validate,
    white_noise_mix,
)

BELL_CUT = Cut((0,), (1,), 2)
GHZ_CUT = Cut((0,), (1, 2), 3)
DCT_WEIGHTS = (1 / 2, 0.0, [1 / 12, 1 / 12, 1 / 12])


def _noisy_ghz(x):
    return white_noise_mix(ghz(3), x)


# =============================================================================
# Pure-state concurrence
# =============================================================================

def test_pure_c2_bell():
    assert pure_c2(bell_state(), BELL_CUT) == pytest.approx(1.0, abs=1e-12)


def test_pure_c2_product_is_zero():
    assert pure_c2(product_state([2, 3]), BELL_CUT) == pytest.approx(0.0, abs=1e-12)


def test_pure_cn_ghz():
    assert pure_cn(ghz(3)) == pytest.approx(sqrt(1.5), abs=1e-12)


def test_pure_cn_bell_equals_c2():
    assert pure_cn(bell_state()) == pytest.approx(1.0, abs=1e-12)


def test_pure_cn_product_is_zero():
    assert pure_cn(product_state([2, 2, 2, 2])) == pytest.approx(0.0, abs=1e-7)


def test_pure_c2_cut_mismatch():
    with pytest.raises(PartitionError):
        pure_c2(ghz(3), BELL_CUT)


# =============================================================================
# Per-cut bounds
# =============================================================================

def test_bell_bounds_are_exact():
    cb = cut_bounds(bell_state(), BELL_CUT)
    assert cb.b1 == pytest.approx(1.0, abs=1e-9)
    assert cb.b2 == pytest.approx(1.0, abs=1e-9)
    assert cb.b3 == pytest.approx(1.0, abs=1e-9)
    assert cb.corr_norm == pytest.approx(1.5, abs=1e-9)
    assert (cb.m, cb.n_big, cb.swapped) == (2, 2, False)


def test_single_bound_views_agree():
    s = _noisy_ghz(0.6)
    cb = cut_bounds(s, GHZ_CUT)
    assert (b1(s, GHZ_CUT), b2(s, GHZ_CUT), b3(s, GHZ_CUT)) == (cb.b1, cb.b2, cb.b3)


@pytest.mark.parametrize('x', [0.3, 0.5, 0.8, 1.0])
def test_noisy_ghz_b1_closed_form(x):
    cb = cut_bounds(_noisy_ghz(x), GHZ_CUT)
    assert cb.ppt_norm == pytest.approx(0.75 + 1.25 * x, abs=1e-9)
    assert cb.b1 == pytest.approx((5 * x - 1) / 4, abs=1e-9)
    assert cb.b2 <= cb.b1 + 1e-9
    assert cb.b3 <= cb.b1 + 1e-9


def test_larger_side_a_is_swapped():
    s = _noisy_ghz(0.5)
    cb = cut_bounds(s, Cut((0, 1), (2,), 3))
    assert cb.swapped
    assert (cb.m, cb.n_big) == (2, 4)
    assert cb.b1 == pytest.approx(0.375, abs=1e-9)


def test_swapped_keeps_original_side_purities():
    rng = np.random.default_rng(21)
    s = random_density([2, 3, 2], rng)
    cb = cut_bounds(s, Cut((0, 1), (2,), 3))
    assert cb.swapped
    assert cb.purity_a == pytest.approx(purity(partial_trace(s, [0, 1])), abs=1e-12)
    assert cb.purity_b == pytest.approx(purity(partial_trace(s, [2])), abs=1e-12)


def test_cut_bounds_mismatch():
    with pytest.raises(PartitionError):
        cut_bounds(ghz(3), BELL_CUT)


# =============================================================================
# Multipartite lower bound
# =============================================================================

def test_prefactor():
    assert cut_prefactor(2) == 1.0
    assert cut_prefactor(3) == 1.0
    assert cut_prefactor(5) == pytest.approx(0.5)


def test_lower_theorem2_noisy_ghz_half():
    value, per_cut = lower_theorem2(_noisy_ghz(0.5))
    assert value == pytest.approx(0.375, abs=1e-9)
    assert [c.cut for c in per_cut] == enumerate_cuts(3)


@pytest.mark.parametrize('x', [0.0, 0.1, 0.2])
def test_lower_theorem2_undetected_below_threshold(x):
    value, _ = lower_theorem2(_noisy_ghz(x))
    assert value == pytest.approx(0.0, abs=1e-9)


def test_lower_theorem2_workers_match_serial():
    rng = np.random.default_rng(22)
    s = random_density([2, 2, 2, 2], rng, rank=2)
    serial, cuts_a = lower_theorem2(s)
    parallel, cuts_b = lower_theorem2(s, workers=4)
    assert parallel == serial
    assert cuts_a == cuts_b


def test_dct_lower_bound_at_full_weight():
    s = dct_state(*DCT_WEIGHTS)
    value, per_cut = lower_theorem2(s)
    assert value == pytest.approx(1 / 3, abs=1e-9)
    assert all(c.b1 == pytest.approx(1 / 3, abs=1e-9) for c in per_cut)


def test_dct_cut_bound_beats_purity_bound():
    # cut bound fires above x = 3/7, purity bound stays zero
    for x in (0.5, 0.6, 0.7, 0.8):
        s = white_noise_mix(dct_state(*DCT_WEIGHTS), x)
        assert lower_theorem2(s)[0] > 1e-6
        assert lower_eq13(s) == 0.0


def test_separable_mixtures_not_detected():
    rng = np.random.default_rng(23)
    for _ in range(10):
        s = random_product_mixture([2, 2, 2], rng)
        assert lower_theorem2(s)[0] <= 1e-9
        assert lower_eq13(s) <= 1e-9


# =============================================================================
# Purity sandwich and spectral upper bound
# =============================================================================

@pytest.mark.parametrize('x', np.linspace(0.0, 1.0, 11).tolist())
def test_eq13_closed_forms_on_noisy_ghz(x):
    lower, upper = bounds_eq13(_noisy_ghz(x))
    assert lower ** 2 == pytest.approx(max(0.0, (9 * x * x - 3) / 4), abs=1e-9)
    assert upper ** 2 == pytest.approx((15 - 3 * x * x) / 8, abs=1e-9)


def test_subset_purity_sum_noisy_ghz():
    x = 0.4
    assert subset_purity_sum(_noisy_ghz(x)) == pytest.approx(9 / 4 + 3 * x * x / 4, abs=1e-12)


def test_maximally_mixed_upper_bounds():
    s = validate([2, 2, 2], np.eye(8) / 8)
    lower, upper = bounds_eq13(s)
    assert lower == 0.0
    assert upper == pytest.approx(sqrt(15 / 8), abs=1e-9)
    assert upper_eq14(s) == pytest.approx(0.0, abs=1e-9)


def test_bell_purity_bounds_collapse():
    lower, upper = bounds_eq13(bell_state())
    assert lower == pytest.approx(1.0, abs=1e-9)
    assert upper == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize('dims', [(2, 2, 2), (2, 3, 2), (2, 2, 2, 2)])
def test_pure_state_collapse(dims):
    rng = np.random.default_rng(sum(dims))
    for _ in range(5):
        psi = random_pure_state(dims, rng)
        cn = pure_cn(psi)
        assert lower_eq13(psi) == pytest.approx(cn, abs=1e-9)
        assert upper_eq14(psi) == pytest.approx(cn, abs=1e-9)


def test_spectral_bound_not_above_purity_bound():
    rng = np.random.default_rng(24)
    for _ in range(10):
        s = random_density([2, 2, 2], rng, rank=3)
        assert upper_eq14(s) <= bounds_eq13(s)[1] + 1e-9


# =============================================================================
# Reports
# =============================================================================

def test_report_ghz_entangled():
    rep = report(ghz(3))
    assert rep.entangled
    assert rep.best_lower >= 1.0
    assert rep.lower_eq13 == pytest.approx(sqrt(1.5), abs=1e-9)
    assert rep.upper_eq13 == pytest.approx(sqrt(1.5), abs=1e-9)
    assert rep.best_lower <= rep.best_upper + 1e-9


def test_report_noisy_ghz_undetected():
    rep = report(_noisy_ghz(0.1))
    assert not rep.entangled
    assert rep.best_lower == pytest.approx(0.0, abs=1e-9)


def test_report_product_undetected():
    rep = report(product_state([2, 2, 2]))
    assert not rep.entangled
    assert rep.best_upper == pytest.approx(0.0, abs=1e-6)


def test_report_local_unitary_invariance():
    rng = np.random.default_rng(25)
    s = random_density([2, 2, 2], rng, rank=2)
    t = apply_unitary(s, local_unitary([2, 2, 2], rng))
    a, b = report(s), report(t)
    for field in ('lower_eq12', 'lower_eq13', 'upper_eq13', 'upper_eq14'):
        assert getattr(a, field) == pytest.approx(getattr(b, field), abs=1e-8)


def test_report_to_dict_mirrors_fields():
    data = report(bell_state()).to_dict()
    assert set(data) == {
        'dims', 'per_cut', 'lower_eq12', 'lower_eq13', 'upper_eq13',
        'upper_eq14', 'best_lower', 'best_upper', 'entangled',
    }
    assert data['per_cut'][0]['cut'] == {'side_a': [0], 'side_b': [1]}
    assert data['entangled'] is True


def test_format_report_lists_every_cut():
    text = format_report(report(_noisy_ghz(0.5)))
    assert 'State dims: 2 x 2 x 2' in text
    for label in ('0|1,2', '0,1|2', '0,2|1'):
        assert label in text
    assert 'ENTANGLED' in text


# =============================================================================
# Local-unitary invariance
# =============================================================================

@pytest.mark.parametrize('dims', [(2, 2, 2), (2, 3, 2)])
def test_cut_ingredients_local_unitary_invariant(dims):
    rng = np.random.default_rng(26)
    for _ in range(5):
        s = random_density(dims, rng, rank=int(rng.integers(1, 4)))
        t = apply_unitary(s, local_unitary(dims, rng))
        for cut in enumerate_cuts(len(dims)):
            a, b = cut_bounds(s, cut), cut_bounds(t, cut)
            for field in ('ppt_norm', 'realign_norm', 'corr_norm', 't_norm',
                          'purity_a', 'purity_b'):
                assert getattr(a, field) == pytest.approx(getattr(b, field), abs=1e-8), \
                    f'{cut.label()} {field}'


# =============================================================================
# Product states stay undetected
# =============================================================================

def _random_product_pure(rng, n):
    factors = [random_pure_state([2], rng).amplitudes for _ in range(n)]
    return pure_state([2] * n, reduce(np.kron, factors))


def test_product_pure_states_not_entangled():
    rng = np.random.default_rng(27)
    for k in range(50):
        rep = report(_random_product_pure(rng, 3))
        assert rep.entangled is False, f'sample {k}: best lower {rep.best_lower:.3e}'
        assert rep.lower_eq13 == 0.0
        assert rep.lower_eq12 == 0.0


def test_product_mixtures_report_zero():
    rng = np.random.default_rng(28)
    for _ in range(20):
        rep = report(random_product_mixture([2, 2, 2], rng))
        assert rep.best_lower == 0.0
        assert not rep.entangled


def test_floors_come_from_tolerances():
    s = _random_product_pure(np.random.default_rng(29), 3)
    unfloored = Tolerances(noise_floor=0.0, bound_floor=0.0)
    assert 0.0 <= lower_eq13(s, unfloored) < 1e-6
    assert 0.0 <= lower_theorem2(s, unfloored)[0] < 1e-6
    assert lower_eq13(s) == 0.0
    assert lower_theorem2(s)[0] == 0.0
