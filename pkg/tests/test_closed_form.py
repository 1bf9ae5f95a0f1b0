"""Tests for the analytic Bell-analyzer expressions.

The expanded pairwise-sum forms below are transcribed term by term for each
copy count (the five-copy pair set is the symmetric one: every unordered pair
exactly once) and pin the general sum-of-roots implementation.
"""

import math

import numpy as np
import pytest

from avgfusion.closed_form import (
    ReflectivityDraw,
    bsm_fidelity_closed,
    bsm_fnorm_closed,
    bsm_psuccess_closed,
)

from avgfusion.averaging import build_averaged_network, postselect_vacuum_ancilla, run_averaged
from avgfusion.fock import norm_sq
from avgfusion.interferometers import bsm_matrix
from avgfusion.metrics import bell_state, fidelity
from avgfusion.sweep import _bsm_target


def _pair_terms(etas, pairs):
    total = 0.0
    for i, j in pairs:
        total += math.sqrt(1 - etas[i - 1]) * math.sqrt(1 - etas[j - 1])
        total += math.sqrt(etas[i - 1]) * math.sqrt(etas[j - 1])
    return total


def psuccess_two_copies(eta_h, eta_v):
    def bracket(e):
        return 1 + math.sqrt(1 - e[0]) * math.sqrt(1 - e[1]) + math.sqrt(e[0]) * math.sqrt(e[1])

    return bracket(eta_h) * bracket(eta_v) / 4


def psuccess_three_copies(eta_h, eta_v):
    pairs = [(1, 2), (1, 3), (2, 3)]
    return (3 + 2 * _pair_terms(eta_h, pairs)) * (3 + 2 * _pair_terms(eta_v, pairs)) / 81


def psuccess_four_copies(eta_h, eta_v):
    pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    return (2 + _pair_terms(eta_h, pairs)) * (2 + _pair_terms(eta_v, pairs)) / 64


def psuccess_five_copies(eta_h, eta_v):
    pairs = [
        (1, 2), (1, 3), (1, 4), (1, 5), (2, 3),
        (2, 4), (2, 5), (3, 4), (3, 5), (4, 5),
    ]
    return (5 + 2 * _pair_terms(eta_h, pairs)) * (5 + 2 * _pair_terms(eta_v, pairs)) / 625


EXPANDED_FORMS = {
    2: psuccess_two_copies,
    3: psuccess_three_copies,
    4: psuccess_four_copies,
    5: psuccess_five_copies,
}


def test_reflectivity_draw_validation():
    ReflectivityDraw((0.5, 0.5), (0.4, 0.6))
    with pytest.raises(ValueError):
        ReflectivityDraw((0.5,), (0.5, 0.5))
    with pytest.raises(ValueError):
        ReflectivityDraw((1.2,), (0.5,))
    with pytest.raises(ValueError):
        ReflectivityDraw((), ())


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_balanced_point_is_perfect(n):
    draw = ReflectivityDraw((0.5,) * n, (0.5,) * n)
    assert bsm_fidelity_closed(draw) == pytest.approx(1.0, abs=1e-12)
    assert bsm_psuccess_closed(draw) == pytest.approx(1.0, abs=1e-12)
    assert bsm_fnorm_closed(draw) == pytest.approx(1.0, abs=1e-12)


def test_single_copy_success_probability_is_always_one():
    rng = np.random.default_rng(31)
    for _ in range(50):
        draw = ReflectivityDraw((float(rng.uniform()),), (float(rng.uniform()),))
        assert bsm_psuccess_closed(draw) == pytest.approx(1.0, abs=1e-12)


def test_single_copy_fidelity_equal_reflectivities():
    for eta in (0.1, 0.35, 0.5, 0.72, 0.9):
        draw = ReflectivityDraw((eta,), (eta,))
        expected = 4 * eta * (1 - eta)
        assert bsm_fidelity_closed(draw) == pytest.approx(expected, abs=1e-12)
        assert bsm_fnorm_closed(draw) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_general_form_matches_expanded_forms(n):
    rng = np.random.default_rng(100 + n)
    expanded = EXPANDED_FORMS[n]
    for _ in range(1000):
        eta_h = tuple(rng.uniform(0, 1, size=n))
        eta_v = tuple(rng.uniform(0, 1, size=n))
        draw = ReflectivityDraw(eta_h, eta_v)
        assert bsm_psuccess_closed(draw) == pytest.approx(expanded(eta_h, eta_v), abs=1e-12)


def test_symmetry_under_copy_permutation_and_layer_swap():
    rng = np.random.default_rng(55)
    for _ in range(25):
        eta_h = tuple(rng.uniform(0, 1, size=3))
        eta_v = tuple(rng.uniform(0, 1, size=3))
        draw = ReflectivityDraw(eta_h, eta_v)
        shuffled = ReflectivityDraw(eta_h[::-1], (eta_v[1], eta_v[2], eta_v[0]))
        swapped = ReflectivityDraw(eta_v, eta_h)
        for fn in (bsm_fidelity_closed, bsm_psuccess_closed, bsm_fnorm_closed):
            assert fn(draw) == pytest.approx(fn(shuffled), abs=1e-12)
            assert fn(draw) == pytest.approx(fn(swapped), abs=1e-12)


def test_normalized_form_bounded_by_one():
    rng = np.random.default_rng(77)
    for _ in range(200):
        n = int(rng.integers(1, 6))
        draw = ReflectivityDraw(tuple(rng.uniform(0, 1, size=n)), tuple(rng.uniform(0, 1, size=n)))
        assert bsm_fnorm_closed(draw) <= 1.0 + 1e-12


def simulate_bsm(draw):
    copies = [bsm_matrix(eh, ev) for eh, ev in zip(draw.eta_h, draw.eta_v)]
    net = build_averaged_network(copies)
    kept = postselect_vacuum_ancilla(run_averaged(net, bell_state("psi+")), net.layout)
    return fidelity(kept, _bsm_target()), norm_sq(kept)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_closed_forms_match_full_simulation(n):
    rng = np.random.default_rng(200 + n)
    for _ in range(10):
        draw = ReflectivityDraw(
            tuple(rng.uniform(0.1, 0.9, size=n)), tuple(rng.uniform(0.1, 0.9, size=n))
        )
        f_sim, p_sim = simulate_bsm(draw)
        assert f_sim == pytest.approx(bsm_fidelity_closed(draw), abs=1e-10)
        assert p_sim == pytest.approx(bsm_psuccess_closed(draw), abs=1e-10)
        assert f_sim / p_sim == pytest.approx(bsm_fnorm_closed(draw), abs=1e-10)


def test_mean_normalized_fidelity_improves_with_copies():
    rng = np.random.default_rng(404)
    m = 0.3
    means = []
    for n in (1, 2, 3):
        values = []
        for _ in range(400):
            draw = ReflectivityDraw(
                tuple(rng.uniform(0.5 - m, 0.5 + m, size=n)),
                tuple(rng.uniform(0.5 - m, 0.5 + m, size=n)),
            )
            values.append(bsm_fnorm_closed(draw))
        means.append(np.mean(values))
    assert means[0] < means[1] < means[2]
