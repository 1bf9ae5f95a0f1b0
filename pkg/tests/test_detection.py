"""Tests for detection patterns, fusion outcomes, and pattern support."""

import math

import numpy as np
import pytest

from avgfusion.averaging import build_averaged_network, postselect_vacuum_ancilla, run_averaged
from avgfusion.detection import (
    BSM_PATTERNS,
    FUSION_PATTERNS,
    DetectionPattern,
    fusion_outcomes,
    pattern_support,
    project_pattern,
)
from avgfusion.fock import StateVec, norm_sq, tensor
from avgfusion.interferometers import fusion_gate
from avgfusion.metrics import bell_state, fidelity

SQRT_HALF = 1.0 / math.sqrt(2.0)


def fused_two_pair_state(eta_x, eta_y):
    """Two phi+ pairs through one fusion gate on the middle qubits' rails."""
    net = build_averaged_network([fusion_gate(eta_x, eta_y)], n_passthrough=4)
    raw = tensor(bell_state("phi+"), bell_state("phi+"))
    order = (2, 3, 4, 5, 0, 1, 6, 7)
    state = StateVec(8, {tuple(k[i] for i in order): a for k, a in raw.items()})
    return postselect_vacuum_ancilla(run_averaged(net, state), net.layout)


def test_detection_pattern_validation():
    DetectionPattern((0, 2), (1, 0))
    with pytest.raises(ValueError):
        DetectionPattern((0, 0), (1, 1))
    with pytest.raises(ValueError):
        DetectionPattern((0, 1), (1,))
    with pytest.raises(ValueError):
        DetectionPattern((0, 1), (1, -1))


def test_project_pattern_single_ket():
    residual, prob = project_pattern(StateVec.from_ket((1, 0, 0, 1)), DetectionPattern((0,), (1,)))
    assert prob == pytest.approx(1.0)
    assert residual.amplitude((0, 0, 1)) == pytest.approx(1.0)


def test_project_pattern_superposition():
    s = StateVec(2, {(1, 0): SQRT_HALF, (0, 1): SQRT_HALF})
    residual, prob = project_pattern(s, DetectionPattern((0,), (1,)))
    assert prob == pytest.approx(0.5)
    assert residual.amplitude((0,)) == pytest.approx(SQRT_HALF)
    assert norm_sq(residual) == pytest.approx(prob)


def test_project_pattern_rejects_out_of_range_mode():
    with pytest.raises(ValueError):
        project_pattern(StateVec.from_ket((1, 0)), DetectionPattern((5,), (1,)))


def test_project_pattern_idempotent_on_empty_pattern():
    s = StateVec(3, {(1, 0, 1): 0.6, (0, 1, 1): 0.8})
    residual, prob = project_pattern(s, DetectionPattern((), ()))
    assert prob == pytest.approx(norm_sq(s))
    for ket in s.kets():
        assert residual.amplitude(ket) == pytest.approx(s.amplitude(ket))


def test_perfect_fusion_pattern_probabilities():
    kept = fused_two_pair_state(0.5, 0.5)
    outcomes = fusion_outcomes(kept, (0, 1, 2, 3))
    assert set(outcomes) == set(FUSION_PATTERNS)
    for outcome in outcomes.values():
        assert outcome.probability == pytest.approx(0.125, abs=1e-12)
        assert norm_sq(outcome.residual) == pytest.approx(outcome.probability, abs=1e-12)


def test_perfect_fusion_residual_states():
    outcomes = fusion_outcomes(fused_two_pair_state(0.5, 0.5), (0, 1, 2, 3))
    for label, target in (("HH", "phi+"), ("VV", "phi+"), ("HV", "psi+"), ("VH", "psi+")):
        outcome = outcomes[label]
        conditional = fidelity(outcome.residual, bell_state(target)) / outcome.probability
        assert conditional == pytest.approx(1.0, abs=1e-12)


def test_parity_sum_constant_across_reflectivities():
    for eta_x in np.linspace(0.05, 0.95, 5):
        for eta_y in np.linspace(0.05, 0.95, 5):
            outcomes = fusion_outcomes(fused_two_pair_state(eta_x, eta_y), (0, 1, 2, 3))
            probs = {label: o.probability for label, o in outcomes.items()}
            assert sum(probs.values()) == pytest.approx(0.5, abs=1e-12)
            assert probs["HH"] == pytest.approx(probs["VV"], abs=1e-12)
            assert probs["HV"] == pytest.approx(probs["VH"], abs=1e-12)


def test_total_probability_over_all_patterns():
    """Every 2-photon count pattern on the rails, plus residual weights, sums to norm²."""
    kept = fused_two_pair_state(0.3, 0.8)
    total = 0.0
    from itertools import product

    for counts in product(range(3), repeat=4):
        if sum(counts) > 2:
            continue
        _, prob = project_pattern(kept, DetectionPattern((0, 1, 2, 3), counts))
        total += prob
    assert total == pytest.approx(norm_sq(kept), abs=1e-12)


def test_pattern_support_perfect_point():
    assert pattern_support("psi+") == {"ab", "cd"}
    assert pattern_support("psi-") == {"ad", "bc"}
    assert pattern_support("phi+") == {"a2", "b2", "c2", "d2"}
    assert pattern_support("phi-") == {"a2", "b2", "c2", "d2"}


def test_pattern_support_unbalanced():
    assert pattern_support("psi+", 0.3, 0.3) == {"ab", "cd", "ad", "bc"}
    assert pattern_support("phi+", 0.3, 0.3) == {"a2", "b2", "c2", "d2", "ac", "bd"}
    assert pattern_support("phi-", 0.3, 0.3) == {"a2", "b2", "c2", "d2", "ac", "bd"}
    for eta in (0.1, 0.25, 0.4, 0.45):
        assert pattern_support("psi-", eta, eta) == {"ad", "bc"}


def test_pattern_support_rejects_unknown_label():
    with pytest.raises(ValueError):
        pattern_support("omega+")


def test_bsm_patterns_cover_all_two_photon_coincidences():
    assert len(BSM_PATTERNS) == 10
    assert all(sum(counts) == 2 for counts in BSM_PATTERNS.values())
    assert len({counts for counts in BSM_PATTERNS.values()}) == 10
