"""Bell-state constructors and scalar figures of merit."""

from __future__ import annotations

import math
import warnings

import numpy as np

from .fock import StateVec, TransferMatrix, inner_product

BELL_LABELS = ("psi+", "psi-", "phi+", "phi-")

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

_BELL_KETS = {
    "psi+": (((1, 0, 0, 1), _INV_SQRT2), ((0, 1, 1, 0), _INV_SQRT2)),
    "psi-": (((1, 0, 0, 1), _INV_SQRT2), ((0, 1, 1, 0), -_INV_SQRT2)),
    "phi+": (((1, 0, 1, 0), _INV_SQRT2), ((0, 1, 0, 1), _INV_SQRT2)),
    "phi-": (((1, 0, 1, 0), _INV_SQRT2), ((0, 1, 0, 1), -_INV_SQRT2)),
}


def bell_state(label: str) -> StateVec:
    """Dual-rail Bell state on 4 modes (H1, V1, H2, V2).

    psi+/- = (|1001> +/- |0110>)/sqrt(2), phi+/- = (|1010> +/- |0101>)/sqrt(2).
    """
    try:
        kets = _BELL_KETS[label]
    except KeyError:
        raise ValueError(f"unknown Bell label {label!r}; expected one of {BELL_LABELS}") from None
    return StateVec(4, dict(kets))


def fidelity(state: StateVec, target: StateVec) -> float:
    """|<state|target>|^2 for a normalized target; state may be unnormalized."""
    return float(abs(inner_product(state, target)) ** 2)


def normalized_fidelity(f: float, p: float) -> float:
    """Fidelity conditioned on success: F/P.

    Values beyond 1 + 1e-9 indicate a numerical anomaly and are clamped with
    a warning; tiny float excursions above 1 are returned as-is.
    """
    if p <= 0.0:
        raise ValueError(f"success probability must be positive, got {p}")
    ratio = f / p
    if ratio > 1.0 + 1e-9:
        warnings.warn(f"normalized fidelity {ratio} exceeds 1; clamping", RuntimeWarning)
        return 1.0
    return ratio


def trace_distance(a: TransferMatrix, b: TransferMatrix) -> float:
    """Half the nuclear norm of (a - b): 0.5 * sum of singular values."""
    if a.dim != b.dim:
        raise ValueError(f"dimensions differ: {a.dim} vs {b.dim}")
    sv = np.linalg.svd(a.entries - b.entries, compute_uv=False)
    return float(0.5 * np.sum(sv))
