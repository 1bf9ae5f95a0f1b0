"""Closed-form metrics for the N-copy averaged Bell-state analyzer.

For a psi+ dual-rail input with per-copy reflectivities eta^H_k (horizontal
analyzer) and eta^V_k (vertical analyzer), the post-selected output overlap
with the ideal analyzer's output depends only on the four sums

    sh = sum_k sqrt(eta^H_k)      shc = sum_k sqrt(1 - eta^H_k)
    sv = sum_k sqrt(eta^V_k)      svc = sum_k sqrt(1 - eta^V_k)

These expressions reproduce the full Fock-space simulation to machine
precision and make wide parameter sweeps cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ReflectivityDraw:
    """One set of per-copy reflectivities for the two analyzer layers."""

    eta_h: tuple[float, ...]
    eta_v: tuple[float, ...]

    def __post_init__(self):
        if len(self.eta_h) != len(self.eta_v) or not self.eta_h:
            raise ValueError("eta_h and eta_v must be equal-length, non-empty tuples")
        for eta in self.eta_h + self.eta_v:
            if not 0.0 <= eta <= 1.0:
                raise ValueError(f"reflectivity {eta} outside [0, 1]")

    @property
    def n_copies(self) -> int:
        return len(self.eta_h)


def _root_sums(draw: ReflectivityDraw) -> tuple[float, float, float, float]:
    sh = sum(math.sqrt(e) for e in draw.eta_h)
    shc = sum(math.sqrt(1.0 - e) for e in draw.eta_h)
    sv = sum(math.sqrt(e) for e in draw.eta_v)
    svc = sum(math.sqrt(1.0 - e) for e in draw.eta_v)
    return sh, shc, sv, svc


def bsm_fidelity_closed(draw: ReflectivityDraw) -> float:
    """Unnormalized overlap |<target|out>|^2 of the averaged analyzer.

    Equals 4*eta*(1-eta) for a single copy with eta_h = eta_v = eta, and 1 at
    the balanced point eta = 1/2.
    """
    sh, shc, sv, svc = _root_sums(draw)
    n = draw.n_copies
    return (sh * svc + shc * sv) ** 2 / n**4


def bsm_psuccess_closed(draw: ReflectivityDraw) -> float:
    """Probability that both photons survive ancilla post-selection.

    Identically 1 for a single copy, whatever the reflectivities.
    """
    sh, shc, sv, svc = _root_sums(draw)
    n = draw.n_copies
    return (sh**2 + shc**2) * (sv**2 + svc**2) / n**4


def bsm_fnorm_closed(draw: ReflectivityDraw) -> float:
    """Conditional fidelity: overlap renormalized by the success probability.

    Bounded by 1 (Cauchy-Schwarz on the root sums).
    """
    sh, shc, sv, svc = _root_sums(draw)
    num = (sh * svc + shc * sv) ** 2
    den = (sh**2 + shc**2) * (sv**2 + svc**2)
    return num / den
