"""Seeded Monte-Carlo sweeps over reflectivity noise, with CSV output.

Three experiments share one harness:

``fusion``
    N-copy averaged fusion gate acting on two dual-rail Bell pairs, with the
    spectator rails passed through. Records the HH-pattern overlap and
    probability, the conditional fidelity, the total success probability over
    all four patterns, and the gate-level trace distance to the balanced gate.
``bsm``
    N-copy averaged Bell-state analyzer fed a psi+ pair. Records overlap,
    success probability and conditional fidelity alongside their closed-form
    counterparts.
``trace-distance``
    Matrix-level only: trace distance between the mean of the sampled gate
    copies and the balanced fusion gate.

Every trial draws its reflectivities from an independent, deterministically
derived RNG stream keyed by (master seed, experiment, N, m index, trial), so
results do not depend on execution order or worker count.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cache

import numpy as np

from .averaging import build_averaged_network, postselect_vacuum_ancilla, run_averaged
from .closed_form import (
    ReflectivityDraw,
    bsm_fidelity_closed,
    bsm_fnorm_closed,
    bsm_psuccess_closed,
)
from .detection import fusion_outcomes
from .fock import StateVec, norm_sq, tensor
from .interferometers import bsm_matrix, effective_average, fusion_gate
from .metrics import bell_state, fidelity, normalized_fidelity, trace_distance

EXPERIMENTS = ("fusion", "bsm", "trace-distance")

_EXPERIMENT_IDS = {"fusion": 0, "bsm": 1, "trace-distance": 2}

METRIC_COLUMNS: dict[str, tuple[str, ...]] = {
    "fusion": ("F_HH", "P_HH", "F_HH_norm", "P_single", "trace_distance"),
    "bsm": ("F", "P_success", "F_norm", "F_closed", "P_success_closed", "F_norm_closed"),
    "trace-distance": ("trace_distance",),
}

#: Metric a quick-look plot of each experiment should show.
DEFAULT_PLOT_METRIC = {
    "fusion": "F_HH_norm",
    "bsm": "F_norm",
    "trace-distance": "trace_distance",
}

#: Worker-count override honored by run_sweep (results are unaffected).
THREADS_ENV_VAR = "AVGFUSION_THREADS"


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: an experiment evaluated on a grid of (N, m) cells."""

    experiment: str
    n_copies_list: tuple[int, ...]
    m_grid: tuple[float, ...]
    samples: int
    master_seed: int
    out_path: str | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}")
        if not self.n_copies_list or any(n < 1 for n in self.n_copies_list):
            raise ValueError(f"n_copies_list must be non-empty positive integers, got {self.n_copies_list}")
        if not self.m_grid or any(not 0.0 <= m <= 0.5 for m in self.m_grid):
            raise ValueError(f"m values must lie in [0, 0.5], got {self.m_grid}")
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")


@dataclass(frozen=True)
class TrialRecord:
    """Sampled reflectivities and computed metrics of a single trial."""

    experiment: str
    n_copies: int
    m: float
    trial: int
    etas: tuple[float, ...]
    metrics: dict[str, float]


@dataclass(frozen=True)
class CellSummary:
    """Per-(N, m) aggregate of a sweep: metric means and standard deviations."""

    experiment: str
    n_copies: int
    m: float
    samples: int
    mean: dict[str, float]
    std: dict[str, float]


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    trials: tuple[TrialRecord, ...]
    summaries: tuple[CellSummary, ...]

    def cell_trials(self, n_copies: int, m: float) -> tuple[TrialRecord, ...]:
        return tuple(t for t in self.trials if t.n_copies == n_copies and t.m == m)


def sample_reflectivity(rng: np.random.Generator, m: float) -> float:
    """Draw one reflectivity, uniform on [0.5 - m, 0.5 + m]."""
    if not 0.0 <= m <= 0.5:
        raise ValueError(f"noise half-width m must lie in [0, 0.5], got {m}")
    if m == 0.0:
        return 0.5
    return float(rng.uniform(0.5 - m, 0.5 + m))


def trial_rng(master_seed: int, experiment: str, n_copies: int, m_index: int, trial: int) -> np.random.Generator:
    """Independent RNG stream for one trial, stable under reordering.

    The stream is keyed by the cell coordinates rather than spawned
    sequentially, so any subset of trials can run in any order — or
    concurrently — and still draw identical values.
    """
    seq = np.random.SeedSequence(
        (master_seed, _EXPERIMENT_IDS[experiment], n_copies, m_index, trial)
    )
    return np.random.default_rng(seq)


@cache
def _fusion_input() -> StateVec:
    """Two dual-rail phi+ pairs, reordered to (fused rails, spectator rails).

    The raw tensor product lives on (H1,V1,H2,V2,H3,V3,H4,V4); the averaged
    network wants the four fused rails (H2,V2,H3,V3) first and the spectators
    (H1,V1,H4,V4) as passthrough.
    """
    pair = bell_state("phi+")
    raw = tensor(pair, pair)
    order = (2, 3, 4, 5, 0, 1, 6, 7)
    amp = {tuple(ket[i] for i in order): a for ket, a in raw.items()}
    return StateVec(8, amp)


@cache
def _bsm_target() -> StateVec:
    """Balanced-analyzer image of psi+ (up to global phase): (|0011> - |1100>)/sqrt(2)."""
    s = 1.0 / math.sqrt(2.0)
    return StateVec(4, {(0, 0, 1, 1): s, (1, 1, 0, 0): -s})


def run_fusion_trial(n_copies: int, m: float, trial: int, rng: np.random.Generator) -> TrialRecord:
    """One averaged-fusion trial on Bell⊗Bell with 4 passthrough modes."""
    eta_x = [sample_reflectivity(rng, m) for _ in range(n_copies)]
    eta_y = [sample_reflectivity(rng, m) for _ in range(n_copies)]
    copies = [fusion_gate(ex, ey) for ex, ey in zip(eta_x, eta_y)]
    net = build_averaged_network(copies, n_passthrough=4)
    kept = postselect_vacuum_ancilla(run_averaged(net, _fusion_input()), net.layout)
    outcomes = fusion_outcomes(kept, (0, 1, 2, 3))

    p_hh = outcomes["HH"].probability
    f_hh = fidelity(outcomes["HH"].residual, bell_state("phi+"))
    metrics = {
        "F_HH": f_hh,
        "P_HH": p_hh,
        "F_HH_norm": normalized_fidelity(f_hh, p_hh) if p_hh > 0 else 0.0,
        "P_single": sum(o.probability for o in outcomes.values()),
        "trace_distance": trace_distance(effective_average(copies), fusion_gate(0.5, 0.5)),
    }
    return TrialRecord("fusion", n_copies, m, trial, tuple(eta_x + eta_y), metrics)


def run_bsm_trial(n_copies: int, m: float, trial: int, rng: np.random.Generator) -> TrialRecord:
    """One averaged Bell-state-analyzer trial on a psi+ input."""
    eta_h = [sample_reflectivity(rng, m) for _ in range(n_copies)]
    eta_v = [sample_reflectivity(rng, m) for _ in range(n_copies)]
    copies = [bsm_matrix(eh, ev) for eh, ev in zip(eta_h, eta_v)]
    net = build_averaged_network(copies)
    kept = postselect_vacuum_ancilla(run_averaged(net, bell_state("psi+")), net.layout)

    p_success = norm_sq(kept)
    f = fidelity(kept, _bsm_target())
    draw = ReflectivityDraw(tuple(eta_h), tuple(eta_v))
    metrics = {
        "F": f,
        "P_success": p_success,
        "F_norm": normalized_fidelity(f, p_success),
        "F_closed": bsm_fidelity_closed(draw),
        "P_success_closed": bsm_psuccess_closed(draw),
        "F_norm_closed": bsm_fnorm_closed(draw),
    }
    return TrialRecord("bsm", n_copies, m, trial, tuple(eta_h + eta_v), metrics)


def run_trace_trial(n_copies: int, m: float, trial: int, rng: np.random.Generator) -> TrialRecord:
    """One matrix-level trial: distance of the copy average to the balanced gate."""
    eta_x = [sample_reflectivity(rng, m) for _ in range(n_copies)]
    eta_y = [sample_reflectivity(rng, m) for _ in range(n_copies)]
    copies = [fusion_gate(ex, ey) for ex, ey in zip(eta_x, eta_y)]
    td = trace_distance(effective_average(copies), fusion_gate(0.5, 0.5))
    return TrialRecord("trace-distance", n_copies, m, trial, tuple(eta_x + eta_y), {"trace_distance": td})


_TRIAL_FNS = {
    "fusion": run_fusion_trial,
    "bsm": run_bsm_trial,
    "trace-distance": run_trace_trial,
}


def _worker_count(max_workers: int | None) -> int:
    if max_workers is not None:
        return max(1, max_workers)
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from None


def run_sweep(cfg: SweepConfig, max_workers: int | None = None) -> SweepResult:
    """Run every (N, m, trial) job, aggregate per cell, optionally write CSV.

    Trials execute serially by default; set ``max_workers`` (or the
    AVGFUSION_THREADS environment variable) to run them on a thread pool.
    Aggregation always consumes results in trial order, so the output —
    including CSV bytes — is identical for any worker count.
    """
    trial_fn = _TRIAL_FNS[cfg.experiment]
    cells = [(n, mi, m) for n in cfg.n_copies_list for mi, m in enumerate(cfg.m_grid)]
    jobs = [(n, mi, m, t) for n, mi, m in cells for t in range(cfg.samples)]

    def one(job):
        n, mi, m, t = job
        return trial_fn(n, m, t, trial_rng(cfg.master_seed, cfg.experiment, n, mi, t))

    workers = _worker_count(max_workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            trials = list(pool.map(one, jobs))
    else:
        trials = [one(job) for job in jobs]

    columns = METRIC_COLUMNS[cfg.experiment]
    summaries = []
    for i, (n, _, m) in enumerate(cells):
        chunk = trials[i * cfg.samples : (i + 1) * cfg.samples]
        mean = {}
        std = {}
        for col in columns:
            values = np.array([t.metrics[col] for t in chunk])
            mean[col] = float(values.mean())
            std[col] = float(values.std(ddof=1)) if len(values) > 1 else 0.0
        summaries.append(CellSummary(cfg.experiment, n, m, cfg.samples, mean, std))

    result = SweepResult(cfg, tuple(trials), tuple(summaries))
    if cfg.out_path is not None:
        write_csv(result, cfg.out_path)
    return result


def _fmt(x: float) -> str:
    """Round-trip (17-significant-digit) float serialization."""
    return "%.17g" % x


def write_csv(result: SweepResult, path) -> None:
    """Write per-trial rows plus mean/std rows per cell (UTF-8, LF endings).

    Aggregate rows leave the trial and eta columns empty and set row_kind to
    ``mean`` or ``std``; trial rows set it to ``trial``.
    """
    cfg = result.config
    columns = METRIC_COLUMNS[cfg.experiment]
    header = ["experiment", "N", "m", "trial", "eta", *columns, "row_kind"]
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for i, summary in enumerate(result.summaries):
            chunk = result.trials[i * cfg.samples : (i + 1) * cfg.samples]
            for t in chunk:
                eta = ";".join(_fmt(e) for e in t.etas)
                row = [t.experiment, t.n_copies, _fmt(t.m), t.trial, eta]
                row += [_fmt(t.metrics[c]) for c in columns]
                writer.writerow(row + ["trial"])
            for kind, values in (("mean", summary.mean), ("std", summary.std)):
                row = [cfg.experiment, summary.n_copies, _fmt(summary.m), "", ""]
                row += [_fmt(values[c]) for c in columns]
                writer.writerow(row + [kind])
