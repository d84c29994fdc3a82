"""Deterministic CSV sweeps for the payload-ratio and rate experiments.

Every Monte Carlo trial derives its own Philox substream from
(master seed, trial index), draws one geometry plus one NLOS realization,
and reuses them across the whole Rician-factor grid. Trials are
independent work items; with IRSKRON_WORKERS > 1 they run in a process
pool, and aggregation always walks records in trial order, so serial and
parallel runs produce byte-identical CSV output.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .beamform import EvalParams, adr, optimal_beamformers
from .channel import complex_normal, los_pair, rician_mix, sample_geometry, trial_rng
from .codec import (
    baseline_payload_bits,
    decode,
    encode,
    payload_bits,
    payload_ratio,
    quantize_factor,
)
from .config import ConfigError, ExperimentConfig
from .hosvd import ConvergenceError, correlation_fidelity

__all__ = [
    "TrialFailure",
    "TrialRecord",
    "ADR_CSV_HEADER",
    "PAYLOAD_CSV_HEADER",
    "run_payload_sweep",
    "run_adr_vs_k",
    "run_fixed_budget",
    "worker_count",
]


class TrialFailure(RuntimeError):
    """A Monte Carlo trial hit a numerical error; carries the trial index."""

    def __init__(self, trial: int, cause: Exception):
        super().__init__(f"trial {trial} failed: {cause}")
        self.trial = trial


PAYLOAD_CSV_HEADER = "config,p,dims,sum_n,payload_ratio,proposed_bits,baseline_bits"
ADR_CSV_HEADER = (
    "k_db,config,p,dims,bits,payload_bits,"
    "adr_baseline_cont,adr_baseline_quant,adr_proposed,fidelity_mean"
)

_WORKERS_ENV = "IRSKRON_WORKERS"


@dataclass(frozen=True)
class TrialRecord:
    """Per-trial outcome for one (Rician factor, factorization) cell."""

    trial: int
    k_db: float
    label: str
    adr_baseline_cont: float
    adr_baseline_quant: float
    adr_proposed: float
    fidelity: float
    payload_bits: int


def _fmt(x: float) -> str:
    return format(float(x), ".6g")


def _dims_str(dims) -> str:
    return "x".join(str(d) for d in dims)


def run_payload_sweep(cfg: ExperimentConfig) -> str:
    """Pure-arithmetic payload comparison, one CSV row per factorization."""
    cfg.validate()
    lines = [PAYLOAD_CSV_HEADER]
    for label, fac in cfg.factorizations:
        lines.append(
            ",".join(
                [
                    label,
                    str(fac.p),
                    _dims_str(fac.dims),
                    str(sum(fac.dims)),
                    _fmt(payload_ratio(fac)),
                    str(payload_bits(fac)),
                    str(baseline_payload_bits(cfg.n, cfg.baseline_bits)),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _adr_trial(cfg: ExperimentConfig, trial: int) -> list[TrialRecord]:
    """All (K, factorization) records for one Monte Carlo trial.

    One geometry and one NLOS draw per trial, shared across the K grid, so
    curves over K compare like against like.
    """
    try:
        return _adr_trial_inner(cfg, trial)
    except (ConvergenceError, FloatingPointError, np.linalg.LinAlgError) as exc:
        raise TrialFailure(trial, exc) from exc


def _adr_trial_inner(cfg: ExperimentConfig, trial: int) -> list[TrialRecord]:
    rng = trial_rng(cfg.seed, trial)
    geom = sample_geometry(rng, cfg.m_t, cfg.m_r, cfg.n_h, cfg.n_v)
    h_los, g_los = los_pair(geom)
    h_nlos = complex_normal(rng, h_los.shape)
    g_nlos = complex_normal(rng, g_los.shape)
    params = EvalParams(noise_variance=cfg.sigma2_b)

    records = []
    for k_db in cfg.k_db:
        k = 10.0 ** (k_db / 10.0)
        h = rician_mix(h_los, h_nlos, k)
        g = rician_mix(g_los, g_nlos, k)
        bf = optimal_beamformers(h, g, tol=cfg.tol, max_iter=cfg.max_iter)
        adr_cont = adr(h, g, bf.w, bf.q, bf.s_opt, params)
        _, s_quant = quantize_factor(bf.s_opt, cfg.baseline_bits)
        adr_quant = adr(h, g, bf.w, bf.q, s_quant, params)
        for label, fac in cfg.factorizations:
            msg = encode(bf.s_opt, fac, tol=cfg.tol, max_iter=cfg.max_iter)
            s_hat = decode(msg)
            records.append(
                TrialRecord(
                    trial=trial,
                    k_db=k_db,
                    label=label,
                    adr_baseline_cont=adr_cont,
                    adr_baseline_quant=adr_quant,
                    adr_proposed=adr(h, g, bf.w, bf.q, s_hat, params),
                    fidelity=correlation_fidelity(bf.s_opt, s_hat),
                    payload_bits=payload_bits(fac),
                )
            )
    return records


def worker_count() -> int:
    """Worker pool size from the IRSKRON_WORKERS env var (default 1)."""
    raw = os.environ.get(_WORKERS_ENV, "1")
    try:
        count = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{_WORKERS_ENV}={raw!r} is not an integer") from exc
    if count < 1:
        raise ConfigError(f"{_WORKERS_ENV} must be >= 1, got {count}")
    return count


def _collect_trials(cfg: ExperimentConfig) -> list[list[TrialRecord]]:
    workers = worker_count()
    trial_fn = partial(_adr_trial, cfg)
    if workers == 1:
        return [trial_fn(t) for t in range(cfg.trials)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(trial_fn, range(cfg.trials), chunksize=8))


def _aggregate_csv(cfg: ExperimentConfig, per_trial: list[list[TrialRecord]]) -> str:
    # Bucket in trial order; pool.map already preserves it.
    buckets: dict[tuple[float, str], list[TrialRecord]] = {
        (k_db, label): [] for k_db in cfg.k_db for label, _ in cfg.factorizations
    }
    for records in per_trial:
        for rec in records:
            buckets[(rec.k_db, rec.label)].append(rec)

    lines = [ADR_CSV_HEADER]
    for k_db in cfg.k_db:
        for label, fac in cfg.factorizations:
            recs = buckets[(k_db, label)]
            lines.append(
                ",".join(
                    [
                        _fmt(k_db),
                        label,
                        str(fac.p),
                        _dims_str(fac.dims),
                        _dims_str(fac.bits),
                        str(payload_bits(fac)),
                        _fmt(np.mean([r.adr_baseline_cont for r in recs])),
                        _fmt(np.mean([r.adr_baseline_quant for r in recs])),
                        _fmt(np.mean([r.adr_proposed for r in recs])),
                        _fmt(np.mean([r.fidelity for r in recs])),
                    ]
                )
            )
    return "\n".join(lines) + "\n"


def run_adr_vs_k(cfg: ExperimentConfig) -> str:
    """Rate-versus-Rician-factor sweep; returns the aggregated CSV text."""
    cfg.validate()
    return _aggregate_csv(cfg, _collect_trials(cfg))


def run_fixed_budget(cfg: ExperimentConfig) -> str:
    """Rate sweep under a hard feedback bit budget.

    The per-element baseline is forced to floor(budget / n) bits; every
    factorization must fit the budget (validated up front).
    """
    cfg.validate()
    forced = cfg.budget_bits // cfg.n
    if cfg.baseline_bits != forced:
        raise ConfigError(
            f"fixed-budget baseline must use {forced} bits "
            f"(budget {cfg.budget_bits} / n {cfg.n}), got {cfg.baseline_bits}"
        )
    return _aggregate_csv(cfg, _collect_trials(cfg))
