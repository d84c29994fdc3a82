"""Quick self-calibration checks runnable from the CLI.

Each check exercises one numerical pillar end to end on a small problem
and prints a single ok/FAIL line. Meant as a smoke test on new machines;
the pytest suite is the full verification.
"""

from __future__ import annotations

import numpy as np

from .beamform import adr, optimal_beamformers
from .channel import complex_normal, trial_rng
from .codec import FactorizationConfig, decode, encode, quantize_factor
from .hosvd import correlation_fidelity, factorize_phases
from .tensor import rank_one_tensor, tensorize, vectorize


def _random_phases(rng: np.random.Generator, n: int) -> np.ndarray:
    return np.exp(1j * rng.uniform(-np.pi, np.pi, n))


def _check_round_trip(rng) -> bool:
    y = complex_normal(rng, (60,))
    t = tensorize(y, [5, 4, 3])
    return bool(np.array_equal(vectorize(t), y))


def _check_kron_chain(rng) -> bool:
    factors = [_random_phases(rng, n) for n in (4, 3, 2)]
    chain = np.kron(np.kron(factors[2], factors[1]), factors[0])
    return bool(np.allclose(vectorize(rank_one_tensor(factors)), chain, atol=1e-14))


def _check_exact_recovery(rng) -> bool:
    factors = [_random_phases(rng, 8), _random_phases(rng, 8)]
    s = np.kron(factors[1], factors[0])
    est = factorize_phases(s, [8, 8])
    s_hat = np.kron(est.factors[1], est.factors[0])
    return correlation_fidelity(s, s_hat) >= 1.0 - 1e-10


def _check_quantizer(rng) -> bool:
    f = _random_phases(rng, 64)
    indices, f_tilde = quantize_factor(f, 3)
    again, f_again = quantize_factor(f_tilde, 3)
    max_err = np.max(np.abs(np.angle(f_tilde * f.conj())))
    return bool(np.array_equal(indices, again) and max_err <= np.pi / 8 + 1e-12)


def _check_codec(rng) -> bool:
    cfg = FactorizationConfig.uniform((8, 4, 2), 6)
    s = _random_phases(rng, cfg.n)
    s_hat = decode(encode(s, cfg, max_iter=10_000))
    return correlation_fidelity(s, s_hat) > 0.0 and s_hat.size == cfg.n


def _check_siso_alignment(rng) -> bool:
    n = 16
    h = complex_normal(rng, (n, 1))
    g = complex_normal(rng, (1, n))
    bf = optimal_beamformers(h, g)
    cascade = bf.w.conj() @ (g * bf.s_opt) @ (h @ bf.q)
    target = np.sum(np.abs(g[0]) * np.abs(h[:, 0]))
    ok_mag = abs(abs(cascade) - target) <= 1e-10 * target
    return bool(ok_mag and adr(h, g, bf.w, bf.q, bf.s_opt) > 0)


_CHECKS = (
    ("tensor round trip", _check_round_trip),
    ("kronecker chain identity", _check_kron_chain),
    ("separable exact recovery", _check_exact_recovery),
    ("phase quantizer", _check_quantizer),
    ("encode/decode pipeline", _check_codec),
    ("siso phase alignment", _check_siso_alignment),
)


def run_selftest() -> int:
    rng = trial_rng(2024, 0)
    failures = 0
    for name, check in _CHECKS:
        try:
            ok = check(rng)
        except Exception as exc:  # pragma: no cover - defensive
            print(f"FAIL {name}: {exc}")
            failures += 1
            continue
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
        failures += 0 if ok else 1
    if failures:
        print(f"{failures} self-check(s) failed")
        return 3
    print("all self-checks passed")
    return 0
