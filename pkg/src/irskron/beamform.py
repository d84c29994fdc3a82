"""Upper-bound beamformers, optimum IRS phases, and achievable-data-rate.

The active beamformers are the dominant singular vectors of the two
channel legs (w for the IRS-RX leg, q for the TX-IRS leg). With those
fixed, the cascade through the IRS is sum_n row_n * s_n * col_n where
row = w^H G and col = H q, so the phase vector that maximizes the cascade
magnitude aligns every term: s_n = exp(-j*angle(row_n * col_n)). That
choice meets the triangle bound |cascade| = sum_n |row_n| |col_n|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hosvd import dominant_left_singular

__all__ = ["BeamformerSet", "EvalParams", "optimal_beamformers", "adr"]

# The beamformer Grams are tiny (M x M), so a generous iteration budget
# costs nothing and covers near-degenerate NLOS draws.
_BEAMFORMER_MAX_ITER = 100_000


@dataclass(frozen=True)
class EvalParams:
    """Receiver noise variance for the rate formula."""

    noise_variance: float = 0.1

    def __post_init__(self):
        if self.noise_variance <= 0:
            raise ValueError("noise variance must be strictly positive")


@dataclass(frozen=True)
class BeamformerSet:
    """Unit-norm combiner w, precoder q, and the aligned IRS phase vector."""

    w: np.ndarray
    q: np.ndarray
    s_opt: np.ndarray


def optimal_beamformers(
    h: np.ndarray,
    g: np.ndarray,
    tol: float = 1e-12,
    max_iter: int = _BEAMFORMER_MAX_ITER,
) -> BeamformerSet:
    """Dominant-singular-vector beamformers plus the phase-aligned IRS vector.

    h is the N x M_T TX-IRS channel, g the M_R x N IRS-RX channel. The
    singular vectors are phase-canonicalized (first nonzero entry real
    positive), which makes s_opt deterministic.
    """
    h = np.asarray(h, dtype=complex)
    g = np.asarray(g, dtype=complex)
    if h.ndim != 2 or g.ndim != 2 or h.shape[0] != g.shape[1]:
        raise ValueError(f"inconsistent channel shapes {h.shape} and {g.shape}")
    w = dominant_left_singular(g, tol=tol, max_iter=max_iter)
    q = dominant_left_singular(h.conj().T, tol=tol, max_iter=max_iter)
    row = w.conj() @ g
    col = h @ q
    s_opt = np.exp(-1j * np.angle(row * col))
    return BeamformerSet(w=w, q=q, s_opt=s_opt)


def adr(
    h: np.ndarray,
    g: np.ndarray,
    w: np.ndarray,
    q: np.ndarray,
    s: np.ndarray,
    params: EvalParams = EvalParams(),
) -> float:
    """Achievable data rate log2(1 + |w^H G diag(s) H q|^2 / sigma^2) in bps/Hz."""
    h = np.asarray(h, dtype=complex)
    g = np.asarray(g, dtype=complex)
    s = np.asarray(s, dtype=complex)
    n = h.shape[0]
    if g.shape[1] != n or s.shape != (n,):
        raise ValueError(
            f"inconsistent shapes: h {h.shape}, g {g.shape}, s {s.shape}"
        )
    if w.shape != (g.shape[0],) or q.shape != (h.shape[1],):
        raise ValueError(
            f"beamformer shapes {w.shape}/{q.shape} do not match channels"
        )
    if np.max(np.abs(np.abs(s) - 1.0)) > 1e-9:
        raise ValueError("phase-shift vector entries must be unit modulus")
    cascade = w.conj() @ (g * s) @ (h @ q)
    return float(np.log2(1.0 + np.abs(cascade) ** 2 / params.noise_variance))
