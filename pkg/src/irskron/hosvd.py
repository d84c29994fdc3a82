"""Rank-one HOSVD estimation of unit-modulus Kronecker factors.

Each mode-p factor of the tensorized phase-shift vector is the dominant
left singular vector of the corresponding unfolding, reduced to its
angles. The dominant vector comes from a deterministic power iteration on
the Gram matrix of the short side, so exactly separable inputs converge
in a couple of steps and the whole pipeline is bitwise reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .tensor import tensorize, unfold

__all__ = [
    "ConvergenceError",
    "FactorSet",
    "dominant_left_singular",
    "factorize_phases",
    "correlation_fidelity",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 500

# |abs(entry) - 1| allowed on normalized factors.
_UNIT_MODULUS_TOL = 1e-12


class ConvergenceError(RuntimeError):
    """Power iteration failed to reach its residual tolerance."""

    def __init__(self, residual: float, max_iter: int):
        super().__init__(
            f"power iteration did not converge in {max_iter} iterations "
            f"(relative residual {residual:.3e})"
        )
        self.residual = residual
        self.max_iter = max_iter


@dataclass(frozen=True)
class FactorSet:
    """Unit-modulus factors of a phase-shift vector, one per tensor mode."""

    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        for p, f in enumerate(self.factors):
            if np.max(np.abs(np.abs(f) - 1.0)) > _UNIT_MODULUS_TOL:
                raise ValueError(f"factor {p} is not unit modulus")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.size for f in self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.factors)


def _phase_canonical(u: np.ndarray) -> np.ndarray:
    """Rotate so the first nonzero entry is real positive."""
    nz = np.flatnonzero(u)
    if nz.size == 0:
        return u
    return u * np.exp(-1j * np.angle(u[nz[0]]))


def _power_dominant(m: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    """Dominant left singular vector of a wide matrix via Gram power iteration.

    Start vector is the largest-norm column (lowest index on ties), which
    makes the iteration deterministic and one-step exact on rank-one input.
    """
    gram = m @ m.conj().T
    col_norms = np.linalg.norm(m, axis=0)
    u = m[:, int(np.argmax(col_norms))].astype(complex)
    u = u / np.linalg.norm(u)
    residual, lam = np.inf, 0.0
    for _ in range(max_iter):
        w = gram @ u
        lam = float(np.real(np.vdot(u, w)))
        residual = float(np.linalg.norm(w - lam * u))
        if residual <= tol * lam:
            return u
        u = w / np.linalg.norm(w)
    raise ConvergenceError(residual / lam if lam > 0 else residual, max_iter)


def dominant_left_singular(
    m: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> np.ndarray:
    """Unit-norm dominant left singular vector of a nonzero complex matrix.

    The Gram power iteration runs on the short side (M M^H for wide input,
    M^H M for tall), and the result is rotated so its first nonzero entry
    is real positive. Raises :class:`ConvergenceError` when the residual
    ||M M^H u - sigma^2 u|| does not fall below tol * sigma^2 in max_iter
    steps.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {m.shape}")
    if not np.any(m):
        raise ValueError("dominant singular vector of the zero matrix is undefined")
    rows, cols = m.shape
    if rows <= cols:
        u = _power_dominant(m, tol, max_iter)
    else:
        v = _power_dominant(m.conj().T, tol, max_iter)
        u = m @ v
        u = u / np.linalg.norm(u)
    return _phase_canonical(u)


def factorize_phases(
    s: np.ndarray,
    dims: Sequence[int],
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> FactorSet:
    """Estimate P unit-modulus factors of a length prod(dims) phase vector.

    Factor p is exp(j*angle(u_p)) with u_p the dominant left singular
    vector of the mode-p unfolding, rotated so its first entry is 1. Each
    mode is handled independently; no joint refinement is performed.
    """
    t = tensorize(s, dims)
    factors = []
    for mode in range(1, t.order + 1):
        u = dominant_left_singular(unfold(t, mode), tol=tol, max_iter=max_iter)
        angles = np.angle(u)
        factors.append(np.exp(1j * (angles - angles[0])))
    return FactorSet(tuple(factors))


def correlation_fidelity(s: np.ndarray, s_hat: np.ndarray) -> float:
    """|s^H s_hat| / N, a global-phase-invariant match score in [0, 1]."""
    s = np.asarray(s)
    s_hat = np.asarray(s_hat)
    if s.shape != s_hat.shape or s.ndim != 1:
        raise ValueError(f"length mismatch: {s.shape} vs {s_hat.shape}")
    return float(np.abs(np.vdot(s, s_hat)) / s.size)
