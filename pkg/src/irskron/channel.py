"""Rician TX-IRS / IRS-RX channel generation with geometric LOS structure.

The LOS components are rank-one outer products of array steering vectors:
half-wavelength ULAs at TX and RX, and an N_h x N_v planar IRS whose
steering vector is the Kronecker product of a vertical and a horizontal
part. NLOS components are i.i.d. circularly-symmetric complex Gaussian.
Path loss enters once, through the LOS weight of the Rician mixer.

All randomness flows through explicit generators. Monte Carlo trials use
Philox counter-based substreams keyed by (master_seed, trial_index), so
trial results do not depend on execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChannelGeometry",
    "RicianParams",
    "steering_ula",
    "steering_irs",
    "los_pair",
    "rician_mix",
    "rician_channel",
    "sample_geometry",
    "complex_normal",
    "trial_rng",
]

_PI = np.pi


@dataclass(frozen=True)
class ChannelGeometry:
    """Array sizes and the angles that fix both LOS components."""

    m_t: int
    m_r: int
    n_h: int
    n_v: int
    theta_tx: float  # TX angle of departure
    theta_rx: float  # RX angle of arrival
    irs_aoa_azimuth: float
    irs_aoa_elevation: float
    irs_aod_azimuth: float
    irs_aod_elevation: float

    def __post_init__(self):
        if min(self.m_t, self.m_r, self.n_h, self.n_v) < 1:
            raise ValueError("array sizes must be >= 1")
        for name in ("theta_tx", "theta_rx", "irs_aoa_azimuth", "irs_aod_azimuth"):
            v = getattr(self, name)
            if not -_PI <= v <= _PI:
                raise ValueError(f"{name}={v} outside [-pi, pi]")
        for name in ("irs_aoa_elevation", "irs_aod_elevation"):
            v = getattr(self, name)
            if not 0.0 <= v <= _PI / 2:
                raise ValueError(f"{name}={v} outside [0, pi/2]")

    @property
    def n(self) -> int:
        return self.n_h * self.n_v


@dataclass(frozen=True)
class RicianParams:
    """Linear Rician factor and per-link path-loss scalars."""

    k: float
    alpha_h: float = 1.0
    alpha_g: float = 1.0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("Rician factor must be >= 0")
        if self.alpha_h < 0 or self.alpha_g < 0:
            raise ValueError("path-loss scalars must be >= 0")

    @classmethod
    def from_db(cls, k_db: float, alpha_h: float = 1.0, alpha_g: float = 1.0) -> "RicianParams":
        return cls(10.0 ** (k_db / 10.0), alpha_h, alpha_g)


def steering_ula(angle: float, m: int) -> np.ndarray:
    """Half-wavelength ULA steering vector [e^{j pi i sin(angle)}], i=0..m-1."""
    if m < 1:
        raise ValueError("array size must be >= 1")
    return np.exp(1j * _PI * np.arange(m) * np.sin(angle))


def steering_irs(azimuth: float, elevation: float, n_h: int, n_v: int) -> np.ndarray:
    """Planar IRS steering vector, vertical (x) horizontal Kronecker product.

    Horizontal phase step is pi*sin(azimuth)*cos(elevation), vertical is
    pi*cos(elevation).
    """
    horizontal = np.exp(
        1j * _PI * np.arange(n_h) * np.sin(azimuth) * np.cos(elevation)
    )
    vertical = np.exp(1j * _PI * np.arange(n_v) * np.cos(elevation))
    return np.kron(vertical, horizontal)


def los_pair(geom: ChannelGeometry) -> tuple[np.ndarray, np.ndarray]:
    """Rank-one LOS components (H_los: N x M_T, G_los: M_R x N)."""
    b_irs = steering_irs(geom.irs_aoa_azimuth, geom.irs_aoa_elevation, geom.n_h, geom.n_v)
    a_irs = steering_irs(geom.irs_aod_azimuth, geom.irs_aod_elevation, geom.n_h, geom.n_v)
    a_tx = steering_ula(geom.theta_tx, geom.m_t)
    b_rx = steering_ula(geom.theta_rx, geom.m_r)
    h_los = np.outer(b_irs, a_tx.conj())
    g_los = np.outer(b_rx, a_irs.conj())
    return h_los, g_los


def complex_normal(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """I.i.d. circularly-symmetric complex Gaussian, zero mean, unit variance."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def rician_mix(los: np.ndarray, nlos: np.ndarray, k: float, alpha: float = 1.0) -> np.ndarray:
    """Combine LOS and NLOS terms: sqrt(alpha*k/(k+1))*LOS + sqrt(1/(k+1))*NLOS."""
    if k < 0:
        raise ValueError("Rician factor must be >= 0")
    return np.sqrt(alpha * k / (k + 1.0)) * los + np.sqrt(1.0 / (k + 1.0)) * nlos


def rician_channel(
    los: np.ndarray, k: float, alpha: float, rng: np.random.Generator
) -> np.ndarray:
    """Draw one Rician channel realization around the given LOS component."""
    return rician_mix(los, complex_normal(rng, los.shape), k, alpha)


def sample_geometry(
    rng: np.random.Generator, m_t: int, m_r: int, n_h: int, n_v: int
) -> ChannelGeometry:
    """Draw all azimuths uniform on [-pi, pi] and elevations on [0, pi/2]."""
    theta_tx, theta_rx, aoa_az, aod_az = rng.uniform(-_PI, _PI, size=4)
    aoa_el, aod_el = rng.uniform(0.0, _PI / 2, size=2)
    return ChannelGeometry(
        m_t=m_t,
        m_r=m_r,
        n_h=n_h,
        n_v=n_v,
        theta_tx=theta_tx,
        theta_rx=theta_rx,
        irs_aoa_azimuth=aoa_az,
        irs_aoa_elevation=aoa_el,
        irs_aod_azimuth=aod_az,
        irs_aod_elevation=aod_el,
    )


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """Independent per-trial substream of the counter-based master stream."""
    return np.random.Generator(np.random.Philox(key=[master_seed, trial_index]))
