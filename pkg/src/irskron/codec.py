"""Encode/decode IRS phase-shift vectors as quantized Kronecker factors.

The encoder tensorizes the length-N vector, extracts one unit-modulus
factor per mode, and quantizes each factor's phases on a uniform grid.
The decoder rebuilds the vector as the reversed Kronecker chain of the
dequantized factors. Payload accounting compares the factored feedback
(sum of N_p * b_p bits) against per-element feedback (N * b bits), and
feedback durations divide the payload by the Shannon rate of the control
link (log base 2, so the payload is in bits).

Wire format of a message: header ``P:u8, dims:P*u16le, bits:P*u8``, then
for each factor its codepoint indices bit-packed LSB-first at that
factor's resolution, padded to a byte boundary per factor.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .hosvd import DEFAULT_MAX_ITER, DEFAULT_TOL, factorize_phases

__all__ = [
    "FactorizationConfig",
    "FeedbackMessage",
    "FeedbackLink",
    "quantize_factor",
    "encode",
    "decode",
    "payload_bits",
    "baseline_payload_bits",
    "payload_ratio",
    "feedback_duration",
]

_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class FactorizationConfig:
    """Factor sizes and per-factor quantizer resolutions; P == len(dims).

    P = 1 with dims = [N] means no factorization (per-element feedback).
    """

    dims: tuple[int, ...]
    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if len(self.dims) < 1:
            raise ValueError("need at least one factor dimension")
        if len(self.dims) != len(self.bits):
            raise ValueError(
                f"dims and bits lengths differ: {len(self.dims)} vs {len(self.bits)}"
            )
        if any(d < 1 for d in self.dims):
            raise ValueError(f"factor dimensions must be >= 1, got {self.dims}")
        if any(b < 1 for b in self.bits):
            raise ValueError(f"quantizer resolutions must be >= 1 bit, got {self.bits}")

    @classmethod
    def uniform(cls, dims: Sequence[int], bits_per_factor: int) -> "FactorizationConfig":
        dims = tuple(dims)
        return cls(dims, (bits_per_factor,) * len(dims))

    @property
    def p(self) -> int:
        return len(self.dims)

    @property
    def n(self) -> int:
        return math.prod(self.dims)


@dataclass(frozen=True)
class FeedbackMessage:
    """Quantized factor indices plus the config needed to rebuild the vector."""

    config: FactorizationConfig
    indices: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.indices) != self.config.p:
            raise ValueError(
                f"expected {self.config.p} index arrays, got {len(self.indices)}"
            )
        frozen = []
        for p, (idx, n_p, b) in enumerate(zip(self.indices, self.config.dims, self.config.bits)):
            arr = np.asarray(idx)
            if arr.ndim != 1 or arr.size != n_p:
                raise ValueError(f"factor {p}: expected {n_p} indices, got shape {arr.shape}")
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError(f"factor {p}: indices must be integers")
            if arr.size and (arr.min() < 0 or arr.max() >= (1 << b)):
                raise ValueError(
                    f"factor {p}: index out of range for {b}-bit codebook"
                )
            arr = arr.astype(np.int64)
            arr.setflags(write=False)
            frozen.append(arr)
        object.__setattr__(self, "indices", tuple(frozen))

    def to_bytes(self) -> bytes:
        cfg = self.config
        out = bytearray(struct.pack("<B", cfg.p))
        out += struct.pack(f"<{cfg.p}H", *cfg.dims)
        out += struct.pack(f"<{cfg.p}B", *cfg.bits)
        for idx, b in zip(self.indices, cfg.bits):
            out += _pack_bits(idx, b)
        return bytes(out)

    @classmethod
    def from_bytes(cls, payload: bytes) -> "FeedbackMessage":
        if len(payload) < 1:
            raise ValueError("message truncated: missing factor count")
        p = struct.unpack_from("<B", payload, 0)[0]
        if p < 1:
            raise ValueError("factor count must be >= 1")
        offset = 1
        need = 2 * p + p
        if len(payload) < offset + need:
            raise ValueError("message truncated: incomplete header")
        dims = struct.unpack_from(f"<{p}H", payload, offset)
        offset += 2 * p
        bits = struct.unpack_from(f"<{p}B", payload, offset)
        offset += p
        config = FactorizationConfig(dims, bits)
        indices = []
        for n_p, b in zip(dims, bits):
            nbytes = (n_p * b + 7) // 8
            chunk = payload[offset : offset + nbytes]
            if len(chunk) < nbytes:
                raise ValueError("message truncated: incomplete factor payload")
            indices.append(_unpack_bits(chunk, b, n_p))
            offset += nbytes
        if offset != len(payload):
            raise ValueError(f"{len(payload) - offset} trailing bytes after message")
        return cls(config, tuple(indices))

    def to_json(self) -> str:
        """Debug text form mirroring the binary layout field for field."""
        return json.dumps(
            {
                "dims": list(self.config.dims),
                "bits": list(self.config.bits),
                "indices": [idx.tolist() for idx in self.indices],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "FeedbackMessage":
        obj = json.loads(text)
        unknown = set(obj) - {"dims", "bits", "indices"}
        if unknown:
            raise ValueError(f"unknown message fields: {sorted(unknown)}")
        config = FactorizationConfig(obj["dims"], obj["bits"])
        indices = tuple(np.asarray(ix, dtype=np.int64) for ix in obj["indices"])
        return cls(config, indices)


@dataclass(frozen=True)
class FeedbackLink:
    """Control-link budget parameters for feedback-duration accounting."""

    bandwidth_hz: float
    power_w: float
    gain2: float
    noise_density: float
    preamble_bits: float = 0.0
    baseline_bits: int = 3

    def __post_init__(self):
        for name in ("bandwidth_hz", "power_w", "gain2", "noise_density"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.preamble_bits < 0:
            raise ValueError("preamble_bits must be >= 0")
        if self.baseline_bits < 1:
            raise ValueError("baseline_bits must be >= 1")


def _pack_bits(values: np.ndarray, width: int) -> bytes:
    out = bytearray()
    acc = 0
    nbits = 0
    for v in values:
        acc |= int(v) << nbits
        nbits += width
        while nbits >= 8:
            out.append(acc & 0xFF)
            acc >>= 8
            nbits -= 8
    if nbits:
        out.append(acc & 0xFF)
    return bytes(out)


def _unpack_bits(data: bytes, width: int, count: int) -> np.ndarray:
    values = np.empty(count, dtype=np.int64)
    acc = 0
    nbits = 0
    pos = 0
    mask = (1 << width) - 1
    for i in range(count):
        while nbits < width:
            acc |= data[pos] << nbits
            pos += 1
            nbits += 8
        values[i] = acc & mask
        acc >>= width
        nbits -= width
    return values


def quantize_factor(f: np.ndarray, b: int) -> tuple[np.ndarray, np.ndarray]:
    """Snap unit-modulus entries to the 2^b-point uniform phase codebook.

    Codepoint k carries phase 2*pi*k/2^b. Each entry maps to the nearest
    codepoint in angular distance; exact ties go to the lower index
    (including across the wrap, where index 0 wins). Returns the index
    array and the requantized vector; the map is idempotent.
    """
    if b < 1:
        raise ValueError("quantizer needs at least 1 bit")
    f = np.asarray(f, dtype=complex)
    levels = 1 << b
    x = np.angle(f) * (levels / _TWO_PI)
    k0 = np.floor(x)
    frac = x - k0
    lower = k0.astype(np.int64) % levels
    upper = (lower + 1) % levels
    indices = np.where(frac < 0.5, lower, upper)
    ties = frac == 0.5
    if np.any(ties):
        indices = np.where(ties, np.minimum(lower, upper), indices)
    f_tilde = np.exp(1j * _TWO_PI * indices / levels)
    return indices, f_tilde


def encode(
    s: np.ndarray,
    config: FactorizationConfig,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> FeedbackMessage:
    """Factorize a phase-shift vector and quantize each factor's phases."""
    s = np.asarray(s, dtype=complex)
    if s.ndim != 1 or s.size != config.n:
        raise ValueError(
            f"phase vector of length {s.size} does not match config dims "
            f"{config.dims} (product {config.n})"
        )
    factors = factorize_phases(s, config.dims, tol=tol, max_iter=max_iter)
    indices = tuple(
        quantize_factor(f, b)[0] for f, b in zip(factors, config.bits)
    )
    return FeedbackMessage(config, indices)


def decode(msg: FeedbackMessage) -> np.ndarray:
    """Reconstruct the phase-shift vector as the reversed Kronecker chain."""
    f_tildes = [
        np.exp(1j * _TWO_PI * idx / (1 << b))
        for idx, b in zip(msg.indices, msg.config.bits)
    ]
    s = f_tildes[-1]
    for f in reversed(f_tildes[:-1]):
        s = np.kron(s, f)
    return s


def payload_bits(config: FactorizationConfig) -> int:
    """Feedback payload of the factored scheme: sum_p N_p * b_p bits."""
    return int(sum(n * b for n, b in zip(config.dims, config.bits)))


def baseline_payload_bits(n: int, b_f: int) -> int:
    """Per-element feedback payload: N * b bits."""
    return int(n) * int(b_f)


def payload_ratio(config: FactorizationConfig) -> float:
    """Element-count compression factor N / sum_p N_p."""
    return config.n / sum(config.dims)


def feedback_duration(
    payload: float, link: FeedbackLink, include_preamble: bool = False
) -> float:
    """Seconds to push ``payload`` bits through the control link.

    Rate is the Shannon rate B * log2(1 + p*|g|^2 / (B*N0)); the optional
    preamble carries the factorization parameters and adds its bit count
    to the numerator.
    """
    snr = link.power_w * link.gain2 / (link.bandwidth_hz * link.noise_density)
    rate = link.bandwidth_hz * np.log2(1.0 + snr)
    total = payload + (link.preamble_bits if include_preamble else 0.0)
    return float(total / rate)
