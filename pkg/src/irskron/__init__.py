"""IRS phase-shift feedback compression via Kronecker factor quantization.

A length-N unit-modulus phase-shift vector is reshaped into an order-P
tensor, approximated by a rank-one model (one unit-modulus factor per
mode), and only the quantized factor phases are fed back: sum(N_p) values
instead of N. The package also ships the Rician MIMO channel model and
beamformer evaluation needed to measure what that compression costs in
achievable data rate, plus a CLI harness that sweeps both.
"""

from .beamform import BeamformerSet, EvalParams, adr, optimal_beamformers
from .channel import (
    ChannelGeometry,
    RicianParams,
    complex_normal,
    los_pair,
    rician_channel,
    rician_mix,
    sample_geometry,
    steering_irs,
    steering_ula,
    trial_rng,
)
from .codec import (
    FactorizationConfig,
    FeedbackLink,
    FeedbackMessage,
    baseline_payload_bits,
    decode,
    encode,
    feedback_duration,
    payload_bits,
    payload_ratio,
    quantize_factor,
)
from .hosvd import (
    ConvergenceError,
    FactorSet,
    correlation_fidelity,
    dominant_left_singular,
    factorize_phases,
)
from .tensor import ComplexTensor, kron, rank_one_tensor, tensorize, unfold, vectorize

__version__ = "0.1.0"

__all__ = [
    "BeamformerSet",
    "ChannelGeometry",
    "ComplexTensor",
    "ConvergenceError",
    "EvalParams",
    "FactorSet",
    "FactorizationConfig",
    "FeedbackLink",
    "FeedbackMessage",
    "RicianParams",
    "adr",
    "baseline_payload_bits",
    "complex_normal",
    "correlation_fidelity",
    "decode",
    "dominant_left_singular",
    "encode",
    "factorize_phases",
    "feedback_duration",
    "kron",
    "los_pair",
    "optimal_beamformers",
    "payload_bits",
    "payload_ratio",
    "quantize_factor",
    "rank_one_tensor",
    "rician_channel",
    "rician_mix",
    "sample_geometry",
    "steering_irs",
    "steering_ula",
    "tensorize",
    "trial_rng",
    "unfold",
    "vectorize",
]
