"""Tests for the upper-bound beamformers and the rate evaluation."""

import itertools

import numpy as np
import pytest

from irskron.beamform import EvalParams, adr, optimal_beamformers
from irskron.channel import complex_normal, los_pair, trial_rng
from test_channel import _geometry


def _cascade(h, g, w, q, s):
    return w.conj() @ (g * s) @ (h @ q)


class TestOptimalBeamformers:
    def test_siso_alignment_identity(self):
        rng = trial_rng(20, 0)
        n = 12
        h = complex_normal(rng, (n, 1))
        g = complex_normal(rng, (1, n))
        bf = optimal_beamformers(h, g)
        assert np.allclose(bf.w, [1.0], atol=1e-12)
        assert np.allclose(bf.q, [1.0], atol=1e-12)
        expected_phase = np.exp(-1j * np.angle(g[0] * h[:, 0]))
        assert np.allclose(bf.s_opt, expected_phase, atol=1e-9)
        target = np.sum(np.abs(g[0]) * np.abs(h[:, 0]))
        assert abs(_cascade(h, g, bf.w, bf.q, bf.s_opt)) == pytest.approx(target, rel=1e-10)

    def test_unit_norm_outputs(self):
        rng = trial_rng(21, 0)
        h = complex_normal(rng, (16, 3))
        g = complex_normal(rng, (2, 16))
        bf = optimal_beamformers(h, g)
        assert np.linalg.norm(bf.w) == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.norm(bf.q) == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(np.abs(bf.s_opt), 1.0, atol=1e-12)

    def test_los_phase_vector_is_separable(self):
        geom = _geometry(n_h=8, n_v=4)
        h_los, g_los = los_pair(geom)
        bf = optimal_beamformers(h_los, g_los)
        sigma = np.linalg.svd(bf.s_opt.reshape(8, 4, order="F"), compute_uv=False)
        assert sigma[1] <= 1e-10 * sigma[0]

    def test_global_phase_of_g_is_irrelevant(self):
        rng = trial_rng(22, 0)
        h = complex_normal(rng, (10, 2))
        g = complex_normal(rng, (2, 10))
        bf1 = optimal_beamformers(h, g)
        bf2 = optimal_beamformers(h, np.exp(0.77j) * g)
        r1 = adr(h, g, bf1.w, bf1.q, bf1.s_opt)
        r2 = adr(h, np.exp(0.77j) * g, bf2.w, bf2.q, bf2.s_opt)
        assert r1 == pytest.approx(r2, rel=1e-12)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError, match="shapes"):
            optimal_beamformers(np.ones((4, 2)), np.ones((2, 5)))


class TestAdr:
    def test_zero_cascade(self):
        h = np.ones((2, 1), dtype=complex)
        g = np.array([[0.0, 0.0], [1.0, 1.0]], dtype=complex)
        w = np.array([1.0 + 0j, 0.0])
        q = np.array([1.0 + 0j])
        s = np.ones(2, dtype=complex)
        assert adr(h, g, w, q, s) == 0.0

    def test_unit_cascade_value(self):
        one = np.ones((1, 1), dtype=complex)
        s = np.ones(1, dtype=complex)
        w = q = np.ones(1, dtype=complex)
        got = adr(one, one, w, q, s, EvalParams(noise_variance=0.1))
        assert got == pytest.approx(np.log2(11.0), rel=1e-12)

    def test_monotone_in_cascade_magnitude(self):
        w = q = np.ones(1, dtype=complex)
        s = np.ones(1, dtype=complex)
        rates = [
            adr(np.array([[c]], dtype=complex), np.ones((1, 1), dtype=complex), w, q, s)
            for c in (0.5, 1.0, 2.0, 4.0)
        ]
        assert all(a < b for a, b in zip(rates, rates[1:]))

    def test_global_phase_invariance_of_inputs(self):
        rng = trial_rng(23, 0)
        h = complex_normal(rng, (6, 2))
        g = complex_normal(rng, (2, 6))
        bf = optimal_beamformers(h, g)
        base = adr(h, g, bf.w, bf.q, bf.s_opt)
        assert adr(h, g, np.exp(1j) * bf.w, bf.q, bf.s_opt) == pytest.approx(base, rel=1e-12)
        assert adr(h, g, bf.w, np.exp(-2j) * bf.q, bf.s_opt) == pytest.approx(base, rel=1e-12)
        assert adr(h, g, bf.w, bf.q, np.exp(0.5j) * bf.s_opt) == pytest.approx(base, rel=1e-12)

    def test_grid_dominance_small_siso(self):
        # Exhaustive 2-bit grid: no quantized vector beats the aligned one.
        rng = trial_rng(24, 0)
        n = 4
        h = complex_normal(rng, (n, 1))
        g = complex_normal(rng, (1, n))
        bf = optimal_beamformers(h, g)
        best = adr(h, g, bf.w, bf.q, bf.s_opt)
        codebook = np.exp(2j * np.pi * np.arange(4) / 4)
        for combo in itertools.product(range(4), repeat=n):
            s = codebook[list(combo)]
            assert adr(h, g, bf.w, bf.q, s) <= best + 1e-12

    def test_dimension_checks(self):
        h = np.ones((4, 2), dtype=complex)
        g = np.ones((2, 4), dtype=complex)
        w = np.ones(2, dtype=complex) / np.sqrt(2)
        q = np.ones(2, dtype=complex) / np.sqrt(2)
        with pytest.raises(ValueError, match="shapes"):
            adr(h, g, w, q, np.ones(3, dtype=complex))
        with pytest.raises(ValueError, match="beamformer"):
            adr(h, g, np.ones(3, dtype=complex), q, np.ones(4, dtype=complex))
        with pytest.raises(ValueError, match="unit modulus"):
            adr(h, g, w, q, 2.0 * np.ones(4, dtype=complex))

    def test_noise_variance_validated(self):
        with pytest.raises(ValueError):
            EvalParams(noise_variance=0.0)
