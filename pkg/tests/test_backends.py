"""The compiled and NumPy kernels must agree to roundoff, and the exact
cancellations both backends promise must hold bit for bit."""

import numpy as np
import pytest

from fluxring import _kernels_py
from fluxring._backend import backend_name, kernels

try:
    from fluxring import _kernels as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(
    compiled is None, reason="compiled extension not built"
)


def test_active_backend_reports_name():
    assert backend_name() in ("compiled", "python")
    assert kernels.BACKEND == backend_name()


class TestBoltzmannReduce:
    def cases(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            phi = rng.uniform(-2.0, 2.0)
            n_half = rng.integers(3, 60)
            beta = 10.0 ** rng.uniform(-3, 2)
            ns = np.arange(round(phi) - n_half, round(phi) + n_half + 1)
            yield np.ascontiguousarray(ns - phi, dtype=float), beta

    @needs_compiled
    def test_backends_agree(self):
        for delta, beta in self.cases():
            z_c, s1_c, s2_c, edge_c = compiled.boltzmann_reduce(delta, beta)
            z_p, s1_p, s2_p, edge_p = _kernels_py.boltzmann_reduce(delta, beta)
            assert z_c == pytest.approx(z_p, rel=1e-13)
            # the folded moment is a cancelling sum: roundoff remnants are
            # absolute at the scale of the summands
            assert s1_c == pytest.approx(s1_p, rel=1e-12, abs=1e-13 * z_p)
            assert s2_c == pytest.approx(s2_p, rel=1e-13)
            assert edge_c == pytest.approx(edge_p, rel=1e-13, abs=1e-300)

    @needs_compiled
    def test_symmetric_first_moment_exact_zero_both(self):
        for n_half in (3, 10, 41):
            for phi in (0.0, 0.5, 2.5, -1.5):
                lo = int(np.ceil(phi - n_half - 0.5))
                hi = int(np.floor(phi + n_half + 0.5))
                delta = np.ascontiguousarray(np.arange(lo, hi + 1) - phi, dtype=float)
                assert compiled.boltzmann_reduce(delta, 0.7)[1] == 0.0
                assert _kernels_py.boltzmann_reduce(delta, 0.7)[1] == 0.0


class TestDecayCycleSums:
    def test_backends_agree(self):
        rng = np.random.default_rng(11)
        closed = rng.exponential(1e-6, size=500)
        opened = rng.exponential(1e-6, size=500)
        args = (closed, opened, -5e-7, 3e-7, 0.01)
        b = _kernels_py.decay_cycle_sums(*args)
        if compiled is not None:
            a = compiled.decay_cycle_sums(*args)
            for x, y in zip(a, b):
                assert x == pytest.approx(y, rel=1e-12)

    def test_single_full_decay_books_loop_flux(self):
        # One long open interval: integral V = R*I*tau, dissipation = L I^2/2.
        tau, r_b, i_p = 1e-7, 0.01, 4e-7
        int_vb, int_i, int_diss, _ = kernels.decay_cycle_sums(
            np.array([0.0]), np.array([100.0 * tau]), i_p, tau, r_b
        )
        l_tot = r_b * tau
        assert int_vb == pytest.approx(l_tot * i_p, rel=1e-12)
        assert int_diss == pytest.approx(0.5 * l_tot * i_p**2, rel=1e-12)
        assert int_i == pytest.approx(i_p * tau, rel=1e-12)


class TestSamplePiecewiseDecay:
    def test_backends_agree(self):
        rng = np.random.default_rng(3)
        durations = rng.exponential(1e-6, size=200)
        bounds = np.concatenate(([0.0], np.cumsum(durations)[:-1]))
        times = np.sort(rng.uniform(0.0, bounds[-1], size=1000))
        b = _kernels_py.sample_piecewise_decay(times, bounds, -2e-6, 4e-7)
        if compiled is not None:
            a = np.asarray(
                compiled.sample_piecewise_decay(times, bounds, -2e-6, 4e-7)
            )
            np.testing.assert_allclose(a, b, rtol=1e-13)

    def test_closed_segments_pinned(self):
        bounds = np.array([0.0, 1.0, 2.0, 3.0])
        times = np.array([0.5, 1.5, 2.5, 3.5])
        out = np.asarray(kernels.sample_piecewise_decay(times, bounds, 1.0, 1.0))
        assert out[0] == 1.0
        assert out[2] == 1.0
        assert out[1] == pytest.approx(np.exp(-0.5), rel=1e-14)
        assert out[3] == pytest.approx(np.exp(-0.5), rel=1e-14)
