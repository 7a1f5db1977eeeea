import math

import numpy as np
import pytest

from qhotunnel.oscillator import OscillatorMode, density_floats
from qhotunnel.quadrature import (
    NonConvergence,
    integrate_decaying,
    integrate_finite,
    tunnel_probability_exact,
)

from ._oracles import FROZEN


class TestIntegrateDecaying:
    def test_gaussian_tail(self):
        r = integrate_decaying(lambda x: np.exp(-x * x), 1.0, 1e-13)
        assert r.value == pytest.approx(FROZEN["half_sqrtpi_erfc1"], rel=1e-13)
        assert r.abs_error_estimate <= 1e-13 * max(abs(r.value), 1.0)
        assert r.tail_cut >= 1.0
        assert r.panels_used > 0

    def test_plain_exponential(self):
        r = integrate_decaying(lambda x: np.exp(-x), 0.0, 1e-13)
        assert r.value == pytest.approx(1.0, rel=1e-13)

    def test_density_integral_matches_published_value(self):
        mode = OscillatorMode(10)
        r = integrate_decaying(lambda xs: density_floats(mode, xs), math.sqrt(21.0), 1e-13)
        assert r.value == pytest.approx(0.0601438 / 2.0, abs=5e-8)

    def test_scalar_integrands_accepted(self):
        r = integrate_decaying(lambda x: math.exp(-x * x), 1.0, 1e-11)
        assert r.value == pytest.approx(FROZEN["half_sqrtpi_erfc1"], rel=1e-11)

    def test_tol_validation(self):
        with pytest.raises(ValueError):
            integrate_decaying(lambda x: np.exp(-x), 0.0, 1e-2)
        with pytest.raises(ValueError):
            integrate_decaying(lambda x: np.exp(-x), 0.0, 1e-16)

    def test_nonconvergence_on_budget(self):
        with pytest.raises(NonConvergence):
            integrate_decaying(lambda x: 1.0 / (1.0 + x * x), 0.0, 1e-13, panel_budget=40)

    def test_tolerance_consistency(self):
        # halving tol never moves the result by more than the looser tol
        f = lambda xs: density_floats(OscillatorMode(30), xs)
        a = OscillatorMode(30).nu
        vals = {tol: integrate_decaying(f, a, tol).value for tol in (1e-9, 1e-10, 1e-13)}
        assert abs(vals[1e-9] - vals[1e-10]) <= 1e-9 * max(abs(vals[1e-10]), 1.0)
        assert abs(vals[1e-10] - vals[1e-13]) <= 1e-10 * max(abs(vals[1e-13]), 1.0)

    def test_panel_layout_invariance(self):
        f = lambda x: np.exp(-x * x)
        base = integrate_decaying(f, 1.0, 1e-12)
        wide = integrate_decaying(f, 1.0, 1e-12, first_width=2.0)
        assert abs(base.value - wide.value) <= 2e-12 * max(abs(base.value), 1.0)

    def test_tail_threshold_invariance(self, monkeypatch):
        import qhotunnel.quadrature as quad

        f = lambda x: np.exp(-x * x)
        base = integrate_decaying(f, 1.0, 1e-12)
        monkeypatch.setattr(quad, "_TAIL_FRACTION", quad._TAIL_FRACTION / 10.0)
        strict = integrate_decaying(f, 1.0, 1e-12)
        assert strict.tail_cut >= base.tail_cut
        assert abs(base.value - strict.value) <= 2e-12 * max(abs(base.value), 1.0)


class TestTunnelProbabilityExact:
    def test_ground_state_is_erfc_one(self):
        assert tunnel_probability_exact(OscillatorMode(0), 1e-13) == pytest.approx(
            FROZEN["erfc_1"], abs=1e-12
        )

    def test_published_values(self):
        assert tunnel_probability_exact(OscillatorMode(10), 1e-13) == pytest.approx(
            0.0601438, abs=5e-8
        )
        assert tunnel_probability_exact(OscillatorMode(800), 1e-13) == pytest.approx(
            0.0144138, abs=5e-8
        )

    def test_monotone_decreasing_in_n(self):
        values = [tunnel_probability_exact(OscillatorMode(n), 1e-11) for n in range(21)]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestNormalisation:
    @pytest.mark.parametrize("n", [0, 1, 10, 100, 800])
    def test_density_normalised(self, n):
        mode = OscillatorMode(n)
        f = lambda xs: density_floats(mode, xs)
        inner = integrate_finite(f, 0.0, mode.nu, 1e-12)
        outer = integrate_decaying(f, mode.nu, 1e-12)
        total = 2.0 * (inner.value + outer.value)
        assert total == pytest.approx(1.0, abs=1e-11)
