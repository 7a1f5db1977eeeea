import math
import random

import numpy as np
import pytest

from qhotunnel.oscillator import (
    OscillatorMode,
    ScaledValue,
    density_floats,
    eval_density,
    eval_psi,
    eval_psi_grid,
    rel_diff,
)

from ._oracles import FROZEN


def hermite_coefficients(n):
    """Integer coefficient lists of H_0..H_n from the raw recurrence."""
    hs = [[1], [0, 2]]
    for k in range(1, n):
        prev, cur = hs[-2], hs[-1]
        nxt = [0] * (k + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= 2 * k * c
        hs.append(nxt)
    return hs


def psi_reference(n, x, coeffs):
    H = sum(c * x**i for i, c in enumerate(coeffs[n]))
    norm = math.pi**-0.25 / math.sqrt(2.0**n * math.factorial(n))
    return norm * math.exp(-0.5 * x * x) * H


class TestMode:
    def test_nu_squared(self):
        for n in (0, 1, 5, 100, 2000):
            mode = OscillatorMode(n)
            assert abs(mode.nu**2 - (2 * n + 1)) <= 2**-50 * (2 * n + 1)

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            OscillatorMode(-1)


class TestScaledValue:
    def test_zero_canonical(self):
        assert ScaledValue.from_float(0.0) == ScaledValue(0.0, 0)

    def test_round_trip(self):
        for v in (1.0, -0.75, 3.14159e-200, -2.5e250):
            sv = ScaledValue.from_float(v)
            assert sv.is_normalized
            assert sv.to_float() == v

    def test_square_normalized(self):
        for v in (0.9, -1.7e-160, 5.0e-300):
            sq = ScaledValue.from_float(v).square()
            assert sq.is_normalized
            assert sq.to_float() == pytest.approx(v * v, rel=1e-15)

    def test_square_survives_double_underflow(self):
        sq = ScaledValue.from_float(1e-300).square()
        assert sq.mantissa != 0.0
        assert sq.log2() == pytest.approx(2 * math.log2(1e-300), rel=1e-12)


class TestEvalPsi:
    def test_ground_state_at_origin(self):
        v = eval_psi(OscillatorMode(0), 0.0)
        assert float(v) == pytest.approx(FROZEN["pi_quarter_inv"], rel=1e-15)

    def test_first_state_odd(self):
        assert eval_psi(OscillatorMode(1), 0.0) == ScaledValue(0.0, 0)

    def test_against_explicit_hermite(self):
        coeffs = hermite_coefficients(12)
        for n in range(13):
            for x in (-5.0, -2.3, -0.7, 0.0, 0.31, 1.9, 4.2, 5.0):
                ref = psi_reference(n, x, coeffs)
                got = float(eval_psi(OscillatorMode(n), x))
                if ref == 0.0:
                    assert got == 0.0
                else:
                    assert got == pytest.approx(ref, rel=1e-12)

    def test_parity(self):
        rng = random.Random(7)
        for n in (0, 1, 13, 137, 1000):
            mode = OscillatorMode(n)
            sign = (-1) ** n
            for _ in range(25):
                x = rng.uniform(0.0, mode.nu + 10.0)
                plus = eval_psi(mode, x)
                minus = eval_psi(mode, -x)
                if plus.mantissa == 0.0:
                    assert minus.mantissa == 0.0
                    continue
                flipped = ScaledValue(sign * minus.mantissa, minus.exponent)
                assert rel_diff(flipped, plus) <= 1e-13

    def test_no_zeros_beyond_turning_point(self):
        for n in (3, 40, 400):
            mode = OscillatorMode(n)
            xs = np.linspace(mode.nu * (1 + 1e-9), mode.nu + 12.0, 300)
            m, e = eval_psi_grid(mode, xs)
            assert np.all(m != 0.0)
            assert np.all(np.sign(m) == np.sign(m[0]))
            logs = np.log2(np.abs(m)) + e
            assert np.all(np.diff(logs) < 0.0)


class TestEvalDensity:
    def test_ground_state(self):
        v = eval_density(OscillatorMode(0), 0.0)
        assert float(v) == pytest.approx(FROZEN["pi_half_inv"], rel=1e-14)

    def test_odd_state_zero(self):
        assert eval_density(OscillatorMode(1), 0.0) == ScaledValue(0.0, 0)

    def test_deep_tail_against_highprecision(self):
        v = eval_density(OscillatorMode(50), 15.0)
        assert 0.0 < float(v) < 1e-32
        assert float(v) == pytest.approx(FROZEN["density_50_15"], rel=1e-13)

    def test_density_floats_underflow_to_zero(self):
        mode = OscillatorMode(100)
        vals = density_floats(mode, np.array([mode.nu, mode.nu + 60.0]))
        assert vals[0] > 0.0
        assert vals[1] == 0.0  # far beyond double range, by design
