import math

import mpmath
import numpy as np
import pytest
from scipy import integrate

from hkrenorm import heatkernel as hk


class TestKernelRn:
    def test_coincidence_normalization(self):
        assert hk.kernel_rn(1 / (4 * math.pi), [0.0], [0.0], 1) == pytest.approx(1.0, abs=1e-15)

    def test_unit_mass(self):
        for n, t in ((1, 0.3), (2, 0.05)):
            if n == 1:
                val, _ = integrate.quad(lambda y: hk.kernel_rn(t, [0.2], [y], 1), -np.inf, np.inf)
            else:
                val, _ = integrate.dblquad(
                    lambda y2, y1: hk.kernel_rn(t, [0.1, -0.2], [y1, y2], 2),
                    -np.inf, np.inf, -np.inf, np.inf, epsabs=1e-10)
            assert val == pytest.approx(1.0, abs=1e-8)

    def test_semigroup(self):
        s, t = 0.21, 0.34
        x, y = 0.15, -0.4
        val, _ = integrate.quad(
            lambda z: hk.kernel_rn(s, [x], [z], 1) * hk.kernel_rn(t, [z], [y], 1),
            -np.inf, np.inf)
        assert val == pytest.approx(float(hk.kernel_rn(s + t, [x], [y], 1)), rel=1e-6)

    def test_positive_time_required(self):
        with pytest.raises(ValueError):
            hk.kernel_rn(0.0, [0.0], [0.0], 1)

    def test_heat_equation_residual(self):
        # d/dt K = Laplacian_x K (positive-Laplacian convention)
        t0, x0, y0 = 0.4, 0.3, -0.2
        h = 1e-4
        dt = (hk.kernel_rn(t0 + h, [x0], [y0], 1) - hk.kernel_rn(t0 - h, [x0], [y0], 1)) / (2 * h)
        dxx = (hk.kernel_rn(t0, [x0 + h], [y0], 1) - 2 * hk.kernel_rn(t0, [x0], [y0], 1)
               + hk.kernel_rn(t0, [x0 - h], [y0], 1)) / h**2
        assert abs(dt - dxx) < 1e-6


class TestKernelHn:
    def test_boundary_zero_exact(self):
        assert hk.kernel_hn(0.3, [0.5, 0.7], [1.0, 0.0], 2) == 0.0

    def test_far_from_boundary(self):
        t = 0.01
        x, y = [0.2, 2.0], [0.5, 2.2]
        full = float(hk.kernel_rn(t, x, y, 2))
        half = float(hk.kernel_hn(t, x, y, 2))
        # image correction bounded by exp(-x_n y_n / t)
        assert abs(full - half) <= full * math.exp(-2.0 * 2.2 / t) * 1e3
        assert half == pytest.approx(full, rel=1e-6)

    def test_odd_reflection_symmetry(self):
        # the image formula extends oddly through the boundary
        t = 0.2
        x = np.array([0.3, 0.8])
        for yn in (0.4, 1.1):
            plus = hk.kernel_rn(t, x, [0.1, yn], 2) - hk.kernel_rn(t, x, [0.1, -yn], 2)
            minus = hk.kernel_rn(t, x, [0.1, -yn], 2) - hk.kernel_rn(t, x, [0.1, yn], 2)
            assert plus == -minus

    def test_delta_property(self):
        # integral over the half space against a bump approaches the bump value
        x = [0.4]
        bump = lambda u: np.exp(-1.0 / (1 - (u - 0.4) ** 2 / 0.09)) * (np.abs(u - 0.4) < 0.3)
        target = float(bump(np.array(0.4)))
        errs = []
        for t in (1e-2, 1e-3, 1e-4):
            val, _ = integrate.quad(lambda u: float(hk.kernel_hn(t, x, [u], 1)) * float(bump(np.array(u))),
                                    0.0, 1.0, limit=300)
            errs.append(abs(val - target))
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 1e-3

    def test_negative_normal_rejected(self):
        with pytest.raises(ValueError):
            hk.kernel_hn(0.1, [0.2, -0.1], [0.0, 0.5], 2)

    def test_heat_equation_residual_halfspace(self):
        t0, x, y = 0.3, [0.4], [0.9]
        h = 1e-4
        dt = (hk.kernel_hn(t0 + h, x, y, 1) - hk.kernel_hn(t0 - h, x, y, 1)) / (2 * h)
        dxx = (hk.kernel_hn(t0, [x[0] + h], y, 1) - 2 * hk.kernel_hn(t0, x, y, 1)
               + hk.kernel_hn(t0, [x[0] - h], y, 1)) / h**2
        assert abs(dt - dxx) < 1e-6


class TestDerivativePolynomials:
    def test_first_two_orders(self):
        from fractions import Fraction
        p1 = hk.derivative_poly(0, 1)
        assert p1.poly == ((1, 1, Fraction(-1, 2)),)
        p2 = hk.derivative_poly(0, 2)
        assert dict(((d, tp), c) for d, tp, c in p2.poly) == {
            (2, 2): Fraction(1, 4), (0, 1): Fraction(-1, 2)}

    def test_degree_and_leading_term(self):
        from fractions import Fraction
        for k in range(1, 9):
            p = hk.derivative_poly(0, k)
            assert p.degree_in_inv_t() == k
            lead = p.leading_inv_t_term()
            assert lead == ((k, k, Fraction((-1) ** k, 2**k)),)

    def test_f_sequence_sum_matches(self):
        for k in range(0, 9):
            a = hk.derivative_poly(0, k)
            b = hk.derivative_poly_from_sequences(0, k)
            assert a.poly == b.poly

    def test_against_high_precision_differentiation(self):
        # mpmath numeric differentiation as the oracle, 1e-7 for k <= 6
        t, xi, yi = 0.37, 0.45, 0.1
        with mpmath.workdps(40):
            f = lambda u: mpmath.exp(-(u - yi) ** 2 / (4 * t)) / mpmath.sqrt(4 * mpmath.pi * t)
            for k in range(1, 7):
                oracle = float(mpmath.diff(f, xi, k))
                p = hk.derivative_poly(0, k)
                mine = p.eval_coeff(t, xi - yi) * float(hk.kernel_rn(t, [xi], [yi], 1))
                assert mine == pytest.approx(oracle, rel=1e-7)

    def test_order_cap(self):
        with pytest.raises(ValueError):
            hk.derivative_poly(0, 13)


class TestPropagator:
    def test_symmetry(self):
        a = hk.propagator(0.01, 1.5, [0.3], [0.8], 1)
        b = hk.propagator(0.01, 1.5, [0.8], [0.3], 1)
        assert a == b

    def test_monotone_in_L(self):
        vals = [hk.propagator(0.01, L, [0.0], [0.5], 1) for L in (0.5, 1.0, 2.0)]
        assert vals[0] < vals[1] < vals[2]

    def test_closed_form_erf_oracle(self):
        import sympy as sp
        eps, L, x, y = 0.04, 1.7, 0.3, 0.9
        tt, c = sp.symbols("t c", positive=True)
        closed = sp.integrate(sp.exp(-c / tt) / sp.sqrt(4 * sp.pi * tt), (tt, sp.Rational(1, 25), sp.Rational(17, 10)))
        expect = float(closed.subs(c, (x - y) ** 2 / 4))
        assert hk.propagator(eps, L, [x], [y], 1) == pytest.approx(expect, rel=1e-9)

    def test_halfspace_smaller_than_plane(self):
        # image subtraction reduces the propagator near the boundary
        p_plane = hk.propagator(0.01, 1.0, [0.2], [0.4], 1)
        p_half = hk.propagator(0.01, 1.0, [0.2], [0.4], 1, geometry="halfspace")
        assert p_half < p_plane

    def test_domain(self):
        with pytest.raises(ValueError):
            hk.propagator(0.5, 0.5, [0.0], [1.0], 1)
        with pytest.raises(ValueError):
            hk.propagator(0.1, 1.0, [0.0], [1.0], 1, geometry="sphere")
