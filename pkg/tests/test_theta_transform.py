import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from divisorlab import theta_transform as tt
from divisorlab.errors import DomainError, ResourceError

SELF_DUAL = 1.0864348112133080  # sum of exp(-pi j^2) over all integers j


class TestSpec:
    def test_domain(self):
        with pytest.raises(DomainError):
            tt.ThetaSpec(v=-1.0, b=0.0, m0=0, x=0.0)
        with pytest.raises(DomainError):
            tt.ThetaSpec(v=complex(0.0, 2.0), b=0.0, m0=0, x=0.0)
        with pytest.raises(DomainError):
            tt.ThetaSpec(v=1.0, b=0.0, m0=-1, x=0.0)


class TestDirectSum:
    def test_self_dual_value(self):
        got = tt.psi_direct(tt.ThetaSpec(v=1.0, b=0.0, m0=0, x=0.0))
        assert got.real == pytest.approx(SELF_DUAL, abs=1e-14)
        assert got.imag == pytest.approx(0.0, abs=1e-16)

    def test_against_mpmath(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        want = float(mp.jtheta(3, 0, mp.exp(-mp.pi)))
        got = tt.psi_direct(tt.ThetaSpec(v=1.0, b=0.0, m0=0, x=0.0))
        assert got.real == pytest.approx(want, abs=1e-14)

    def test_odd_weight_cancels(self):
        got = tt.psi_direct(tt.ThetaSpec(v=1.0, b=0.0, m0=1, x=0.0))
        assert abs(got) <= 1e-16

    def test_complex_spec_converges(self):
        spec = tt.ThetaSpec(v=complex(2.0, 1.0), b=0.3, m0=2, x=complex(0.1, 0.05))
        got = tt.psi_direct(spec)
        assert np.isfinite(got.real) and np.isfinite(got.imag)
        # truncation-insensitive at the envelope target
        wide = tt.psi_direct(spec, j_trunc=60)
        assert abs(got - wide) <= 1e-15 * (1 + abs(got))

    def test_zero_base_power_zero(self):
        # j + b = 0 contributes (j+b)^0 = 1, not NaN
        got = tt.psi_direct(tt.ThetaSpec(v=1.0, b=0.0, m0=0, x=0.0), j_trunc=0)
        assert got == pytest.approx(1.0)


class TestPolynomialWeight:
    def test_degree_zero(self):
        spec = tt.ThetaSpec(v=complex(2.0, -0.4), b=0.1, m0=0, x=complex(0.3, 0.2))
        assert tt.p_weight(spec, 5) == 1.0

    def test_degree_one(self):
        spec = tt.ThetaSpec(v=complex(1.5, 0.2), b=0.0, m0=1, x=complex(0.4, -0.1))
        want = complex(1.5, 0.2) * 1j * (spec.x + 3)
        assert tt.p_weight(spec, 3) == pytest.approx(want)

    def test_degree_two(self):
        v, x, j = complex(0.8, 0.3), complex(-0.2, 0.15), 2
        spec = tt.ThetaSpec(v=v, b=0.0, m0=2, x=x)
        want = (v * 1j * (x + j)) ** 2 + v / (2 * math.pi)
        assert tt.p_weight(spec, j) == pytest.approx(want, rel=1e-14)

    @pytest.mark.parametrize("m0", range(0, 9))
    def test_matches_gaussian_quadrature(self, m0):
        v, x, j = complex(1.3, -0.6), complex(0.25, 0.1), 1
        spec = tt.ThetaSpec(v=v, b=0.0, m0=m0, x=x)

        def integrand_part(theta, part):
            val = cmath.exp(-math.pi * theta * theta) * (
                v * 1j * (x + j) + cmath.sqrt(v) * theta
            ) ** m0
            return val.real if part == 0 else val.imag

        re = quad(integrand_part, -8, 8, args=(0,), epsabs=1e-14, limit=300)[0]
        im = quad(integrand_part, -8, 8, args=(1,), epsabs=1e-14, limit=300)[0]
        got = tt.p_weight(spec, j)
        assert got == pytest.approx(complex(re, im), rel=1e-12, abs=1e-13)


class TestTransformedSum:
    def test_width_four_pair(self):
        # (1/sqrt V) sum exp(-pi j^2/V) at V=4 equals sum exp(-4 pi j^2)
        lhs = tt.psi_direct(tt.ThetaSpec(v=4.0, b=0.0, m0=0, x=0.0))
        rhs = tt.psi_transformed(tt.ThetaSpec(v=4.0, b=0.0, m0=0, x=0.0))
        direct_half = math.fsum(math.exp(-math.pi * j * j / 4) / 2 for j in range(-40, 41))
        direct_dual = math.fsum(math.exp(-4 * math.pi * j * j) for j in range(-40, 41))
        assert lhs.real == pytest.approx(direct_half, abs=1e-14)
        assert rhs.real == pytest.approx(direct_dual, abs=1e-14)
        assert abs(lhs - rhs) <= 1e-13

    def test_spec_example(self):
        spec = tt.ThetaSpec(v=complex(1.7, -0.3), b=0.25, m0=3, x=0.4)
        lhs = tt.psi_direct(spec)
        rhs = tt.psi_transformed(spec)
        assert abs(lhs - rhs) < 1e-10


class TestVerify:
    def test_self_dual_residual(self):
        rep = tt.verify_theta(tt.ThetaSpec(v=1.0, b=0.0, m0=0, x=0.0))
        assert rep.passed and rep.abs_residual < 1e-14

    def test_sweep(self):
        reports = tt.theta_sweep(100, seed=11)
        assert all(r.passed for r in reports)

    def test_modular_tradeoff(self):
        # width V controls which side is cheap: small V kills the direct
        # Gaussian immediately and widens the dual one, and vice versa
        narrow = tt.verify_theta(tt.ThetaSpec(v=0.05, b=0.0, m0=0, x=0.5))
        assert narrow.passed
        assert narrow.lhs_terms < narrow.rhs_terms
        wide = tt.verify_theta(tt.ThetaSpec(v=20.0, b=0.0, m0=0, x=0.5))
        assert wide.passed
        assert wide.rhs_terms < wide.lhs_terms

    def test_resource_cap(self):
        spec = tt.ThetaSpec(v=1e-7, b=0.0, m0=0, x=0.0)
        with pytest.raises(ResourceError):
            tt.verify_theta(spec, max_terms=100)


class TestStructure:
    def test_shift_b_reindexes(self):
        # b -> b+1 with j -> j-1 multiplies the sum by e(-x)
        spec = tt.ThetaSpec(v=complex(1.2, 0.4), b=0.3, m0=2, x=complex(0.2, 0.05))
        shifted = tt.ThetaSpec(v=spec.v, b=spec.b + 1.0, m0=2, x=spec.x)
        lhs = tt.psi_direct(shifted)
        rhs = cmath.exp(-2j * math.pi * spec.x) * tt.psi_direct(spec)
        assert abs(lhs - rhs) <= 1e-12 * (1 + abs(rhs))

    def test_large_width_single_term_dominates(self):
        x = 0.3
        vals = []
        for v in (10.0, 20.0, 40.0):
            spec = tt.ThetaSpec(v=v, b=0.0, m0=0, x=x)
            total = tt.psi_transformed(spec)
            lead = math.exp(-math.pi * v * x * x)
            vals.append(abs(total - lead) / lead)
        # relative weight of the non-nearest terms decays monotonically
        assert vals[0] > vals[1] > vals[2]
