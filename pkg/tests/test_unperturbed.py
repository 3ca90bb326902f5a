"""Load-driven Wiener-Hopf solution and physical-domain reconstruction."""

import math

import numpy as np
import pytest

from interfrac.errors import DomainError, GeometryError
from interfrac.model import (Bimaterial, CrackLoad, point_triple,
                             smooth_exponential)
from interfrac.unperturbed import UnperturbedSolution


@pytest.fixture(scope="module")
def sol():
    # mu* = 0.5, kappa* = 1 at a = 1, mu0 = 16/3
    return UnperturbedSolution(point_triple(1.0, 1.0, 0.75),
                               Bimaterial(3.0, 1.0, 0.25))


@pytest.fixture(scope="module")
def sol_smooth():
    return UnperturbedSolution(smooth_exponential(), Bimaterial(3.0, 1.0, 0.25))


class TestLambda:
    def test_equal_moduli_constant(self):
        s = UnperturbedSolution(point_triple(1.0, 1.0, 0.5),
                                Bimaterial(1.0, 1.0, 0.5))
        for x in (0.2, -3.0, 50.0):
            assert s.lambda_factor(x) == pytest.approx(0.5)

    def test_limit_at_infinity(self, sol):
        assert sol.lambda_factor(1e9) == pytest.approx(0.5, rel=1e-8)

    def test_substitution(self):
        # mu* = 1/2, mu0 = 1 at (mu1, mu2, kappa) = (3, 1, 4/3); xi = 1
        s = UnperturbedSolution(point_triple(1.0, 1.0, 0.5),
                                Bimaterial(3.0, 1.0, 4.0 / 3.0))
        assert s.lambda_factor(1.0) == pytest.approx(0.25)

    def test_zero_rejected(self, sol):
        with pytest.raises(DomainError):
            sol.lambda_factor(0.0)


class TestPlemeljDecomposition:
    @pytest.mark.parametrize("xi", [0.3, -1.7, 5.0, -20.0, 0.01])
    def test_jump_identity(self, sol, xi):
        lp = sol.l_plus(xi)
        lm = sol.l_minus(xi)
        g = sol.g_rhs(xi)
        assert abs(lp - lm - g) < 1e-8 * abs(g)

    def test_decay_at_infinity(self, sol):
        # L(+-) = O(1/xi)
        v1 = abs(sol.l_plus(50.0))
        v2 = abs(sol.l_plus(400.0))
        assert v2 < v1 * (50.0 / 400.0) * 4.0

    def test_zero_load_gives_zero(self):
        zero = CrackLoad(kind="custom-transform",
                         transform_avg=lambda x: np.zeros_like(np.asarray(x), dtype=complex),
                         transform_jump=lambda x: np.zeros_like(np.asarray(x), dtype=complex),
                         decay_exponent=1.0)
        s = UnperturbedSolution(zero, Bimaterial(3.0, 1.0, 0.25))
        assert s.l_plus(0.7) == 0.0
        a1, a2 = s.a_coeffs(0.7)
        assert a1 == 0.0 and a2 == 0.0

    def test_conjugate_symmetry(self, sol):
        assert sol.phi_plus_load(-1.3) == pytest.approx(
            np.conj(sol.phi_plus_load(1.3)), abs=1e-8)


class TestLoadProblemIdentities:
    @pytest.mark.parametrize("xi", [0.5, -2.2, 8.0])
    def test_wiener_hopf_residual(self, sol, xi):
        avg_p, jump_p = sol.load.transforms(np.array([xi]))
        avg_p, jump_p = complex(avg_p[0]), complex(jump_p[0])
        phi_p = sol.phi_plus_load(xi)
        phi1_m = sol.phi1_minus_load(xi)
        kappa = sol.kappa
        lhs = (-kappa * sol.kernel.xi(xi) * (phi_p + avg_p)
               - phi1_m - kappa * sol.lambda_factor(xi) * jump_p)
        scale = abs(kappa * sol.kernel.xi(xi) * avg_p) + abs(phi1_m)
        assert abs(lhs) < 1e-7 * scale

    def test_phi2_relation(self, sol):
        # phi1 - phi2 = -kappa [p] exactly
        xi = 1.9
        _, jump_p = sol.load.transforms(np.array([xi]))
        diff = sol.phi1_minus_load(xi) - sol.phi2_minus_load(xi)
        assert diff == pytest.approx(-sol.kappa * complex(jump_p[0]), rel=1e-14)

    def test_phi_plus_decays(self, sol):
        assert abs(sol.phi_plus_load(500.0)) < abs(sol.phi_plus_load(5.0)) / 20.0

    @pytest.mark.parametrize("xi", [0.7, -3.0])
    def test_traction_identities(self, sol, xi):
        a1, a2 = sol.a_coeffs(xi)
        a1, a2 = complex(a1), complex(a2)
        avg_p, jump_p = sol.load.transforms(np.array([xi]))
        avg_p, jump_p = complex(avg_p[0]), complex(jump_p[0])
        m = sol.material
        jump_sigma = -abs(xi) * (m.mu1 * a1 + m.mu2 * a2)
        avg_sigma = 0.5 * abs(xi) * (m.mu2 * a2 - m.mu1 * a1)
        assert abs(jump_sigma - jump_p) < 1e-8 * max(1.0, abs(jump_p))
        assert abs(avg_sigma - avg_p - sol.phi_plus_load(xi)) < 1e-8

    @pytest.mark.parametrize("xi", [0.9, -4.0])
    def test_transmission_identity(self, sol, xi):
        # 2[u] - 2 kappa <sigma> = phi1^- + phi2^-
        avg_p, jump_p = sol.load.transforms(np.array([xi]))
        avg_p, jump_p = complex(avg_p[0]), complex(jump_p[0])
        phi_p = sol.phi_plus_load(xi)
        phi1 = sol.phi1_minus_load(xi)
        phi2 = sol.phi2_minus_load(xi)
        jump_u = phi1 + sol.kappa * (phi_p + avg_p) + 0.5 * sol.kappa * jump_p
        avg_sigma = avg_p + phi_p
        res = 2.0 * jump_u - 2.0 * sol.kappa * avg_sigma - phi1 - phi2
        assert abs(res) < 1e-8 * max(1.0, abs(jump_u))

    def test_a_conjugate_symmetry(self, sol):
        a1p, a2p = sol.a_coeffs(2.4)
        a1m, a2m = sol.a_coeffs(-2.4)
        assert complex(a1m) == pytest.approx(np.conj(complex(a1p)), abs=1e-10)
        assert complex(a2m) == pytest.approx(np.conj(complex(a2p)), abs=1e-10)

    def test_grad_integrand_bounded_at_origin(self, sol):
        # the xi -> 0 singularity of A_j is cancelled by the spectral
        # multipliers: |xi A_j| stays bounded (in fact it vanishes like
        # sqrt(xi), since phi+(0) = -<p>(0) exactly)
        xs = np.array([1e-4, 1e-5, 1e-6])
        vals = [abs(complex(sol.a_coeffs(x)[0])) * x for x in xs]
        assert max(vals) < 1.0
        assert vals == sorted(vals, reverse=True)
        phi0 = sol.phi_plus_load(1e-8)
        assert phi0 == pytest.approx(-sol.load.F, abs=5e-3)


class TestGradient:
    def test_linearity_in_force(self, sol_smooth):
        m = sol_smooth.material
        load2 = CrackLoad(
            kind="custom-transform",
            transform_avg=lambda x: 2.0 * sol_smooth.load.transform_avg(x),
            transform_jump=lambda x: 2.0 * sol_smooth.load.transform_jump(x),
            decay_exponent=1.0)
        sol2 = UnperturbedSolution(load2, m)
        g1 = sol_smooth.grad_u0((0.3, 0.9))
        g2 = sol2.grad_u0((0.3, 0.9))
        assert g2[0] == pytest.approx(2 * g1[0], rel=1e-6)
        assert g2[1] == pytest.approx(2 * g1[1], rel=1e-6)

    def test_decay_far_from_tip(self, sol_smooth):
        near = np.hypot(*sol_smooth.grad_u0((0.0, 1.0)))
        far = np.hypot(*sol_smooth.grad_u0((0.0, 40.0)))
        assert far < near / 50.0

    def test_interp_matches_direct_phi(self, sol_smooth):
        sol_smooth._phi_table(50.0)
        for x in (0.3, 4.0, 29.0):
            direct = sol_smooth.phi_plus_load(x)
            cached = sol_smooth.phi_plus_cached(np.array([x]))[0]
            assert abs(cached - direct) < 5e-6 * max(abs(direct), 1e-6)

    def test_geometry_guards(self, sol_smooth):
        with pytest.raises(GeometryError):
            sol_smooth.grad_u0((1.0, 0.0))
        with pytest.raises(GeometryError):
            sol_smooth.grad_u0((1.0, 0.01))  # ~0.6 degrees off the interface
        sol_smooth.grad_u0((1.0, 0.01), min_angle_deg=0.25)

    def test_gradient_against_finite_differences(self, sol_smooth):
        Y = (0.5, 0.8)
        h = 1e-3
        gx, gy = sol_smooth.grad_u0(Y)
        u = {}
        for tag, (dx, dy) in {"e": (h, 0), "w": (-h, 0), "n": (0, h),
                              "s": (0, -h)}.items():
            u[tag] = sol_smooth.u0(Y[0] + dx, Y[1] + dy)
        gmag = math.hypot(gx, gy)
        assert (u["e"] - u["w"]) / (2 * h) == pytest.approx(gx, abs=1e-5 * gmag + 1e-9)
        assert (u["n"] - u["s"]) / (2 * h) == pytest.approx(gy, abs=1e-5 * gmag + 1e-9)

    def test_u0_reference_point_conventions(self, sol_smooth):
        # u0 differences are reference-independent
        a = sol_smooth.u0(0.4, 0.7, ref=(0.0, 1.0)) - sol_smooth.u0(0.1, 0.9, ref=(0.0, 1.0))
        b = sol_smooth.u0(0.4, 0.7, ref=(0.3, 2.0)) - sol_smooth.u0(0.1, 0.9, ref=(0.3, 2.0))
        assert a == pytest.approx(b, abs=1e-9)
        with pytest.raises(GeometryError):
            sol_smooth.u0(0.4, 0.7, ref=(0.0, -1.0))
        with pytest.raises(GeometryError):
            sol_smooth.u0(0.4, 0.0)
