"""Weight-function transforms and the Betti-identity evaluation of the
crack-tip traction constant sigma0, plus the perfect-interface comparison.

With unit normalization the weight-function transforms are

    Phi^-  = -xi_-^{1/2} / (kappa pi mu0 Xi_*^- Xi_0^- xi)      (tractions)
    Phi^+  = Xi_0^+ Xi_*^+ / (xi xi_+^{1/2})                    (jump, x>0 part)
    [U]    = 1 / (pi Xi_*^- Xi_0^- xi_+^{1/2} xi)               (displacement jump)
    <U>    = -(mu_*/2) [U]                                      (mean displacement)

and the Betti identity gives

    sigma0 = (1/2) sqrt(mu0/pi) int xi ([U] <p> + <U> [p]) dxi

over the real line. The integrand is O(xi_+^{-1/2}) at 0 (removed by the
xi = s^2 substitution) and O(1/xi) times the load oscillation at infinity;
the oscillatory tail past X is summed by integration-by-parts asymptotics
per load component, smooth-load tails decay algebraically and are bounded
from the declared decay exponent.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, UnsupportedLoad
from .kernel import KernelFactors, xi_minus_half, xi_plus_half
from .model import Bimaterial, CrackLoad, derive_params
from .numerics import (QuadratureSpec, SpectralSample, integrate_err,
                       oscillatory_tail)


class WeightField:
    """Weight-function transforms for one material/reference-length pair."""

    normalization = 1.0  # the weight function is defined up to this scalar

    def __init__(self, material: Bimaterial, a=1.0, spec=None, kernel=None,
                 use_cache=True):
        self.material = material
        self.params = derive_params(material, a)
        self.spec = spec or QuadratureSpec()
        self.kernel = kernel or KernelFactors(
            self.params.mu0, quadrature=self.spec, use_cache=use_cache)
        self.kappa = material.kappa
        self.mu_star = self.params.mu_star

    def phi_minus(self, xi):
        """Transform of the weight-function interface tractions (minus fn)."""
        arr = self.kernel._checked(xi)
        k = self.kernel
        out = -xi_minus_half(arr) / (
            self.kappa * math.pi * k.mu0 * k.xi_star_minus(arr)
            * k.xi0_minus(arr) * arr)
        return out if np.ndim(xi) else complex(out)

    def phi_plus(self, xi):
        """Transform of the x>0 part of the displacement jump (plus fn)."""
        arr = self.kernel._checked(xi)
        k = self.kernel
        out = k.xi0_plus(arr) * k.xi_star_plus(arr) / (arr * xi_plus_half(arr))
        return out if np.ndim(xi) else complex(out)

    def jump_u(self, xi):
        """Transform of the full displacement jump across the interface line."""
        arr = self.kernel._checked(xi)
        k = self.kernel
        out = 1.0 / (math.pi * k.xi_star_minus(arr) * k.xi0_minus(arr)
                     * xi_plus_half(arr) * arr)
        return out if np.ndim(xi) else complex(out)

    def avg_u(self, xi):
        """Transform of the mean displacement; equals -(mu_*/2) jump_u."""
        out = -(0.5 * self.mu_star) * self.jump_u(xi)
        return out if np.ndim(xi) else complex(out)

    def wiener_hopf_residual(self, xi):
        """|Phi^+ + kappa Xi Phi^-| / |Phi^+| (vanishes identically in theory)."""
        arr = self.kernel._checked(xi)
        p = self.phi_plus(arr)
        res = np.abs(p + self.kappa * self.kernel.xi(arr) * self.phi_minus(arr))
        out = res / np.abs(p)
        return out if np.ndim(xi) else float(out)


@dataclass
class Sigma0Result:
    sigma0: float
    est_error: float
    integral: complex
    integrand_profile: Optional[Sequence[SpectralSample]] = None


def _combined_components(load: CrackLoad, mu_star):
    """Oscillation components of <p> - (mu_*/2)[p] (the jump_u prefactor)."""
    weights = {}
    for coeff, shift in load.osc_avg or ():
        weights[shift] = weights.get(shift, 0.0) + coeff
    for coeff, shift in load.osc_jump or ():
        weights[shift] = weights.get(shift, 0.0) - 0.5 * mu_star * coeff
    return sorted(weights.items())


def _geometric_seeds(lo, hi, per_octave=1):
    seeds = []
    q = lo
    while q < hi:
        seeds.append(q)
        q *= 2.0 ** (1.0 / per_octave)
    return seeds


def _spectral_half(field: WeightField, load: CrackLoad, sign, spec):
    """int_0^inf f(sign u) du of f(xi) = xi([U]<p> + <U>[p]), split as
    s^2-substituted head, panelled midrange, and analytic tail."""
    mu0 = field.kernel.mu0

    def f(xi):
        avg_p, jump_p = load.transforms(xi)
        return xi * (field.jump_u(xi) * avg_p + field.avg_u(xi) * jump_p)

    def f_signed(u):
        return f(sign * u)

    xi_c = min(mu0, math.pi / load.phase_scale)

    def f_head(s):
        return f_signed(s * s) * 2.0 * s

    s_max = math.sqrt(xi_c)
    head, e_head = integrate_err(
        f_head, 0.0, s_max, spec,
        breakpoints=[s_max * 2.0 ** (-k) for k in range(1, 26)])

    stretch = max(1.0, spec.truncation_radius / 1e4)
    oscillatory = bool(load.osc_avg or load.osc_jump)
    if oscillatory:
        shifts = [s for _, s in load.osc_avg + load.osc_jump]
        c_min, c_max = min(shifts), max(shifts)
        x_cut = max(4.0 * xi_c, 100.0 / c_min) * stretch
        width = max(math.pi / c_max, (x_cut - xi_c) / 3000.0)
        seeds = set(_geometric_seeds(xi_c, x_cut))
        seeds.update(np.arange(xi_c + width, x_cut, width).tolist())
        mid, e_mid = integrate_err(f_signed, xi_c, x_cut, spec,
                                   breakpoints=sorted(seeds))

        def envelope(u):
            ss = sign * u
            return ss * field.jump_u(ss)

        tail = 0.0 + 0.0j
        e_tail = 0.0
        for shift, w in _combined_components(load, field.mu_star):
            if w == 0.0:
                continue
            v, r = oscillatory_tail(envelope, -shift * sign, x_cut, spec)
            tail += w * v
            e_tail += abs(w) * r
    else:
        x_cut = max(4.0 * xi_c, 20.0 * mu0, 1e5 / load.reference_length) * stretch
        mid, e_mid = integrate_err(f_signed, xi_c, x_cut, spec,
                                   breakpoints=_geometric_seeds(xi_c, x_cut))
        tail = 0.0 + 0.0j
        delta = load.decay_exponent or 1.0
        e_tail = abs(complex(np.asarray(f_signed(np.array([x_cut])))[0])) * x_cut / delta

    return head + mid + tail, e_head + e_mid + e_tail


def sigma0(load: CrackLoad, material: Bimaterial, spec=None, *, field=None,
           profile=False) -> Sigma0Result:
    """Crack-tip traction constant of the unperturbed problem via the Betti
    identity. Both half-lines are integrated independently, so the imaginary
    residue of the result is a genuine symmetry diagnostic (folded into
    est_error)."""
    load.check_self_balance()
    spec = spec or QuadratureSpec()
    if field is None:
        field = WeightField(material, a=load.reference_length, spec=spec)
    pos, e_pos = _spectral_half(field, load, +1.0, spec)
    neg, e_neg = _spectral_half(field, load, -1.0, spec)
    front = 0.5 * math.sqrt(field.kernel.mu0 / math.pi)
    total = front * (pos + neg)
    est = front * (e_pos + e_neg) + abs(total.imag)
    samples = None
    if profile:
        mu0 = field.kernel.mu0
        grid = np.geomspace(1e-3 * mu0, max(1e3 * mu0, 200.0 / load.phase_scale), 400)
        avg_p, jump_p = load.transforms(grid)
        vals = grid * (field.jump_u(grid) * avg_p + field.avg_u(grid) * jump_p)
        samples = [SpectralSample(float(x), complex(v)) for x, v in zip(grid, vals)]
    return Sigma0Result(sigma0=float(total.real), est_error=float(est),
                        integral=complex(total), integrand_profile=samples)


def k3_perfect(load: CrackLoad, material: Bimaterial, spec=None):
    """Perfect-interface stress intensity factor for the same loading:
    -sqrt(2/pi) int_0^inf {<p>(-r) - (mu_*/2)[p](-r)} r^{-1/2} dr,
    closed form for the point triple, quadrature for smooth loads.

    The -mu_*/2 jump weight makes the bracket the exact kappa->0 limit
    functional of sigma0 (sigma0 -> sqrt(mu0/pi) * bracket moment), and is
    fixed independently by the rigid-lower-half-plane limit: at mu_* = -1
    the bracket must reduce to the upper-face load alone.
    """
    c = -material.mu_star
    if load.kind == "point-triple":
        F, a, b = load.F, load.a, load.b
        avg_m = 0.5 * F * (a ** -0.5 + 0.5 * ((a + b) ** -0.5 + (a - b) ** -0.5))
        jump_m = F * (a ** -0.5 - 0.5 * ((a + b) ** -0.5 + (a - b) ** -0.5))
        return -math.sqrt(2.0 / math.pi) * (avg_m + 0.5 * c * jump_m)
    if load.x_avg is None or load.x_jump is None:
        raise UnsupportedLoad(
            "k3_perfect needs an x-domain form (point-triple or smooth loads)")
    spec = spec or QuadratureSpec()

    def f(s):
        r = s * s
        return 2.0 * (load.x_avg(-r) + 0.5 * c * load.x_jump(-r))

    val, _ = integrate_err(f, 0.0, 12.0, spec,
                           breakpoints=[2.0 ** (-k) for k in range(1, 20)])
    return -math.sqrt(2.0 / math.pi) * float(val.real)


def ratio_r(kappa_star, mu_star_1, mu_star_2, load: CrackLoad, spec=None):
    """r = [sigma0(pair1)/sigma0(pair2)] / [K3(pair1)/K3(pair2)] at one
    kappa_star.

    The pairs share the compliance kappa = kappa_star a / 2 (the mu_*=0
    reference conversion) and are normalised to a common harmonic mean,
    1/mu1 + 1/mu2 = 2, which makes mu0 = 2/kappa identical for both. Since
    sigma0 -> sqrt(mu0/pi) * (K-moment) as the interface becomes perfect,
    matched mu0 is the one normalisation under which r -> 1; with any other
    pairing mu0 differs between pairs (mu0 kappa_star a = 4/(1-mu_*^2)
    identically) and r -> sqrt((1-mu_*2^2)/(1-mu_*1^2)) instead."""
    if not kappa_star > 0:
        raise DomainError("kappa_star must be positive")
    a = load.reference_length
    kappa = kappa_star * a / 2.0

    def pair(ms):
        return Bimaterial(mu1=1.0 / (1.0 - ms), mu2=1.0 / (1.0 + ms), kappa=kappa)

    m1 = pair(mu_star_1)
    m2 = pair(mu_star_2)
    s1 = sigma0(load, m1, spec).sigma0
    s2 = sigma0(load, m2, spec).sigma0
    k1 = k3_perfect(load, m1, spec)
    k2 = k3_perfect(load, m2, spec)
    if s2 == 0.0 or k2 == 0.0 or k1 == 0.0:
        raise ZeroDivisionError("sigma0 or K_III vanishes in the ratio")
    return (s1 / s2) / (k1 / k2)
