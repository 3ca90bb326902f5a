"""Reusable numerical kernels: adaptive panel quadrature, principal-value
integrals with singularity subtraction, oscillatory half-line Fourier
transforms, and principal-branch complex log-gamma.

Integrand callables are expected to accept numpy arrays (scalar-only
callables are wrapped transparently). All routines are pure functions of
their arguments and safe to call concurrently.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import (DomainError, NonConvergence, NonFiniteSample, PoleError,
                     TailBoundExceeded)

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets shared by every quadrature-facing operation."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 4000
    truncation_radius: float = 1e4

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be > 0")
        if self.abs_tol < 0:
            raise DomainError("abs_tol must be >= 0")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")
        if not self.truncation_radius > 0:
            raise DomainError("truncation_radius must be > 0")

    def tolerance(self, magnitude):
        return max(self.abs_tol, self.rel_tol * abs(magnitude))


def default_spec(mu0=None, a=None):
    """Default tolerances with the truncation radius 1e4*max(mu0, 1/a)."""
    scale = max(mu0 if mu0 else 1.0, 1.0 / a if a else 1.0)
    return QuadratureSpec(truncation_radius=1e4 * scale)


class SpectralSample(NamedTuple):
    """One (xi, value) record of a transform-domain function."""

    xi: float
    value: complex


def _vectorized(f):
    def call(x):
        try:
            v = np.asarray(f(x), dtype=complex)
            if v.shape == x.shape:
                return v
        except (TypeError, ValueError):
            pass
        return np.array([complex(f(float(t))) for t in x])
    return call


def _panel_values(fv, a, b):
    """GL12 values on panels [a_i, b_i], one batched integrand call."""
    mid = 0.5 * (a + b)
    hw = 0.5 * (b - a)
    nodes = (mid[:, None] + hw[:, None] * _GL_NODES[None, :]).ravel()
    vals = fv(nodes).reshape(a.shape[0], _GL_NODES.shape[0])
    if not np.all(np.isfinite(vals)):
        bad = nodes[~np.isfinite(vals).ravel()][:1]
        raise NonFiniteSample(f"integrand returned a non-finite value near x={bad}")
    return (vals @ _GL_WEIGHTS) * hw


def integrate_err(f, lo, hi, spec, breakpoints=None):
    """Adaptive GL12 bisection on [lo, hi]; returns (integral, error estimate).

    The error estimate per panel is |GL12(panel) - GL12(halves)|; panels are
    split worst-first until the summed estimate meets the tolerance.
    """
    lo = float(lo)
    hi = float(hi)
    if hi == lo:
        return 0.0 + 0.0j, 0.0
    if hi < lo:
        v, e = integrate_err(f, hi, lo, spec, breakpoints)
        return -v, e
    fv = _vectorized(f)
    edges = [lo, hi]
    if breakpoints is not None:
        edges.extend(float(p) for p in breakpoints if lo < p < hi)
    edges = np.unique(np.asarray(edges, dtype=float))
    a = edges[:-1]
    b = edges[1:]
    coarse = _panel_values(fv, a, b)
    m = 0.5 * (a + b)
    vl = _panel_values(fv, a, m)
    vr = _panel_values(fv, m, b)
    val = vl + vr
    err = np.abs(val - coarse)
    splits = 0
    while True:
        total = complex(val.sum())
        esum = float(err.sum())
        tol = spec.tolerance(total)
        if esum <= tol:
            return total, esum
        if splits >= spec.max_subdivisions:
            raise NonConvergence(
                f"subdivision budget {spec.max_subdivisions} exhausted "
                f"(err={esum:.3e}, tol={tol:.3e})", value=total, error=esum)
        width_ok = (b - a) > 1e-14 * (np.abs(a) + np.abs(b) + 1e-300)
        order = np.argsort(err)[::-1]
        order = order[width_ok[order]]
        if order.size == 0:
            raise NonConvergence(
                f"panels at floating-point width, err={esum:.3e} above tol={tol:.3e}",
                value=total, error=esum)
        budget = spec.max_subdivisions - splits
        take = order[:max(1, min(order.size // 4 + 1, 64, budget))]
        keep = np.setdiff1d(np.arange(a.shape[0]), take, assume_unique=False)
        na = np.concatenate([a[take], m[take]])
        nb = np.concatenate([m[take], b[take]])
        ncoarse = np.concatenate([vl[take], vr[take]])
        nm = 0.5 * (na + nb)
        nvl = _panel_values(fv, na, nm)
        nvr = _panel_values(fv, nm, nb)
        nval = nvl + nvr
        nerr = np.abs(nval - ncoarse)
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        m = np.concatenate([m[keep], nm])
        vl = np.concatenate([vl[keep], nvl])
        vr = np.concatenate([vr[keep], nvr])
        val = np.concatenate([val[keep], nval])
        err = np.concatenate([err[keep], nerr])
        splits += take.size


def integrate_adaptive(f, lo, hi, spec, breakpoints=None):
    """Adaptive integral of a (possibly complex) integrand over [lo, hi]."""
    value, _ = integrate_err(f, lo, hi, spec, breakpoints=breakpoints)
    return value


def pv_integral_even_logkernel(g, xi, spec):
    """PV int_0^inf g(t)/(t^2 - xi^2) dt for even, decaying g (here g = ln Xi_*).

    Uses the subtraction identity: since PV int_0^inf dt/(t^2-xi^2) = 0, the
    principal value equals int_0^{2xi} [g(t)-g(xi)]/(t^2-xi^2) dt
    - g(xi) ln(3)/(2 xi) + int_{2xi}^inf g(t)/(t^2-xi^2) dt, with the tail
    mapped onto u = 2 xi / t.
    """
    xi = float(xi)
    if xi <= 0:
        raise DomainError("pv_integral_even_logkernel requires xi > 0")
    gv = _vectorized(g)
    gxi = complex(gv(np.array([xi]))[0])

    def near(t):
        return (gv(t) - gxi) / ((t - xi) * (t + xi))

    seeds = [xi * f for f in (0.25, 0.5, 0.75, 0.875, 0.9375,
                              1.0, 1.0625, 1.125, 1.25, 1.5, 1.75)]
    ia, ea = integrate_err(near, 0.0, 2.0 * xi, spec, breakpoints=seeds)

    def mapped_tail(u):
        return 2.0 * gv(2.0 * xi / u) / (xi * (4.0 - u * u))

    useeds = [2.0 ** (-j) for j in range(1, 44)]
    ib, eb = integrate_err(mapped_tail, 0.0, 1.0, spec, breakpoints=useeds)
    value = ia + ib - gxi * math.log(3.0) / (2.0 * xi)
    return float(value.real)


def _series_coefficients(fv, x0, h, degree=6):
    """Taylor coefficients of f around x0 from a symmetric 7-point stencil."""
    k = np.arange(-3, 4, dtype=float)
    y = fv(x0 + k * h)
    p = np.polynomial.polynomial.polyfit(k * h, y, degree)
    return p  # p[n] ~ f^(n)(x0) / n!


def oscillatory_tail(f, omega, x_start, spec):
    """int_{x_start}^inf f(u) e^{i omega u} du by 4-term integration by parts.

    f must be smooth and slowly varying past x_start (no oscillation of its
    own) with |omega| * x_start >> 1. Returns (value, residual estimate).
    """
    if omega == 0.0:
        raise DomainError("oscillatory_tail needs omega != 0")
    fv = _vectorized(f)
    h = x_start / 128.0
    p = _series_coefficients(fv, x_start, h)
    iw = 1j * omega
    phase = np.exp(iw * x_start)
    derivs = [p[n] * math.factorial(n) for n in range(5)]
    value = -phase * sum(derivs[n] * (-1) ** n / iw ** (n + 1) for n in range(4))
    resid = abs(derivs[4]) / abs(omega) ** 5
    return complex(value), float(resid)


def algebraic_tail(f, x_start, spec):
    """int_{x_start}^inf f(u) du for f ~ A/u^2 + B/u^3, by Richardson fit.

    Returns (value, residual estimate); the residual is the spread between
    fits anchored at (x/2, x) and (x/4, x/2).
    """
    fv = _vectorized(f)

    def fit_tail(x):
        ys = fv(np.array([x / 2.0, x]))
        mat = np.array([[(2.0 / x) ** 2, (2.0 / x) ** 3],
                        [(1.0 / x) ** 2, (1.0 / x) ** 3]], dtype=complex)
        ab = np.linalg.solve(mat, ys)
        return ab[0] / x + ab[1] / (2.0 * x * x)

    t1 = fit_tail(x_start)
    t2 = fit_tail(x_start / 2.0) - integrate_adaptive(
        fv, x_start / 2.0, x_start, spec,
        breakpoints=[0.75 * x_start])
    return complex(t1), float(abs(t1 - t2))


def halfline_fourier(f, side, xi, spec):
    """int f(x) e^{i xi x} dx over one half-line, truncated with an explicit
    tail treatment (IBP correction when oscillatory, algebraic fit at xi=0)."""
    value, _ = halfline_fourier_err(f, side, xi, spec)
    return value


def halfline_fourier_err(f, side, xi, spec):
    if side not in ("negative-axis", "positive-axis"):
        raise DomainError(f"side must be 'negative-axis' or 'positive-axis', got {side!r}")
    fv = _vectorized(f)
    if side == "negative-axis":
        g = lambda u: fv(-u)
        omega = -float(xi)
    else:
        g = fv
        omega = float(xi)
    return _halfline_core(g, omega, spec)


def _halfline_core(g, omega, spec):
    """int_0^inf g(u) e^{i omega u} du with adaptive truncation."""
    x_max = spec.truncation_radius
    if omega != 0.0:
        # the IBP tail is as good from a short truncation as a long one, so
        # keep the half-period panel count bounded; the residual check below
        # grows x_max back if g still has structure out there
        x_max = min(x_max, 3200.0 * math.pi / abs(omega))
        x_max = max(x_max, 16.0 * math.pi / abs(omega))
    tail_val = 0.0 + 0.0j
    tail_err = None
    for _ in range(16):
        raw = abs(complex(g(np.array([x_max]))[0])) * x_max
        if raw <= spec.abs_tol:
            tail_val, tail_err = 0.0 + 0.0j, raw
            break
        if omega == 0.0:
            tail_val, tail_err = algebraic_tail(g, x_max, spec)
        elif abs(omega) * x_max >= 8.0 * math.pi:
            tail_val, tail_err = oscillatory_tail(g, omega, x_max, spec)
        else:
            x_max *= 2.0
            continue
        if tail_err <= spec.abs_tol:
            break
        x_max *= 2.0
        tail_err = None
    if tail_err is None or tail_err > max(spec.abs_tol, 1e-3 * spec.rel_tol):
        raise TailBoundExceeded(
            f"tail bound {tail_err} above abs_tol={spec.abs_tol} at "
            f"truncation x={x_max:.3e}")

    seeds = {x_max * 2.0 ** (-k) for k in range(1, 47)}
    if omega != 0.0:
        period = 2.0 * math.pi / abs(omega)
        n_osc = int(min(x_max / (0.5 * period), 8000.0))
        seeds.update((j + 1) * 0.5 * period for j in range(n_osc))

    def integrand(u):
        return g(u) * np.exp(1j * omega * u)

    core, core_err = integrate_err(integrand, 0.0, x_max, spec,
                                   breakpoints=sorted(seeds))
    return core + tail_val, core_err + tail_err


def log_gamma(z):
    """Principal-branch log-gamma (recurrence into a Stirling region).

    Relative accuracy ~1e-14 on the strip |Im z| <= 1e4; raises PoleError at
    non-positive integers. Accepts scalars or arrays.
    """
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    on_axis = arr.imag == 0.0
    near_int = np.abs(arr.real - np.round(arr.real)) < 1e-12
    if np.any(on_axis & near_int & (arr.real < 0.5)):
        raise PoleError("log_gamma pole at a non-positive integer")
    out = _kernels.log_gamma_raw(arr).reshape(np.shape(z))
    return out if np.ndim(z) else complex(out[()])
