"""Weights, their hat transforms, and the n-variate/univariate duality.

For a weight f the hat transform is fhat(z) = int f(x) / (1 + x z) dx. Given
weights f_1..f_{n+1}, the n-fold integral of the order-(n-1) divided
difference of x^(n-1) fhat_{n+1} against prod f_i(x_i) equals the single
integral of f_{n+1} against prod fhat_i.

Every weight comes with a chart x = x(phi) on a finite interval that makes
the integrand tame (no inverse square roots, no infinite range), and the
weight-times-Jacobian w(phi). All integrals are done in chart coordinates.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .kernels import DEFAULT_CFG, DDConfig, newton_dd
from .multiquad import BoxSpec, integrate_box
from .quad import Fn1D, QuadResult, integrate_adaptive, integrate_de
from .report import VerificationRecord
from .specfun import DomainError

PI = math.pi
_TINY = 4.0 * np.finfo(float).eps


class DivergenceError(ArithmeticError):
    """Both sides of a duality check diverge."""


@dataclass(frozen=True)
class Chart:
    """x = x(phi) on [a, b] with w(phi) = f(x(phi)) x'(phi)."""

    x: Callable
    w: Callable
    a: float
    b: float
    rule: str = "gk"
    identity: bool = False


@dataclass
class StieltjesPair:
    """A weight f on [a, b] and (optionally) its closed-form hat transform.

    ``hat(z, u)`` takes u = 1 - z as an optional exact complement so callers
    integrating up to z = 1 can avoid cancellation. ``weight_blowup`` and
    ``hat_blowup`` map points to algebraic blow-up exponents and are used to
    detect divergent duality integrals before integrating.
    """

    name: str
    f: Fn1D
    chart: Chart
    hat: Optional[Callable] = None
    hat_domain: tuple = (-math.inf, math.inf)
    mass: float = math.inf
    weight_blowup: dict = field(default_factory=dict)
    hat_blowup: dict = field(default_factory=dict)
    notes: str = ""

    @property
    def fhat_closed(self) -> Optional[Fn1D]:
        if self.hat is None:
            return None
        lo, hi = self.hat_domain
        return Fn1D(lambda z: self.hat(z), lo, hi, name=f"hat[{self.name}]")

    def hat_eval(self, z, u=None):
        """Closed form if available, otherwise numeric, at scalar or array z."""
        if self.hat is not None:
            return self.hat(z, u)
        zs = np.atleast_1d(np.asarray(z, dtype=float))
        out = np.array([hat_transform_numeric(self, float(t)).value for t in zs])
        return float(out[0]) if np.ndim(z) == 0 else out


# ---------------------------------------------------------------- closed hats

def _prep(z, u):
    z = np.asarray(z, dtype=float)
    u = 1.0 - z if u is None else np.asarray(u, dtype=float)
    z, u = np.broadcast_arrays(z, u)
    return z, u, np.empty(z.shape)


def _ret(out, z):
    return float(out) if np.ndim(z) == 0 else out


def hat_arcsine01(z, u=None):
    """arccos(z)/sqrt(1-z^2), continued analytically through z = 1."""
    z0 = z
    z, u, out = _prep(z, u)
    if np.any(z <= -1):
        raise DomainError("hat of arcsine01 needs z > -1")
    near = np.abs(u) < 1e-5
    below = ~near & (u > 0)
    above = ~near & (u < 0)
    s = np.sqrt(np.abs(u) * (1.0 + z))
    out[below] = np.arctan2(s[below], z[below]) / s[below]
    out[above] = np.arccosh(z[above]) / s[above]
    un = u[near]
    out[near] = 1.0 + un / 3.0 + 2.0 * un * un / 15.0
    return _ret(out, z0)


def hat_arcsine_full(z, u=None):
    """pi/sqrt(1-z^2) on (-1, 1)."""
    z0 = z
    z, u, out = _prep(z, u)
    if np.any((z <= -1) | (u <= 0)):
        raise DomainError("hat of arcsine_full needs -1 < z < 1")
    out[...] = PI / np.sqrt(u * (1.0 + z))
    return _ret(out, z0)


def hat_sec_branch(z, u=None):
    """arcsec(z)/sqrt(z^2-1) for z > 0 (arccosh(1/z)/sqrt(1-z^2) below 1)."""
    z0 = z
    z, u, out = _prep(z, u)
    if np.any(z <= 0):
        raise DomainError("hat of sec_branch needs z > 0")
    q = u * (1.0 + z)  # 1 - z^2
    near = np.abs(q) < 1e-5
    below = ~near & (q > 0)
    above = ~near & (q < 0)
    s = np.sqrt(np.abs(q))
    # arctanh(s) = log((1+s)/z) exactly, and stays accurate as z -> 0
    out[below] = np.log((1.0 + s[below]) / z[below]) / s[below]
    out[above] = np.arctan(s[above]) / s[above]
    qn = q[near]
    out[near] = 1.0 + qn / 3.0 + qn * qn / 5.0
    return _ret(out, z0)


def hat_cauchy(z, u=None):
    """(pi/2 + z log z)/(1 + z^2) for z >= 0."""
    z0 = z
    z, u, out = _prep(z, u)
    if np.any(z < 0):
        raise DomainError("hat of cauchy needs z >= 0")
    pos = z > 0
    zl = np.zeros(z.shape)
    zl[pos] = z[pos] * np.log(z[pos])
    out[...] = (0.5 * PI + zl) / (1.0 + z * z)
    return _ret(out, z0)


def make_hat_uniform(c: float = 1.0):
    def hat(z, u=None):
        z0 = z
        z = np.asarray(z, dtype=float)
        if np.any(c * z <= -1):
            raise DomainError(f"hat of uniform[0,{c}] needs z > {-1 / c}")
        zs = np.where(z == 0, 1.0, z)
        out = np.where(z == 0, c, np.log1p(c * z) / zs)
        return _ret(out, z0)
    return hat


# ---------------------------------------------------------------- catalog

def _cos_chart(b):
    # x = cos(phi); clipping keeps x strictly inside (-1, 1] where cos rounds to -1
    return Chart(lambda p: np.maximum(np.cos(p), -1.0 + _TINY), lambda p: np.ones_like(p),
                 0.0, b, "gk" if b < 2 else "de")


def uniform_pair(c: float = 1.0) -> StieltjesPair:
    """f = 1 on [0, c]."""
    name = "uniform01" if c == 1.0 else f"uniform[0,{c:g}]"
    return StieltjesPair(
        name, Fn1D(lambda x: np.ones_like(x), 0.0, c, name=name),
        Chart(lambda t: t, lambda t: np.ones_like(t), 0.0, c, "gk", identity=True),
        make_hat_uniform(c), (-1.0 / c, math.inf), c,
        notes="f = 1 on [0, c]; hat = log(1 + c z)/z")


def _build_pairs():
    arcsine01 = StieltjesPair(
        "arcsine01", Fn1D(lambda x: 1 / np.sqrt(1 - x * x), 0.0, 1.0, (False, True)),
        _cos_chart(0.5 * PI), hat_arcsine01, (-1.0, math.inf), 0.5 * PI,
        weight_blowup={1.0: 0.5}, notes="1/sqrt(1-x^2) on [0,1]")
    arcsine_full = StieltjesPair(
        "arcsine_full", Fn1D(lambda x: 1 / np.sqrt(1 - x * x), -1.0, 1.0, (True, True)),
        _cos_chart(PI), hat_arcsine_full, (-1.0, 1.0), PI,
        weight_blowup={1.0: 0.5, -1.0: 0.5}, hat_blowup={1.0: 0.5, -1.0: 0.5},
        notes="1/sqrt(1-x^2) on [-1,1]")
    # x = sec(phi): dx / sqrt(x^2-1) = sec(phi) dphi
    sec_branch = StieltjesPair(
        "sec_branch", Fn1D(lambda x: 1 / np.sqrt(x * x - 1), 1.0, math.inf, (True, False)),
        Chart(lambda p: 1 / np.cos(p), lambda p: 1 / np.cos(p), 0.0, 0.5 * PI, "de"),
        hat_sec_branch, (0.0, math.inf), math.inf,
        weight_blowup={1.0: 0.5}, notes="1/sqrt(x^2-1) on [1,inf)")
    cauchy = StieltjesPair(
        "cauchy", Fn1D(lambda x: 1 / (1 + x * x), 0.0, math.inf),
        Chart(np.tan, lambda p: np.ones_like(p), 0.0, 0.5 * PI, "de"),
        hat_cauchy, (0.0, math.inf), 0.5 * PI, notes="1/(1+x^2) on [0,inf)")
    return {p.name: p for p in (arcsine01, arcsine_full, sec_branch, cauchy, uniform_pair())}


PAIRS = _build_pairs()
PAIR_NAMES = tuple(PAIRS)


def get_pair(name: str) -> StieltjesPair:
    if name in PAIRS:
        return PAIRS[name]
    raise KeyError(f"unknown pair {name!r}; known: {', '.join(PAIR_NAMES)}")


# ---------------------------------------------------------------- numerics

def _check_pole(p: StieltjesPair, z: float):
    a, b = p.f.a, p.f.b
    ends = [1 + a * z, -math.inf if (math.isinf(b) and z < 0) else 1 + (0 if math.isinf(b) else b * z)]
    if min(ends) <= 0:
        raise DomainError(f"1 + x z vanishes on the support of {p.name} at z = {z}")
    if z == 0 and math.isinf(p.mass):
        raise DomainError(f"{p.name} has infinite mass; its hat diverges at z = 0")


def hat_transform_numeric(p: StieltjesPair, z: float, tol: float = 1e-11) -> QuadResult:
    """int f(x)/(1 + x z) dx by quadrature in the chart of p."""
    z = float(z)
    _check_pole(p, z)
    ch = p.chart
    fn = Fn1D(lambda t: ch.w(t) / (1 + ch.x(t) * z), ch.a, ch.b)
    if ch.rule == "de":
        return integrate_de(fn, tol)
    return integrate_adaptive(fn, tol)


def _kernel_fn(hat_pair: StieltjesPair, n: int, lo: float, hi: float) -> Fn1D:
    def g(x):
        return x ** (n - 1) * hat_pair.hat_eval(x)
    return Fn1D(g, lo, hi, name=f"x^{n - 1}*hat[{hat_pair.name}]")


def duality_divergence(pairs: Sequence[StieltjesPair]) -> Optional[float]:
    """Return the point where the univariate side blows up non-integrably, if any."""
    last = pairs[-1]
    pts = set(last.weight_blowup)
    for p in pairs[:-1]:
        pts.update(p.hat_blowup)
    for pt in sorted(pts):
        if not (last.f.a <= pt <= last.f.b):
            continue
        total = last.weight_blowup.get(pt, 0.0) + sum(p.hat_blowup.get(pt, 0.0) for p in pairs[:-1])
        if total >= 1.0:
            return pt
    return None


def duality_lhs(pairs: Sequence[StieltjesPair], tol: float = 1e-8,
                cfg: DDConfig = DEFAULT_CFG, budget: int = 4_000_000) -> QuadResult:
    n = len(pairs) - 1
    lo = min(p.f.a for p in pairs[:-1])
    hi = max(p.f.b for p in pairs[:-1])
    # keep spread confluent nodes off a singular lower end of the kernel
    g = _kernel_fn(pairs[-1], n, lo + 1e-12 * max(1.0, abs(lo)), hi)
    charts = [p.chart for p in pairs[:-1]]

    def integrand(*phis):
        xs = [ch.x(t) for ch, t in zip(charts, phis)]
        w = 1.0
        for ch, t in zip(charts, phis):
            w = w * ch.w(t)
        return newton_dd(g, xs, cfg) * w

    box = BoxSpec([(ch.a, ch.b) for ch in charts], [ch.rule for ch in charts], budget)
    return integrate_box(integrand, box, tol)


def duality_rhs(pairs: Sequence[StieltjesPair], tol: float = 1e-10) -> QuadResult:
    last, hats = pairs[-1], pairs[:-1]
    ch = last.chart
    if ch.identity:
        b = ch.b

        def fd(x, dl, dr):
            u = (1.0 - b) + dr if b != 1.0 else dr
            v = ch.w(x)
            for p in hats:
                v = v * p.hat_eval(x, u)
            return v

        fn = Fn1D(lambda x: fd(x, x - ch.a, b - x), ch.a, b, with_distance=fd)
        return integrate_de(fn, tol)

    def f(t):
        x = ch.x(t)
        v = ch.w(t)
        for p in hats:
            v = v * p.hat_eval(x)
        return v

    fn = Fn1D(f, ch.a, ch.b)
    return integrate_de(fn, tol) if ch.rule == "de" else integrate_adaptive(fn, tol)


def verify_duality(pairs: Sequence[StieltjesPair], n: Optional[int] = None,
                   tol: float = 1e-6, cfg: DDConfig = DEFAULT_CFG,
                   budget: int = 4_000_000) -> VerificationRecord:
    """Compare the n-fold kernel integral with the univariate hat integral."""
    pairs = [get_pair(p) if isinstance(p, str) else p for p in pairs]
    if n is None:
        n = len(pairs) - 1
    if n not in (2, 3) or len(pairs) != n + 1:
        raise ValueError("duality needs n in {2, 3} and n + 1 pairs")
    ident = "duality:" + ",".join(p.name for p in pairs)
    pt = duality_divergence(pairs)
    if pt is not None:
        raise DivergenceError(f"{ident}: hat product not integrable at x = {pt}")
    t0 = time.perf_counter()
    lhs = duality_lhs(pairs, tol / 20, cfg, budget)
    rhs = duality_rhs(pairs, tol / 1000)
    ms = 1e3 * (time.perf_counter() - t0)
    return VerificationRecord.compare(
        ident, lhs.value, rhs.value, tol, n_evals=lhs.n_evals + rhs.n_evals, elapsed_ms=ms,
        detail={"lhs_err_est": lhs.err_est, "rhs_err_est": rhs.err_est,
                "converged": bool(lhs.converged and rhs.converged)})


# ---------------------------------------------------------------- special families

def j_n(n: int, tol: float = 1e-12) -> QuadResult:
    """int_0^{pi/2} z^n / sin^(n-1) z dz."""
    if n < 1:
        raise ValueError("n must be at least 1")

    def f(z):
        return z * (z / np.sin(z)) ** (n - 1)

    return integrate_de(Fn1D(f, 0.0, 0.5 * PI), tol)


def multivariate_lhs_cos(n: int, tol: float = 1e-8, form: str = "log1p",
                         cfg: DDConfig = DEFAULT_CFG, budget: int = 4_000_000) -> QuadResult:
    """Kernel integral over [0, pi/2]^n at nodes cos(theta_i).

    ``form="log1p"`` uses g(x) = x^(n-2) log(1+x); ``form="display"`` uses
    x^(n-2) log cos(theta/2) = x^(n-2) (log(1+x) - log 2)/2, which is half of
    the former (the kernel kills the affine remainder for n <= 3).
    """
    if n not in (2, 3):
        raise ValueError("n must be 2 or 3")
    if form == "log1p":
        def gf(x):
            return x ** (n - 2) * np.log1p(x)
    elif form == "display":
        def gf(x):
            return x ** (n - 2) * 0.5 * (np.log1p(x) - math.log(2.0))
    else:
        raise ValueError(f"unknown form {form!r}")
    g = Fn1D(gf, -1.0 + 1e-12, 1.0)

    def integrand(*th):
        return newton_dd(g, [np.cos(t) for t in th], cfg)

    box = BoxSpec([(0.0, 0.5 * PI)] * n, ["gk"] * n, budget)
    return integrate_box(integrand, box, tol)


def multivariate_lhs_tan(n: int, tol: float = 1e-8, cfg: DDConfig = DEFAULT_CFG,
                         budget: int = 4_000_000) -> QuadResult:
    """Kernel integral over [0, pi/2)^n at nodes tan(theta_i), g(x) = x^(n-2) log(1+x)."""
    if n not in (2, 3):
        raise ValueError("n must be 2 or 3")
    g = Fn1D(lambda x: x ** (n - 2) * np.log1p(x), 0.0, math.inf)

    def integrand(*th):
        return newton_dd(g, [np.tan(t) for t in th], cfg)

    box = BoxSpec([(0.0, 0.5 * PI)] * n, ["de"] * n, budget)
    return integrate_box(integrand, box, tol)


def multivariate_rhs_tan(n: int, tol: float = 1e-12) -> QuadResult:
    """int_0^1 ((pi/2 + z log z)/(1 + z^2))^n dz."""
    return integrate_de(Fn1D(lambda z: hat_cauchy(z) ** n, 0.0, 1.0), tol)
