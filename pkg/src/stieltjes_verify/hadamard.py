"""Hadamard products as circle averages.

For F(w) = sum F_n w^n and G(w) = sum B_n w^n,

    sum_n F_n B_{n-1} z^n = (1/2pi) int_0^{2pi} F(e^{it} sqrt z) omega G(omega) dt,
    omega = e^{-it} sqrt z.

With G(w) = (int_0^{pi/2} dt / (1 - w cos t))^2 the left side is the square
double integral of (F(z cos t1) - F(z cos t2)) / (cos t1 - cos t2), and G
has the closed form (arccos(-w) / sqrt(1 - w^2))^2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .quad import Fn1D, QuadResult, integrate_adaptive, integrate_periodic
from .series import ContractError
from .specfun import DomainError, complex_arccos

PI = math.pi
VARIANTS = ("wallis", "printed")
IMAG_TOL = 1e-8


def wallis(k):
    """A_k = int_0^{pi/2} cos^k t dt = sqrt(pi) Gamma((k+1)/2) / (2 Gamma(k/2 + 1))."""
    k = np.asarray(k, dtype=float)
    lg = np.vectorize(math.lgamma)
    return 0.5 * math.sqrt(PI) * np.exp(lg((k + 1) / 2) - lg(k / 2 + 1))


def wallis_square_coeffs(N: int) -> np.ndarray:
    """B_0..B_{N-1} of (sum A_k w^k)^2 by Cauchy product."""
    A = wallis(np.arange(N))
    return np.convolve(A, A)[:N]


def arccos_gf(w, variant: str = "wallis"):
    """(sum_k A_k w^k)^2 on |w| < 1.

    ``wallis`` evaluates (arccos(-w)/sqrt(1-w^2))^2, which is that square.
    ``printed`` evaluates (arccos(sqrt(1-w^2))/sqrt(1-w^2))^2, the same
    expression without the constant pi/2 in the numerator; it vanishes at 0.
    """
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) >= 1):
        raise DomainError("arccos_gf needs |w| < 1")
    s = np.sqrt(1.0 - w * w)
    if variant == "wallis":
        out = (complex_arccos(-w) / s) ** 2
    elif variant == "printed":
        out = (complex_arccos(s) / s) ** 2
    else:
        raise ValueError(f"variant must be one of {VARIANTS}")
    return out[()] if out.ndim == 0 else out


@dataclass
class PowerSeriesFn:
    """F(w) = sum_n coeff(n) w^n, evaluated by ``func`` if given, else by truncation."""

    coeff: Callable[[int], float]
    func: Optional[Callable] = None
    n_terms: int = 200
    name: str = ""

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        if self.func is not None:
            return self.func(w)
        c = np.array([self.coeff(n) for n in range(self.n_terms)], dtype=complex)
        out = np.zeros(w.shape, dtype=complex)
        for cn in c[::-1]:
            out = out * w + cn
        return out

    @classmethod
    def polynomial(cls, coeffs: Sequence[float], name: str = "poly"):
        cs = [float(c) for c in coeffs]
        return cls(lambda n: cs[n] if n < len(cs) else 0.0, n_terms=len(cs), name=name)

    @classmethod
    def log1p(cls):
        return cls(lambda n: 0.0 if n == 0 else (-1.0) ** (n + 1) / n,
                   func=lambda w: np.log(1.0 + w), name="log(1+w)")

    @classmethod
    def geometric(cls, r: float = 1.0):
        return cls(lambda n: r ** n, func=lambda w: 1.0 / (1.0 - r * w), name=f"1/(1-{r:g}w)")


@dataclass
class GeneratingFn:
    """G(w) = (int_a^b dt / (1 - w H(t)))^2 or a function given by coefficients.

    ``closed`` evaluates G directly when known; otherwise the defining
    integral is computed by quadrature (real and imaginary parts).
    """

    H: Optional[Fn1D] = None
    closed: Optional[Callable] = None
    coeffs: Optional[np.ndarray] = None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def cos(cls, upper: float = 0.5 * PI):
        H = Fn1D(np.cos, 0.0, upper, name="cos")
        if upper == 0.5 * PI:
            return cls(H, lambda w: arccos_gf(w, "wallis"), name="G[cos,0..pi/2]")
        if upper == PI:
            return cls(H, lambda w: PI ** 2 / (1.0 - np.asarray(w, dtype=complex) ** 2),
                       name="G[cos,0..pi]")
        return cls(H, name=f"G[cos,0..{upper:g}]")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[float], name: str = "G[coeffs]"):
        return cls(coeffs=np.asarray(coeffs, dtype=float), name=name)

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        if self.closed is not None:
            return self.closed(w)
        if self.coeffs is not None:
            out = np.zeros(w.shape, dtype=complex)
            for c in self.coeffs[::-1]:
                out = out * w + c
            return out
        return self._by_quadrature(w)

    def _by_quadrature(self, w):
        H = self.H
        out = np.empty(w.shape, dtype=complex)
        for idx, wi in np.ndenumerate(w):
            re = integrate_adaptive(Fn1D(lambda t: np.real(1 / (1 - wi * H.f(t))), H.a, H.b), 1e-13)
            im = integrate_adaptive(Fn1D(lambda t: np.imag(1 / (1 - wi * H.f(t))), H.a, H.b), 1e-13)
            out[idx] = (re.value + 1j * im.value) ** 2
        return out

    def coefficient(self, n: int, radius: float = 0.5, n_points: int = 256) -> float:
        """B_n, from the stored list or by FFT on the circle |w| = radius."""
        if self.coeffs is not None:
            return float(self.coeffs[n]) if n < len(self.coeffs) else 0.0
        if n_points not in self._cache:
            w = radius * np.exp(2j * PI * np.arange(n_points) / n_points)
            self._cache[n_points] = np.fft.fft(self(w)) / n_points
        if n >= n_points // 2:
            raise ValueError("coefficient index too large for the FFT grid")
        return float(np.real(self._cache[n_points][n]) / radius ** n)


class _Recorder:
    """Wraps an integrand and keeps every (theta, value) it produced."""

    def __init__(self, f):
        self.f = f
        self.theta = []
        self.values = []

    def __call__(self, t):
        v = self.f(t)
        self.theta.append(np.asarray(t))
        self.values.append(np.asarray(v))
        return v

    def grid(self):
        t = np.concatenate(self.theta)
        v = np.concatenate(self.values)
        order = np.argsort(t)
        return t[order], v[order]


def _branch_guard(values):
    """Raise if one step between adjacent nodes dwarfs its neighbours."""
    d = np.abs(np.diff(np.concatenate([values, values[:1]])))
    scale = np.max(np.abs(values)) + 1e-300
    neigh = np.maximum(np.roll(d, 1), np.roll(d, -1))
    jump = (d > 10.0 * neigh) & (d > 1e-6 * scale)
    if np.any(jump):
        k = int(np.argmax(jump))
        raise ContractError(f"integrand jumps by {d[k]:.3g} between adjacent nodes "
                            f"(neighbouring steps {neigh[k]:.3g}); branch cut crossed")


def _circle_average(integrand, tol, n_points):
    rec = _Recorder(integrand)
    res = integrate_periodic(rec, n_points=n_points, tol=tol)
    _, vals = rec.grid()
    _branch_guard(vals)
    val = res.value / (2.0 * PI)
    if abs(val.imag) > IMAG_TOL:
        warnings.warn(f"circle average has imaginary part {val.imag:.3g}; discarded",
                      RuntimeWarning, stacklevel=3)
    return QuadResult(float(val.real), res.err_est / (2.0 * PI), res.n_evals, res.converged,
                      {"imag": float(val.imag), "history": res.info.get("history")})


def hadamard_product(F: PowerSeriesFn, G, z: float, orientation: int = -1,
                     tol: float = 1e-13, n_points: int = 32) -> QuadResult:
    """(1/2pi) int F(e^{it} sqrt z) e^{-it} sqrt z G(e^{orientation*it} sqrt z) dt.

    ``orientation=-1`` gives sum_n F_n B_{n-1} z^n. With +1 the average keeps
    only (F_0 B_1 + F_1 B_0) z.
    """
    if not 0 <= z < 1:
        raise DomainError("z must lie in [0, 1)")
    if z == 0:
        return QuadResult(0.0, 0.0, 0, True)
    r = math.sqrt(z)

    def integrand(t):
        e = np.exp(1j * t)
        return F(r * e) * (r / e) * G(r * e ** orientation)

    return _circle_average(integrand, tol, n_points)


def double_integral_via_contour(F: PowerSeriesFn, z: float, variant: str = "wallis",
                                orientation: int = -1, tol: float = 1e-13,
                                n_points: int = 32) -> QuadResult:
    """Circle-average form of int int_{[0,pi/2]^2} (F(z c1) - F(z c2))/(c1 - c2).

    ``variant`` selects the generating function (see :func:`arccos_gf`);
    ``orientation`` the sign of the exponent in its argument.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    G = GeneratingFn(closed=lambda w: arccos_gf(w, variant), name=f"arccos_gf[{variant}]")
    return hadamard_product(F, G, z, orientation, tol, n_points)
