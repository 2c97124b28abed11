"""Special functions and constants used by the identity catalog.

Everything works in double precision. Constants are stored as literals and
cross-checked against independent series evaluations in the test-suite.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

PI = math.pi
LOG2 = math.log(2.0)
CATALAN = 0.915965594177219015054603514932384
ZETA2 = 1.6449340668482264364724151666460252
ZETA3 = 1.2020569031595942853997381615114500
ZETA4 = 1.0823232337111381915160036965411679
ZETA5 = 1.0369277551433699263313654864570342
# phi in (0, 1) and its reciprocal, the golden ratio
PHI_SMALL = (math.sqrt(5.0) - 1.0) / 2.0
GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

_ZETA_LITERALS = {2: ZETA2, 3: ZETA3, 4: ZETA4, 5: ZETA5}


class DomainError(ValueError):
    """Argument outside the documented domain of an operation."""


def catalan() -> float:
    return CATALAN


def catalan_series(n_terms: int = 1_000_000, depth: int = 2) -> float:
    """Catalan's constant from its alternating series.

    Partial sums are averaged pairwise ``depth`` times, which removes the
    leading oscillation of the Leibniz-type remainder.
    """
    k = np.arange(n_terms, dtype=float)
    terms = (1.0 - 2.0 * (k % 2)) / (2.0 * k + 1.0) ** 2
    tail = np.cumsum(terms)[-(depth + 1):]
    for _ in range(depth):
        tail = 0.5 * (tail[:-1] + tail[1:])
    return float(tail[-1])


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m with the B_1 = -1/2 convention."""
    if m < 0:
        raise DomainError("negative index")
    # Akiyama-Tanigawa gives B_1 = +1/2; flip it afterwards
    a = [Fraction(0)] * (m + 1)
    for j in range(m + 1):
        a[j] = Fraction(1, j + 1)
        for i in range(j, 0, -1):
            a[i - 1] = i * (a[i - 1] - a[i])
    return -a[0] if m == 1 else a[0]


def zeta(n: int) -> float:
    """Riemann zeta at an integer n >= 2 (direct sum plus Euler-Maclaurin tail)."""
    if int(n) != n or n < 2:
        raise DomainError(f"zeta needs an integer n >= 2, got {n!r}")
    n = int(n)
    N = 20
    s = math.fsum(k ** (-float(n)) for k in range(1, N))
    tail = N ** (1.0 - n) / (n - 1) + 0.5 * N ** (-float(n))
    # sum_j B_2j/(2j)! * n(n+1)...(n+2j-2) * N^(-n-2j+1)
    rising = float(n)
    for j in range(1, 9):
        b = float(bernoulli(2 * j)) / math.factorial(2 * j)
        tail += b * rising * N ** (-float(n) - 2 * j + 1)
        rising *= (n + 2 * j - 1) * (n + 2 * j)
    return s + tail


def _zeta_any(m: int) -> float:
    """zeta at any integer except 1, via Bernoulli numbers for m <= 0."""
    if m >= 2:
        return _ZETA_LITERALS.get(m) or zeta(m)
    if m == 0:
        return -0.5
    j = -m
    return float((-1) ** j * bernoulli(j + 1) / (j + 1))


@lru_cache(maxsize=None)
def _log_series_coeffs(n: int, n_terms: int = 72):
    """Coefficients zeta(n-k)/k! of the expansion of Li_n around z = 1."""
    c = np.zeros(n_terms)
    for k in range(n_terms):
        if k == n - 1:
            continue
        c[k] = _zeta_any(n - k) / math.factorial(k)
    harmonic = math.fsum(1.0 / j for j in range(1, n))
    return c, harmonic


def _polylog_direct(n: int, z: np.ndarray, n_terms: int = 64) -> np.ndarray:
    k = np.arange(n_terms, 0, -1, dtype=float)
    acc = np.zeros_like(z)
    for kk in k:  # Horner in z
        acc = (acc + kk ** (-float(n))) * z
    return acc


def _polylog_logseries(n: int, z: np.ndarray) -> np.ndarray:
    mu = np.log(z)
    c, harmonic = _log_series_coeffs(n)
    acc = np.zeros_like(mu)
    for ck in c[::-1]:
        acc = acc * mu + ck
    sing = mu ** (n - 1) / math.factorial(n - 1) * (harmonic - np.log(-mu))
    return acc + sing


def polylog(n: int, z):
    """Polylogarithm Li_n(z) on the closed unit disk.

    Uses the power series for |z| <= 1/2 and the expansion in log(z)
    about z = 1 otherwise, which converges for all |log z| < 2*pi.
    Accepts scalars or arrays; returns complex values.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"polylog order must be a positive integer, got {n!r}")
    n = int(n)
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0
    zz = np.atleast_1d(zz)
    if not np.all(np.isfinite(zz)):
        raise DomainError("non-finite polylog argument")
    r = np.abs(zz)
    if np.any(r > 1.0 + 1e-12):
        raise DomainError("polylog argument outside the closed unit disk")
    at_one = zz == 1.0
    if n == 1:
        if np.any(at_one):
            raise DomainError("Li_1 has a pole at z = 1")
        out = -np.log1p(-zz)
        return out[0] if scalar else out
    out = np.empty_like(zz)
    small = r <= 0.5
    if np.any(small):
        out[small] = _polylog_direct(n, zz[small])
    big = ~small & ~at_one
    if np.any(big):
        out[big] = _polylog_logseries(n, zz[big])
    if np.any(at_one):
        out[at_one] = _zeta_any(n)
    return out[0] if scalar else out


def polygamma3(x, K: int = 100_000):
    """Pentagamma psi'''(x) = 6 * sum_k 1/(x+k)^4 for x > 0."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~(xs > 0)):
        raise DomainError("polygamma3 needs x > 0")
    k = np.arange(K - 1, -1, -1, dtype=float)  # smallest terms first
    out = np.empty_like(xs)
    for i, xi in enumerate(xs):
        y = xi + K
        tail = 2.0 / y ** 3 + 3.0 / y ** 4 + 2.0 / y ** 5
        out[i] = 6.0 * np.sum((xi + k) ** -4.0) + tail
    return float(out[0]) if np.ndim(x) == 0 else out


def complex_arccos(w):
    """Principal arccos, -i*log(w + i*sqrt(1 - w^2))."""
    w = np.asarray(w, dtype=complex)
    out = -1j * np.log(w + 1j * np.sqrt(1.0 - w * w))
    return out[()] if out.ndim == 0 else out
