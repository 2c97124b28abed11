"""Alternating and nested series: Euler-averaged sums, the nested MZV tail,
the alternating triple t-value, E_k closed forms and the Fourier route
to cosine-kernel double integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .specfun import PI

_EPS = np.finfo(float).eps
EULER_DEPTH = 8


class ContractError(RuntimeError):
    """An input violated the convergence contract of a series routine."""


@dataclass
class SeriesResult:
    """Value, error bound of the value, and number of terms consumed.

    ``raw_bound`` is the plain Leibniz bound |first omitted term| of the
    unaccelerated partial sum, when the outer series alternates.
    """

    value: float
    tail_bound: float
    terms_used: int
    raw_bound: float = math.nan


def _euler_average(partial: np.ndarray, depth: int = EULER_DEPTH) -> np.ndarray:
    """Repeated averaging of consecutive partial sums (last depth+2 suffice)."""
    s = partial[-(depth + 2):].astype(float)
    for _ in range(depth):
        s = 0.5 * (s[:-1] + s[1:])
    return s


def _check_alternating(terms: np.ndarray, window: int = 50):
    tail = terms[-window:]
    nz = tail[tail != 0]
    if nz.size >= 2 and np.any(np.sign(nz[1:]) == np.sign(nz[:-1])):
        raise ContractError("terms do not alternate over the last "
                            f"{min(window, terms.size)} terms")


def _averaged_at(partial: np.ndarray, N: int, depth: int) -> float:
    return float(_euler_average(partial[:N], depth)[-1])


def accelerate(terms: np.ndarray, depth: int = EULER_DEPTH):
    """Accelerated value of sum(terms) and an error estimate.

    Partial sums are Euler-averaged ``depth`` times at N, N/2 and N/4; the
    three values are then Richardson-combined in 1/N. The averaging removes
    the alternating part of the remainder, the extrapolation a smooth
    non-alternating part (which arises when terms mix both kinds).
    """
    partial = np.cumsum(terms)
    N = partial.size
    if N < 4 * (depth + 2):
        v = _averaged_at(partial, N, depth)
        return v, abs(v - _averaged_at(partial, N - 1, depth))
    v1, v2, v4 = (_averaged_at(partial, N // m, depth) for m in (1, 2, 4))
    rich = (8.0 * v1 - 6.0 * v2 + v4) / 3.0
    first = 2.0 * v1 - v2
    return rich, abs(rich - first)


def alternating_sum(term: Callable, tol: float = 1e-12, start: int = 0,
                    n_min: int = 64, n_max: int = 1 << 21,
                    depth: int = EULER_DEPTH) -> SeriesResult:
    """Sum of term(k), k >= start, for an eventually alternating series.

    ``term`` maps an integer array to an array of terms. See
    :func:`accelerate`; the term count doubles until two successive
    accelerated values agree to ``tol``.
    """
    n = n_min
    prev = None
    while True:
        k = np.arange(start, start + n)
        terms = np.asarray(term(k), dtype=float)
        if not np.all(np.isfinite(terms)):
            raise ContractError("non-finite series term")
        _check_alternating(terms)
        value, col_diff = accelerate(terms, depth)
        if prev is not None:
            err = max(abs(value - prev), col_diff)
            floor = 16 * _EPS * float(np.max(np.abs(np.cumsum(terms))))
            if err <= max(tol, floor) or 2 * n > n_max:
                raw = float(abs(np.asarray(term(np.array([start + n])), dtype=float)[0]))
                return SeriesResult(value, err + floor, n, raw)
        prev = value
        n *= 2


def _odd_harmonic(L: int) -> np.ndarray:
    """O_l = sum_{m=0}^{l-1} 1/(2m+1) for l = 1..L."""
    return np.cumsum(1.0 / (2.0 * np.arange(L) + 1.0))


def _alt_harmonic(L: int) -> np.ndarray:
    """P_k = sum_{n=0}^{k-1} (-1)^n/(2n+1) for k = 1..L."""
    n = np.arange(L)
    return np.cumsum((1.0 - 2.0 * (n % 2)) / (2.0 * n + 1.0))


def mzv_tail_triple(K_outer: int = 100_000, tol: float = 1e-12,
                    inner_weight: str = "2l") -> SeriesResult:
    """sum_{k>=1} 1/(2k+1) * T_k with T_k = sum_{l>k} (-1)^(l+1) O_l / (c l).

    c = 2 for ``inner_weight="2l"`` and c = 1 for ``"l"``. The full inner sum
    is accelerated once; each tail T_k is that value minus a partial sum.
    T_k alternates in sign, so the outer series is accelerated too.
    """
    if K_outer < 1000:
        raise ValueError("K_outer must be at least 1000")
    c = {"2l": 2.0, "l": 1.0}.get(inner_weight)
    if c is None:
        raise ValueError("inner_weight must be '2l' or 'l'")

    def inner_term(l):
        l = l + 1  # start at l = 1
        return (1.0 - 2.0 * ((l + 1) % 2)) * _odd_harmonic(int(l[-1]))[l - 1] / (c * l)

    A = alternating_sum(inner_term, tol=1e-15)
    L = K_outer + 1
    l = np.arange(1, L + 1)
    a = (1.0 - 2.0 * ((l + 1) % 2)) * _odd_harmonic(L) / (c * l)
    T = A.value - np.cumsum(a)[:K_outer]  # T_k for k = 1..K_outer
    k = np.arange(1, K_outer + 1)
    outer = T / (2.0 * k + 1.0)
    _check_alternating(outer)
    value, col_diff = accelerate(outer)
    half, _ = accelerate(outer[: K_outer // 2])
    err = max(abs(value - half), col_diff) + A.tail_bound + 64 * _EPS
    return SeriesResult(value, err, K_outer, float(abs(T[-1]) / (2 * K_outer + 1)))


def t_value_triple(tol: float = 1e-12, n_max: int = 1 << 18) -> SeriesResult:
    """sum_{k,l,m>=0} (-1)^(l+m) / ((2k+1)(2k+2l+2)(2k+2l+2m+3)).

    With p = k + l the m-sum is a Leibniz tail R_p = (-1)^(p+1) (pi/4 - L_p),
    L_p = sum_{j<=p} (-1)^j/(2j+1), and the k-sum is (-1)^p L_p. What is left
    is -sum_p (pi/4 - L_p) L_p / (2p+2), summed with :func:`accelerate`.
    """
    def term(p):
        Lp = _alt_harmonic(int(p[-1]) + 1)[p]
        return -(PI / 4.0 - Lp) * Lp / (2.0 * p + 2.0)

    return alternating_sum(term, tol=tol, n_max=n_max)


def t_value_odd_partial(M: int, middle: str = "odd") -> float:
    """Partial sum over odd-index triples 0 < a < b < c <= M.

    ``middle="odd"`` uses all-odd triples with sign (-1)^((a+c)/2 - 1);
    ``middle="even"`` uses odd a, c with even b and sign (-1)^((c-a)/2 - 1),
    which is the exact regrouping of :func:`t_value_triple`.
    """
    # sum over b of 1/b for a < b < c, by prefix sums over the chosen parity
    idx = np.arange(M + 1, dtype=float)
    inv = np.zeros(M + 1)
    par = 1 if middle == "odd" else 0
    sel = (np.arange(M + 1) % 2 == par) & (np.arange(M + 1) > 0)
    inv[sel] = 1.0 / idx[sel]
    pref = np.cumsum(inv)  # pref[x] = sum_{b <= x} 1/b
    total = 0.0
    odds = np.arange(1, M + 1, 2)
    for a in odds:
        c = odds[odds > a]
        if c.size == 0:
            break
        mid = pref[c - 1] - pref[a]
        if middle == "odd":
            sign = 1.0 - 2.0 * (((a + c) // 2 - 1) % 2)
        else:
            sign = 1.0 - 2.0 * (((c - a) // 2 - 1) % 2)
        total += math.fsum(sign * mid / (a * c))
    return total


# --- E_k = int int (cos kx - cos kz)/(cos x - cos z) over [0, pi/2]^2 ----------

def e_even(k: int, convention: str = "confirmed") -> float:
    """E_{2k} = 2 pi sum_{l=l0}^{k-1} (-1)^l/(2l+1).

    ``convention="confirmed"`` starts at l0 = 0 (E_2 = 2 pi by direct
    integration); ``"alternative"`` starts at l0 = 1 and is kept for the
    adjudication report.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    l0 = {"confirmed": 0, "alternative": 1}[convention]
    return 2.0 * PI * math.fsum((-1) ** l / (2 * l + 1) for l in range(l0, k))


def e_odd(n: int, convention: str = "confirmed") -> float:
    """E_{2n+1} = pi^2/4 + 4 sum_{k=1}^n (-1)^(k+1)/k * sum_{m<M} 1/(2m+1).

    The inner limit is M = k (``"confirmed"``) or M = n (``"alternative"``).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if convention not in ("confirmed", "alternative"):
        raise ValueError(f"unknown convention {convention!r}")
    total = []
    for k in range(1, n + 1):
        M = k if convention == "confirmed" else n
        total.append((-1) ** (k + 1) / k * math.fsum(1.0 / (2 * m + 1) for m in range(M)))
    return PI * PI / 4.0 + 4.0 * math.fsum(total)


def e_table(J: int) -> np.ndarray:
    """E_j for j = 0..J (E_0 = 0), vectorized confirmed closed forms."""
    K = J // 2 + 1
    P = np.concatenate(([0.0], _alt_harmonic(K)))         # P_k, k = 0..K
    k = np.arange(1, K + 1)
    O = _odd_harmonic(K)
    Q = np.concatenate(([0.0], np.cumsum((1.0 - 2.0 * ((k + 1) % 2)) / k * O)))
    E = np.zeros(J + 1)
    j = np.arange(J + 1)
    even = (j % 2 == 0) & (j > 0)
    E[even] = 2.0 * PI * P[j[even] // 2]
    odd = j % 2 == 1
    E[odd] = PI * PI / 4.0 + 4.0 * Q[j[odd] // 2]
    return E


@dataclass
class FourierCoefficients:
    """Cosine coefficients alpha_j of F(t) = sum alpha_j cos(j t).

    ``alpha`` maps an integer array to coefficients. ``decay_class`` is
    "geometric" (plain summation) or "harmonic" (alternating terms, Euler
    averaged, needs K >= 10^4).
    """

    alpha: Callable
    K: int = 2000
    decay_class: str = "geometric"


def fourier_double_integral(c: FourierCoefficients, tol: float = 1e-12,
                            third_coefficient: float = 4.0) -> SeriesResult:
    """int int (F(t1) - F(t2)) / (cos t1 - cos t2) over [0, pi/2]^2 by series.

    The value is sum_{j>=1} alpha_j E_j, i.e.
    2 pi sum alpha_2k P_k + (pi^2/4) sum alpha_(2k+1) + c3 sum alpha_(2k+1) Q_k
    with c3 = ``third_coefficient`` (4 is the value that matches quadrature).
    """
    if c.decay_class not in ("geometric", "harmonic"):
        raise ValueError("decay_class must be 'geometric' or 'harmonic'")
    if c.decay_class == "harmonic" and c.K < 10_000:
        raise ContractError("harmonic decay needs K >= 10^4")
    J = int(c.K)
    j = np.arange(J + 1)
    alpha = np.asarray(c.alpha(j), dtype=float)
    E = e_table(J)
    if third_coefficient != 4.0:
        odd = j % 2 == 1
        E[odd] = PI * PI / 4.0 + third_coefficient / 4.0 * (E[odd] - PI * PI / 4.0)
    terms = alpha[1:] * E[1:]
    if not np.all(np.isfinite(terms)):
        raise ContractError("non-finite Fourier term")
    if c.decay_class == "geometric":
        partial = np.cumsum(terms)
        # unbounded growth of the partial sums means divergence
        if abs(partial[-1]) > 1e12 or abs(terms[-1]) > max(1e-3, abs(terms[0])):
            raise ContractError("Fourier series does not converge")
        value = math.fsum(terms)
        bound = abs(terms[-1]) * 2 + 16 * _EPS * abs(value)
        return SeriesResult(value, bound, J)
    nz = terms[terms != 0]
    _check_alternating(nz)
    value, col_diff = accelerate(nz)
    half, _ = accelerate(nz[: nz.size // 2])
    return SeriesResult(value, max(abs(value - half), col_diff), J, float(abs(nz[-1])))
