"""Iterated quadrature over boxes and ordered simplices (dimension 2 or 3).

The innermost axis is integrated with a vectorized call of the integrand;
outer axes are 1-D integrals of inner results. Diagonal singularities are
expected to be removed by the integrand itself (see :mod:`kernels`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .kernels import DEFAULT_CFG, DDConfig, divided_difference2
from .quad import Fn1D, QuadResult, integrate_adaptive, integrate_de

RULES = ("gk", "de")


@dataclass
class BoxSpec:
    """Per-axis intervals and rules plus a shared evaluation budget.

    ``rules`` entries are "gk" (adaptive Gauss-Kronrod) or "de"
    (double exponential, for endpoint singularities).
    """

    intervals: Sequence[tuple]
    rules: Sequence[str] = None
    budget: int = 2_000_000
    inner_factor: float = 4.0

    def __post_init__(self):
        n = len(self.intervals)
        if n not in (1, 2, 3):
            raise ValueError("boxes of dimension 1 to 3 only")
        if self.rules is None:
            self.rules = ["gk"] * n
        if len(self.rules) != n or any(r not in RULES for r in self.rules):
            raise ValueError(f"rules must be {n} entries from {RULES}")
        if self.budget < 1000:
            raise ValueError("budget must be at least 1000 evaluations")


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0
        self.converged = True

    def take(self, res: QuadResult):
        self.used += res.n_evals
        if not res.converged:
            self.converged = False
        return res.value


class BudgetExceeded(RuntimeError):
    pass


def _integrate_1d(f, a, b, rule, tol, budget: _Budget):
    if budget.used >= budget.limit:
        raise BudgetExceeded()
    if rule == "de":
        res = integrate_de(f, tol, a, b)
    else:
        res = integrate_adaptive(f, tol, a, b,
                                 max_evals=max(1000, min(200_000, budget.limit - budget.used)))
    return res


def _iterate(f, limits, rules, tol, budget: _Budget, factor):
    """Integrate f(x_1, ..., x_n) with x_1 outermost.

    ``limits[k]`` is a callable returning (a, b) for axis k given the outer
    values; the last axis receives an array and is vectorized.
    """
    n = len(limits)

    def level(k, outer, tol_k):
        a, b = limits[k](*outer)
        if k == n - 1:
            res = _integrate_1d(lambda x: f(*outer, x), a, b, rules[k], tol_k, budget)
            return res
        inner_tol = tol_k / (factor * max(1.0, abs(b - a)))

        def g(xs):
            return np.array([budget.take(level(k + 1, outer + (float(x),), inner_tol))
                             for x in np.atleast_1d(xs)])

        res = _integrate_1d(g, a, b, rules[k], tol_k, budget)
        # each inner integral is good to inner_tol * max(1, |value|)
        res.err_est += inner_tol * (abs(b - a) + abs(res.value))
        return res

    try:
        res = level(0, (), tol)
        total = budget.take(res)
        return QuadResult(total, res.err_est, budget.used, budget.converged)
    except BudgetExceeded:
        return QuadResult(math.nan, math.inf, budget.used, False)


def integrate_box(f: Callable, box: BoxSpec, tol: float = 1e-8) -> QuadResult:
    """Iterated integral of f(x_1, ..., x_n) over the box.

    Axis 0 is outermost; the last axis is innermost and vectorized. Inner
    tolerances are tightened by ``box.inner_factor`` times the outer length.
    """
    limits = [(lambda *_, iv=iv: (float(iv[0]), float(iv[1]))) for iv in box.intervals]
    return _iterate(f, limits, list(box.rules), tol, _Budget(box.budget), box.inner_factor)


def integrate_simplex_ordered(f: Callable, n: int = 3, tol: float = 1e-8,
                              budget: int = 2_000_000, outer_rule: str = "de") -> QuadResult:
    """Integral of f(x_1, ..., x_n) over 0 < x_1 < ... < x_n < 1.

    The outermost variable is x_n; the innermost, x_1, uses the DE rule.
    ``f`` receives the arguments in the order x_1, ..., x_n.
    """
    if n not in (2, 3):
        raise ValueError("simplex dimension must be 2 or 3")

    def g(*outer_first):
        # outer_first = (x_n, ..., x_1); the last one is an array
        return f(*reversed(outer_first))

    limits = [lambda *_: (0.0, 1.0)]
    for _ in range(n - 1):
        limits.append(lambda *outer: (0.0, outer[-1]))
    rules = [outer_rule] * (n - 1) + ["de"]
    return _iterate(g, limits, rules, tol, _Budget(budget), 4.0)


def symmetric_double_integral(F, H, interval, tol: float = 1e-8,
                              cfg: DDConfig = DEFAULT_CFG, rules=("gk", "gk"),
                              budget: int = 2_000_000, weight=None) -> QuadResult:
    """Integral over [alpha, beta]^2 of DD2(F; H(t1), H(t2)) dt1 dt2.

    Only the triangle t1 < t2 is integrated, and the result doubled; the
    kernel is symmetric. ``weight`` optionally multiplies by w(t1) w(t2).
    """
    alpha, beta = map(float, interval)
    Hf = H.f if isinstance(H, Fn1D) else H

    def kernel(t2, t1):
        val = divided_difference2(F, Hf(t1), Hf(t2), cfg)
        if weight is not None:
            val = val * weight(t1) * weight(t2)
        return val

    limits = [lambda *_: (alpha, beta), lambda t2: (alpha, t2)]
    res = _iterate(kernel, limits, list(rules), 0.5 * tol, _Budget(budget), 4.0)
    return QuadResult(2.0 * res.value, 2.0 * res.err_est, res.n_evals, res.converged)
