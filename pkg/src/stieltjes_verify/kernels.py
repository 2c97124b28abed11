"""Divided-difference kernels with stable confluent handling.

The symmetric kernel sum_i x_i^(n-1) fhat(x_i) / prod_{j!=i} (x_i - x_j) is the
order-(n-1) divided difference of g(x) = x^(n-1) fhat(x). It is always
evaluated through a Newton table, never as the raw partial-fraction sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quad import Fn1D, _checked


@dataclass(frozen=True)
class DDConfig:
    """Confluence threshold and derivative policy.

    Node gaps are compared with delta * max(scale_floor, |nodes|). A tiny
    ``scale_floor`` makes the test relative, which is what a kernel of log x
    near x = 0 needs.
    """

    delta: float = 1e-6
    derivative_mode: str = "analytic"  # or "central"
    scale_floor: float = 1.0

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        if self.derivative_mode not in ("analytic", "central"):
            raise ValueError(f"unknown derivative_mode {self.derivative_mode!r}")


DEFAULT_CFG = DDConfig()
_EPS = np.finfo(float).eps


def effective_delta(cfg: DDConfig, n: int) -> float:
    """Confluence threshold used for an n-node table.

    Roundoff in an order-(n-1) table grows like eps / delta^(n-1), so for
    three or more nodes the threshold is raised to at least eps^(1/(n+2)).
    """
    if n <= 2:
        return cfg.delta
    return max(cfg.delta, _EPS ** (1.0 / (n + 2)))


def _fn(F):
    if isinstance(F, Fn1D):
        return F
    return Fn1D(F, -math.inf, math.inf)


def _derivative(F: Fn1D, m, h, cfg: DDConfig):
    if F.derivative is not None and cfg.derivative_mode == "analytic":
        return _checked(F.derivative, m)
    # fourth-order central difference
    f = F.f
    return (8.0 * (f(m + h) - f(m - h)) - (f(m + 2 * h) - f(m - 2 * h))) / (12.0 * h)


def divided_difference2(F, u, v, cfg: DDConfig = DEFAULT_CFG):
    """(F(u) - F(v)) / (u - v), switching to F'((u+v)/2) for close nodes."""
    F = _fn(F)
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    scalar = u.ndim == 0
    u, v = np.atleast_1d(u), np.atleast_1d(v)
    scale = np.maximum(cfg.scale_floor, np.maximum(np.abs(u), np.abs(v)))
    diff = u - v
    close = np.abs(diff) < cfg.delta * scale
    out = np.empty(u.shape)
    far = ~close
    if np.any(far):
        uf, vf = u[far], v[far]
        out[far] = (_checked(F.f, uf) - _checked(F.f, vf)) / (uf - vf)
    if np.any(close):
        m = 0.5 * (u[close] + v[close])
        out[close] = _derivative(F, m, cfg.delta * scale[close], cfg)
    return float(out[0]) if scalar else out


def _newton_table(g, X):
    """Top coefficient of the Newton table for columns of sorted nodes X (n, M)."""
    n = X.shape[0]
    c = _checked(g, X.ravel()).reshape(X.shape).astype(float)
    for j in range(1, n):
        c[j:] = (c[j:] - c[j - 1:-1]) / (X[j:] - X[:-j])
    return c[n - 1]


def _clusters(x, tol):
    groups = [[x[0]]]
    for xi in x[1:]:
        if xi - groups[-1][-1] < tol:
            groups[-1].append(xi)
        else:
            groups.append([xi])
    return groups


def _spread(x, sep, lo, hi, cluster_tol):
    """Spread clusters of sorted nodes to separation exactly ``sep``.

    Clusters (gaps below ``cluster_tol``) are centred on their mean; clusters
    that collide after spreading are merged and re-spread. A cluster that
    would leave [lo, hi] is shifted back inside.
    """
    groups = [(float(np.mean(c)), len(c)) for c in _clusters(list(x), cluster_tol)]
    while True:
        placed = []
        for centre, m in groups:
            half = 0.5 * (m - 1) * sep
            centre = min(max(centre, lo + half), hi - half)
            placed.append((centre, m))
        merged = [placed[0]]
        changed = False
        for centre, m in placed[1:]:
            pc, pm = merged[-1]
            if (centre - 0.5 * (m - 1) * sep) - (pc + 0.5 * (pm - 1) * sep) < sep * (1 - 1e-12):
                tot = pm + m
                merged[-1] = ((pc * pm + centre * m) / tot, tot)
                changed = True
            else:
                merged.append((centre, m))
        groups = merged
        if not changed:
            break
    out = []
    for centre, m in groups:
        out.extend(centre + (np.arange(m) - 0.5 * (m - 1)) * sep)
    return np.array(out)


def _spread_columns(X, sep, lo, hi, cluster_tol):
    """Column-wise :func:`_spread` without the merge step.

    Returns the spread nodes and a mask of columns where no merge was needed
    (those are identical to the scalar result); the rest must be redone.
    """
    n, M = X.shape
    start = np.ones((n, M), dtype=bool)
    start[1:] = np.diff(X, axis=0) >= cluster_tol
    cid = np.cumsum(start, axis=0)
    same = cid[:, None, :] == cid[None, :, :]  # (n, n, M)
    size = same.sum(axis=1)
    centre = (same * X[None, :, :]).sum(axis=1) / size
    rank = np.zeros((n, M))
    for k in range(1, n):
        rank[k] = np.where(start[k], 0.0, rank[k - 1] + 1.0)
    half = 0.5 * (size - 1) * sep
    centre = np.minimum(np.maximum(centre, lo + half), hi - half)
    Y = centre + (rank - 0.5 * (size - 1)) * sep
    ok = np.all(np.diff(Y, axis=0) >= sep * (1 - 1e-12), axis=0)
    return Y, ok


def newton_dd(g, nodes, cfg: DDConfig = DEFAULT_CFG):
    """Divided difference g[x_1, ..., x_n] for arrays of node tuples.

    ``nodes`` is a sequence of n scalars or broadcastable arrays. Columns whose
    sorted nodes come closer than s = delta*scale are evaluated on spread
    nodes at separations s and s/2 and Richardson-combined,
    (4 D(s/2) - D(s)) / 3. See :func:`effective_delta` for delta.
    """
    g = _fn(g)
    arrays = np.broadcast_arrays(*[np.asarray(x, dtype=float) for x in nodes])
    shape = arrays[0].shape
    X = np.sort(np.stack([a.ravel() for a in arrays]), axis=0)
    n, M = X.shape
    if n == 1:
        out = _checked(g.f, X[0])
        return float(out[0]) if shape == () else out.reshape(shape)
    # each gap is judged against the size of its own endpoints, so a far-away
    # node does not make two moderate nodes look confluent
    absx = np.abs(X)
    local = np.maximum(cfg.scale_floor, np.maximum(absx[1:], absx[:-1]))
    gaps = np.diff(X, axis=0)
    delta = effective_delta(cfg, n)
    close = gaps < delta * local
    confluent = np.any(close, axis=0)
    scale = np.max(np.where(close, local, 0.0), axis=0)
    out = np.empty(M)
    regular = ~confluent
    if np.any(regular):
        out[regular] = _newton_table(g.f, X[:, regular])
    cols = np.flatnonzero(confluent)
    if cols.size:
        lo, hi = g.a, g.b
        s = delta * scale[cols]
        Xc = X[:, cols]
        coarse, ok1 = _spread_columns(Xc, s, lo, hi, s)
        fine, ok2 = _spread_columns(Xc, 0.5 * s, lo, hi, s)
        for k in np.flatnonzero(~(ok1 & ok2)):
            coarse[:, k] = _spread(Xc[:, k], s[k], lo, hi, s[k])
            fine[:, k] = _spread(Xc[:, k], 0.5 * s[k], lo, hi, s[k])
        d = _newton_table(g.f, np.concatenate([coarse, fine], axis=1))
        d_coarse, d_fine = d[:cols.size], d[cols.size:]
        out[cols] = (4.0 * d_fine - d_coarse) / 3.0
    return float(out[0]) if shape == () else out.reshape(shape)


def stieltjes_kernel(fhat, nodes, cfg: DDConfig = DEFAULT_CFG):
    """Symmetric kernel of order n at the nodes: newton_dd of x^(n-1) fhat(x)."""
    n = len(nodes)
    if n < 2:
        raise ValueError("the kernel needs at least two nodes")
    fh = _fn(fhat)
    g = Fn1D(lambda x: x ** (n - 1) * fh.f(x), fh.a, fh.b, name=f"x^{n-1}*{fh.name}")
    return newton_dd(g, nodes, cfg)
