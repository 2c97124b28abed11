"""Registry of identities: each fixture pairs a numerical left-hand side with a
closed form (or an independent second computation) and a tolerance.

Fixtures flagged ``typo_suspect`` compare a printed closed form that does not
survive numerical checking against a corrected candidate; they report a
three-way comparison in ``detail`` and never count as failures.
"""

from __future__ import annotations

import fnmatch
import math
import os
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import duality as du
from . import hadamard as hd
from . import series as se
from .kernels import DDConfig
from .multiquad import integrate_simplex_ordered, symmetric_double_integral
from .quad import Fn1D, integrate_de
from .report import VerificationRecord, passes
from .specfun import (CATALAN as G, GOLDEN, LOG2, PHI_SMALL, PI, ZETA2, ZETA3, ZETA5,
                      polygamma3, polylog, zeta)

SEED_ENV = "STIELTJES_VERIFY_SEED"
DEFAULT_SEED = 20240607

TOL_2D = 1e-7
TOL_SERIES = 1e-6
TOL_3D = 1e-4
DEFAULT_BUDGET = 4_000_000


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


@dataclass
class Outcome:
    """What a fixture's plan returns: both sides plus bookkeeping."""

    lhs: float
    rhs: float
    n_evals: int = 0
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    formula: str
    tol: float
    plan: Callable = field(repr=False, compare=False)
    typo_suspect: bool = False
    notes: str = ""

    def summary(self) -> dict:
        return {"id": self.id, "description": self.description, "formula": self.formula,
                "tol": self.tol, "typo_suspect": self.typo_suspect, "notes": self.notes}


class UnknownIdentity(KeyError):
    pass


# ----------------------------------------------------------------- helpers

def _q(tol):
    """Quadrature tolerance used for a comparison tolerance."""
    return tol / 20.0


def _dd_square(F, dF, H, upper, tol, budget, rules=("gk", "gk"), cfg=DDConfig(), weight=None,
               lo=-math.inf, hi=math.inf):
    fn = Fn1D(F, lo, hi, derivative=dF)
    return symmetric_double_integral(fn, H, (0.0, upper), tol=tol, cfg=cfg, rules=rules,
                                     budget=budget, weight=weight)


def _three_way(lhs, printed, candidate, tol):
    def agree(v):
        e = abs(lhs - v)
        return passes(e, e / abs(v) if v else e, v, tol)
    return {"printed": printed, "candidate": candidate,
            "printed_matches": agree(printed), "candidate_matches": agree(candidate)}


def _chebyshev_T(k):
    T = np.polynomial.Chebyshev.basis(k)
    return T, T.deriv()


def e_quadrature(k: int, tol: float, budget: int):
    """int int (cos kx - cos kz)/(cos x - cos z) over [0, pi/2]^2."""
    T, dT = _chebyshev_T(k)
    return _dd_square(T, dT, np.cos, 0.5 * PI, tol, budget)


def prop61_rhs(z: float, printed: bool = False) -> complex:
    """Closed form of the parameterized log-cos integral at angle z."""
    e = np.exp(1j * z)
    if printed:
        e = 1j * e
    val = 2j * z * (polylog(2, e) - polylog(2, -e)) + 2 * (polylog(3, -e) - polylog(3, e))
    if z != 0:
        val = val - z * z * np.log((1 - np.exp(1j * z)) / (1 + np.exp(1j * z)))
    return complex(val + 2 * PI * G)


def _log1p_scaled(c):
    return (lambda x: np.log1p(c * x)), (lambda x: c / (1 + c * x))


def _li_scaled(n, z):
    """x -> Re Li_n(z x) and its derivative z Li_{n-1}(z x)/(z x)."""
    top = 1.0 - 2.0 ** -52

    def F(x):
        return np.real(polylog(n, z * np.asarray(x, dtype=float)))

    def dF(x):
        w = np.minimum(z * np.asarray(x, dtype=float), top)
        small = np.abs(w) < 1e-8
        ws = np.where(small, 0.5, w)
        val = np.real(polylog(n - 1, ws)) / ws
        return z * np.where(small, 1.0 + w / 2.0 ** (n - 1), val)

    return F, dF


def j4_printed():
    return (0.75 * (31 * ZETA5 - 28 * ZETA3) + 0.5 * PI * G * (PI ** 2 + 24) - PI ** 2 / 4
            + (polygamma3(0.75) - polygamma3(0.25)) / 128)


def j4_candidate():
    return (0.75 * (31 * ZETA5 - 28 * ZETA3) + 0.5 * PI * G * (PI ** 2 + 24) - PI ** 3 / 4
            + PI / 128 * (polygamma3(0.75) - polygamma3(0.25)))


# ----------------------------------------------------------------- plans

def _eq_1_1(tol, budget):
    r = _dd_square(lambda x: 0.5 * np.log(0.5 * (1 + x)), lambda x: 0.5 / (1 + x),
                   np.cos, 0.5 * PI, _q(tol), budget)
    return Outcome(r.value, PI * G - 1.75 * ZETA3, r.n_evals, {"err_est": r.err_est})


def _prop_1_1(tol, budget):
    r = _dd_square(lambda x: 0.5 * np.log(0.5 * (1 + x)), lambda x: 0.5 / (1 + x),
                   np.cos, 0.5 * PI, _q(tol), budget)
    return Outcome((1.75 * ZETA3 + r.value) / PI, G, r.n_evals)


def _prop_1_2_a(tol, budget):
    r = _dd_square(np.log, lambda x: 1 / x, np.cos, 0.5 * PI, _q(tol), budget,
                   rules=("de", "de"), cfg=DDConfig(scale_floor=1e-300), lo=0.0)
    return Outcome(r.value, 2 * PI * G, r.n_evals, {"err_est": r.err_est})


def _prop_1_2_b(tol, budget):
    p = du.get_pair("sec_branch")
    fd = lambda z, dl, dr: p.hat(z, dr) ** 2  # noqa: E731
    r = integrate_de(Fn1D(lambda z: p.hat(z) ** 2, 0.0, 1.0, with_distance=fd), _q(tol) / 10)
    return Outcome(r.value, 3.5 * ZETA3, r.n_evals, {"err_est": r.err_est})


def _prop_1_2_b_cosh(tol, budget):
    # x = cosh u = sec(phi), du = sec(phi) dphi
    sec = lambda p: 1 / np.cos(p)  # noqa: E731
    r = _dd_square(lambda x: 0.5 * np.log(0.5 * (1 + x)), lambda x: 0.5 / (1 + x),
                   sec, 0.5 * PI, _q(tol), budget, rules=("de", "de"), weight=sec)
    return Outcome(r.value, 1.75 * ZETA3, r.n_evals, {"err_est": r.err_est,
                   "chart": "cosh u = sec phi"})


def _prop_1_2_c(tol, budget):
    F, dF = _log1p_scaled(1.0)
    r = _dd_square(F, dF, np.tan, 0.5 * PI, _q(tol), budget, rules=("de", "de"), lo=-1.0)
    rhs = PI / 16 * (PI ** 2 + PI - 4 * LOG2) - G
    return Outcome(r.value, rhs, r.n_evals,
                   {"err_est": r.err_est, "kernel": "symmetric in theta_1, theta_2"})


def _eq_2_1(weight):
    def plan(tol, budget):
        r = se.mzv_tail_triple(inner_weight=weight)
        rhs = (7 / 32 * ZETA3 - 3 / 16 * ZETA2) * (2 if weight == "l" else 1)
        return Outcome(r.value, rhs, r.terms_used, {"tail_bound": r.tail_bound})
    return plan


def _eq_2_2(k):
    def plan(tol, budget):
        r = e_quadrature(2 * k, _q(tol), budget)
        conf, alt = se.e_even(k, "confirmed"), se.e_even(k, "alternative")
        return Outcome(r.value, conf, r.n_evals,
                       {"lower_index_0": conf, "lower_index_1": alt,
                        "lower_index_1_matches": abs(r.value - alt) <= tol})
    return plan


def _eq_2_3(n):
    def plan(tol, budget):
        r = e_quadrature(2 * n + 1, _q(tol), budget)
        conf, alt = se.e_odd(n, "confirmed"), se.e_odd(n, "alternative")
        return Outcome(r.value, conf, r.n_evals,
                       {"inner_limit_k": conf, "inner_limit_n": alt,
                        "inner_limit_n_matches": abs(r.value - alt) <= tol})
    return plan


def _eq_2_2_convention(tol, budget):
    rows, n_ev, worst = [], 0, 0.0
    for k in range(1, 7):
        r = e_quadrature(2 * k, _q(tol), budget)
        n_ev += r.n_evals
        rows.append({"k": k, "quadrature": r.value, **_three_way(
            r.value, se.e_even(k, "alternative"), se.e_even(k, "confirmed"), tol)})
        worst = max(worst, abs(r.value - se.e_even(k, "confirmed")))
    # report k = 1, where the printed lower index gives 0 instead of 2 pi
    return Outcome(rows[0]["quadrature"], se.e_even(1), n_ev,
                   {"rows": rows, "max_candidate_err": worst,
                    "printed_form": "sum from l=1", "candidate_form": "sum from l=0"})


def _eq_2_3_convention(tol, budget):
    rows, n_ev = [], 0
    for n in range(0, 5):
        r = e_quadrature(2 * n + 1, _q(tol), budget)
        n_ev += r.n_evals
        rows.append({"n": n, "quadrature": r.value, **_three_way(
            r.value, se.e_odd(n, "alternative"), se.e_odd(n, "confirmed"), tol)})
    return Outcome(rows[2]["quadrature"], se.e_odd(2), n_ev,
                   {"rows": rows, "printed_form": "inner sum up to n-1",
                    "candidate_form": "inner sum up to k-1"})


def _mzv_11(tol, budget):
    def term(k):
        # k runs from 0; the outer index is k + 1, the inner sum has k + 1 terms
        return (1.0 - 2.0 * (k % 2)) / (k + 1) * se._alt_harmonic(int(k[-1]) + 1)[k]

    r = se.alternating_sum(term, tol=1e-13)
    return Outcome(r.value, G, r.terms_used, {"tail_bound": r.tail_bound})


def _alpha_geometric(a):
    return se.FourierCoefficients(lambda j: a ** j.astype(float), K=2000)


def _claim_3_3(a):
    def plan(tol, budget):
        r = se.fourier_double_integral(_alpha_geometric(a))
        rhs = 4 * a / (1 - a * a) * math.atan((1 + a) / (1 - a)) ** 2
        den = lambda x: 1 - 2 * a * x + a * a  # noqa: E731
        q = _dd_square(lambda x: (1 - a * x) / den(x), lambda x: a * (1 - a * a) / den(x) ** 2,
                       np.cos, 0.5 * PI, 1e-11, budget)
        return Outcome(r.value, rhs, r.terms_used + q.n_evals,
                       {"tail_bound": r.tail_bound, "quadrature": q.value,
                        "quadrature_err": abs(q.value - rhs)})
    return plan


def _thm_3_1_logcos(tol, budget):
    def alpha(j):
        out = np.zeros(j.shape)
        out[0] = -LOG2
        ev = (j % 2 == 0) & (j > 0)
        k = j[ev] // 2
        out[ev] = (1.0 - 2.0 * ((k - 1) % 2)) / k
        return out

    r = se.fourier_double_integral(se.FourierCoefficients(alpha, K=20_000, decay_class="harmonic"))
    return Outcome(r.value, 2 * PI * G, r.terms_used, {"tail_bound": r.tail_bound})


def _thm_3_1_printed(tol, budget):
    a = 0.5
    c = _alpha_geometric(a)
    corrected = se.fourier_double_integral(c).value
    printed = se.fourier_double_integral(c, third_coefficient=PI * PI).value
    den = lambda x: 1 - 2 * a * x + a * a  # noqa: E731
    q = _dd_square(lambda x: (1 - a * x) / den(x), lambda x: a * (1 - a * a) / den(x) ** 2,
                   np.cos, 0.5 * PI, 1e-11, budget)
    return Outcome(q.value, corrected, q.n_evals,
                   {"alpha": a, "third_coefficient_printed": "pi^2",
                    "third_coefficient_candidate": 4,
                    **_three_way(q.value, printed, corrected, tol)})


def _thm_4_1_integrand(x1, x2, x3):
    return 1.0 / ((1 - x1 * x1) * (1 + x2 * x2) * (1 + x3 * x3))


def _thm_4_1_int(tol, budget):
    r = integrate_simplex_ordered(_thm_4_1_integrand, 3, tol=1e-8, budget=budget)
    return Outcome(r.value, (PI * G - 1.75 * ZETA3) / 8, r.n_evals, {"err_est": r.err_est})


def _thm_4_1_sum(tol, budget):
    r = se.t_value_triple()
    s = se.t_value_odd_partial(4000, middle="even")
    return Outcome(r.value, (PI * G - 1.75 * ZETA3) / 8, r.terms_used,
                   {"tail_bound": r.tail_bound, "odd_index_partial_M4000": s})


def _thm_4_1_pairwise(tol, budget):
    i = integrate_simplex_ordered(_thm_4_1_integrand, 3, tol=1e-8, budget=budget)
    s = se.t_value_triple()
    return Outcome(i.value, s.value, i.n_evals + s.terms_used,
                   {"integral": i.value, "series": s.value,
                    "closed_form": (PI * G - 1.75 * ZETA3) / 8})


def _thm_4_1_odd_index(tol, budget):
    M = 4000
    printed = se.t_value_odd_partial(M, middle="odd")
    candidate = se.t_value_odd_partial(M, middle="even")
    target = (PI * G - 1.75 * ZETA3) / 8
    return Outcome(target, candidate, M,
                   {"M": M, "note": "partial sums; conditionally convergent",
                    **_three_way(target, printed, candidate, 1e-2)})


def _prop_4_2(tol, budget):
    r = integrate_simplex_ordered(_thm_4_1_integrand, 3, tol=1e-8, budget=budget)
    return Outcome((8 * r.value + 1.75 * ZETA3) / PI, G, r.n_evals)


def _prop_5_1(n, z):
    def plan(tol, budget):
        F, dF = _li_scaled(n, z)
        r = _dd_square(F, dF, np.cos, PI, _q(tol), budget, rules=("de", "de"),
                       lo=-1.0, hi=1.0)
        if z == 1.0:
            rhs = PI ** 2 * (1 - 2.0 ** -n) * zeta(n)
        else:
            rhs = 0.5 * PI ** 2 * float(np.real(polylog(n, z) - polylog(n, -z)))
        return Outcome(r.value, rhs, r.n_evals, {"err_est": r.err_est})
    return plan


def _prop_5_1_golden(tol, budget):
    F, dF = _li_scaled(2, PHI_SMALL)
    r = _dd_square(F, dF, np.cos, PI, _q(tol), budget, rules=("de", "de"), lo=-1.0, hi=1.0)
    printed = PI ** 4 / 12 - 1.5 * math.log(GOLDEN) ** 2
    candidate = PI ** 4 / 12 - 0.75 * PI ** 2 * math.log(GOLDEN) ** 2
    via_polylog = 0.5 * PI ** 2 * float(np.real(polylog(2, PHI_SMALL) - polylog(2, -PHI_SMALL)))
    # Li_2(-phi) by series, against the two closed forms in circulation
    li2m = float(np.real(polylog(2, -PHI_SMALL)))
    lg2 = 0.5 * math.log(GOLDEN) ** 2
    return Outcome(r.value, candidate, r.n_evals,
                   {"via_polylog": via_polylog, "li2_minus_phi": li2m,
                    "li2_minus_phi_pi2_over_15": abs(li2m - (lg2 - PI ** 2 / 15)) < 1e-14,
                    "li2_minus_phi_pi2_over_10": abs(li2m - (lg2 - PI ** 2 / 10)) < 1e-14,
                    **_three_way(r.value, printed, candidate, tol)})


def _prop_5_2(z):
    def plan(tol, budget):
        F, dF = _log1p_scaled(z)
        r = _dd_square(F, dF, np.cos, PI, _q(tol), budget, rules=("de", "de"), lo=-1 / z)
        return Outcome(r.value, 0.5 * PI ** 2 * math.log((1 + z) / (1 - z)), r.n_evals)
    return plan


def parity_extraction_check(seed: int, degree: int = 6, budget: int = DEFAULT_BUDGET,
                            tol: float = 1e-8) -> VerificationRecord:
    """Both parity displays for a random polynomial F at z = 0.3 and 0.8.

    (1/pi^2) int int_{[0,pi]^2} DD[F(z .)](cos t1, cos t2) is the odd part of F
    at z; with x F(z x) in place of F(z x) it is the even part.
    """
    if not 0 <= degree <= 8:
        raise ValueError("degree must be between 0 and 8")
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    a = rng.normal(size=degree + 1)
    P = np.polynomial.Polynomial(a)
    n_ev, worst, rows = 0, 0.0, []
    for z in (0.3, 0.8):
        Pz = P(np.polynomial.Polynomial([0.0, z]))        # F(z x)
        xPz = Pz * np.polynomial.Polynomial([0.0, 1.0])   # x F(z x)
        odd = math.fsum(a[k] * z ** k for k in range(1, degree + 1, 2))
        even = math.fsum(a[k] * z ** k for k in range(0, degree + 1, 2))
        for poly, target, label in ((Pz, odd, "odd"), (xPz, even, "even")):
            r = _dd_square(poly, poly.deriv(), np.cos, PI, 1e-12, budget)
            val = r.value / PI ** 2
            n_ev += r.n_evals
            worst = max(worst, abs(val - target))
            rows.append({"z": z, "part": label, "integral": val, "series": target})
    ms = 1e3 * (time.perf_counter() - t0)
    lhs = rows[-1]["integral"]
    rhs = rows[-1]["series"]
    rec = VerificationRecord.compare(f"thm-5-3-seed{seed}", lhs, rhs, tol, n_evals=n_ev,
                                     elapsed_ms=ms, detail={"degree": degree,
                                                            "coefficients": a.tolist(),
                                                            "max_abs_err": worst, "rows": rows})
    rec.abs_err = worst
    rec.rel_err = worst / max(1.0, abs(rhs))
    rec.passed = worst <= tol
    return rec


def _thm_5_3(i):
    def plan(tol, budget):
        seed = seed_from_env() + i
        degree = int(np.random.default_rng(seed).integers(3, 9))
        rec = parity_extraction_check(seed, degree, budget, tol)
        rec.detail["seed"] = seed
        return rec
    return plan


def _prop_6_1(z):
    def plan(tol, budget):
        c = math.cos(z)
        F, dF = _log1p_scaled(c)
        r = _dd_square(F, dF, np.cos, 0.5 * PI, _q(tol), budget)
        rhs = prop61_rhs(z)
        return Outcome(r.value, rhs.real, r.n_evals, {"rhs_imag": rhs.imag, "angle": z})
    return plan


def _prop_6_1_printed(tol, budget):
    z = PI / 6
    F, dF = _log1p_scaled(math.cos(z))
    r = _dd_square(F, dF, np.cos, 0.5 * PI, _q(tol), budget)
    cand = prop61_rhs(z)
    printed = prop61_rhs(z, printed=True)
    return Outcome(r.value, cand.real, r.n_evals,
                   {"angle": z, "printed_imag": printed.imag,
                    **_three_way(r.value, printed.real, cand.real, tol)})


def _log_oracle(z, budget):
    F, dF = _log1p_scaled(z)
    return _dd_square(F, dF, np.cos, 0.5 * PI, 1e-11, budget, lo=-1 / z)


def _thm_7_1(z):
    def plan(tol, budget):
        ref = _log_oracle(z, budget)
        F = hd.PowerSeriesFn.log1p()
        variants = {}
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            for v in hd.VARIANTS:
                for o in (-1, 1):
                    res = hd.double_integral_via_contour(F, z, v, o)
                    variants[f"{v}/{'minus' if o < 0 else 'plus'}"] = res.value
        main = hd.double_integral_via_contour(F, z, "wallis", -1)
        matching = sorted(k for k, v in variants.items() if abs(v - ref.value) <= tol)
        detail = {"variants": variants, "matching": matching, "imag": main.info["imag"],
                  "points": main.info["history"][-1][0]}
        if z == 0.9:
            detail["parameterized_closed_form"] = prop61_rhs(math.acos(z)).real
        return Outcome(main.value, ref.value, main.n_evals + ref.n_evals, detail)
    return plan


def _thm_7_1_printed(tol, budget):
    z = 0.5
    ref = _log_oracle(z, budget)
    F = hd.PowerSeriesFn.log1p()
    printed = hd.double_integral_via_contour(F, z, "printed", -1).value
    cand = hd.double_integral_via_contour(F, z, "wallis", -1).value
    return Outcome(ref.value, cand, ref.n_evals,
                   {"z": z, "printed_kernel": "arccos^2(sqrt(1-w^2))/(1-w^2)",
                    "candidate_kernel": "arccos^2(-w)/(1-w^2)",
                    **_three_way(ref.value, printed, cand, tol)})


def _thm_7_1_sign(tol, budget):
    z = 0.5
    ref = _log_oracle(z, budget)
    F = hd.PowerSeriesFn.log1p()
    plus = hd.double_integral_via_contour(F, z, "wallis", +1).value
    minus = hd.double_integral_via_contour(F, z, "wallis", -1).value
    return Outcome(ref.value, minus, ref.n_evals,
                   {"z": z, "printed_form": "G(exp(+i t) sqrt z)",
                    "candidate_form": "G(exp(-i t) sqrt z)",
                    **_three_way(ref.value, plus, minus, tol)})


def _eq_2_1_normalization(tol, budget):
    r = se.mzv_tail_triple(inner_weight="l")
    printed = 7 / 32 * ZETA3 - 3 / 16 * ZETA2
    candidate = 7 / 16 * ZETA3 - 3 / 8 * ZETA2
    return Outcome(r.value, candidate, r.terms_used,
                   {"inner_weight": "1/l", **_three_way(r.value, printed, candidate, tol)})


def _thm_7_2(tol, budget):
    seed = seed_from_env() + 100
    c = np.random.default_rng(seed).normal(size=7)
    P = np.polynomial.Polynomial(c)
    Gf = hd.GeneratingFn.cos()
    rows, n_ev, worst = [], 0, 0.0
    for z in (0.3, 0.7):
        Pz = P(np.polynomial.Polynomial([0.0, z]))
        q = _dd_square(Pz, Pz.deriv(), np.cos, 0.5 * PI, 1e-12, budget)
        h = hd.hadamard_product(hd.PowerSeriesFn.polynomial(c), Gf, z)
        n_ev += q.n_evals + h.n_evals
        worst = max(worst, abs(q.value - h.value))
        rows.append({"z": z, "double_integral": q.value, "hadamard": h.value})
    return Outcome(rows[-1]["hadamard"], rows[-1]["double_integral"], n_ev,
                   {"seed": seed, "rows": rows, "max_abs_err": worst})


def _thm_8_1(a, b):
    def plan(tol, budget):
        pairs = [du.get_pair(a), du.get_pair(b), du.get_pair("uniform01")]
        try:
            rec = du.verify_duality(pairs, tol=tol, budget=budget)
            return Outcome(rec.lhs, rec.rhs, rec.n_evals, rec.detail)
        except du.DivergenceError as exc:
            c = 0.99
            rec = du.verify_duality(pairs[:2] + [du.uniform_pair(c)], tol=tol, budget=budget)
            closed = 0.5 * PI ** 2 * math.log((1 + c) / (1 - c))
            return Outcome(rec.lhs, rec.rhs, rec.n_evals,
                           {**rec.detail, "divergent_on_unit_interval": str(exc),
                            "truncated_to": c, "closed_form": closed})
    return plan


def _thm_8_1_n3(names):
    def plan(tol, budget):
        rec = du.verify_duality([du.get_pair(n) for n in names], tol=tol, budget=budget)
        return Outcome(rec.lhs, rec.rhs, rec.n_evals, rec.detail)
    return plan


def _prop_8_2(n):
    def plan(tol, budget):
        r = du.multivariate_lhs_cos(n, tol=_q(tol) if n == 2 else tol / 50, budget=budget)
        j = du.j_n(n)
        rhs = 2 * PI * G - 3.5 * ZETA3 if n == 2 else 3 * PI ** 2 / 8 * math.log(4) - 21 / 8 * ZETA3
        return Outcome(r.value, rhs, r.n_evals + j.n_evals,
                       {"kernel": "x^(n-2) log(1+x)", "j_n_quadrature": j.value,
                        "err_est": r.err_est})
    return plan


def _prop_8_2_display(tol, budget):
    rows, n_ev = [], 0
    for n in (2, 3):
        r = du.multivariate_lhs_cos(n, tol=1e-6 if n == 3 else 1e-9, form="display", budget=budget)
        j = du.j_n(n).value
        n_ev += r.n_evals
        rows.append({"n": n, "display_kernel": r.value, **_three_way(r.value, j, j / 2, 1e-4)})
    return Outcome(rows[0]["display_kernel"], rows[0]["candidate"], n_ev,
                   {"rows": rows, "printed_form": "J_n", "candidate_form": "J_n / 2"})


def _prop_8_4(n):
    def plan(tol, budget):
        r = du.multivariate_lhs_tan(n, tol=_q(tol) if n == 2 else tol / 10, budget=budget)
        q = du.multivariate_rhs_tan(n)
        detail = {"rhs_quadrature": q.value, "err_est": r.err_est}
        if n == 2:
            rhs = PI / 16 * (PI ** 2 + PI - 4 * LOG2) - G
            detail["rhs_quadrature_err"] = abs(q.value - rhs)
        else:
            rhs = q.value
        return Outcome(r.value, rhs, r.n_evals + q.n_evals, detail)
    return plan


def _jn(n):
    closed = {1: PI ** 2 / 8, 2: 2 * PI * G - 3.5 * ZETA3,
              3: 3 * PI ** 2 / 8 * math.log(4) - 21 / 8 * ZETA3}

    def plan(tol, budget):
        r = du.j_n(n)
        if n in closed:
            return Outcome(r.value, closed[n], r.n_evals, {"err_est": r.err_est})
        return Outcome(r.value, j4_candidate(), r.n_evals,
                       {"err_est": r.err_est, **_three_way(r.value, j4_printed(), j4_candidate(), tol)})
    return plan


# ----------------------------------------------------------------- registry

def _build():
    I = Identity
    fx = [
        I("eq-1-1", "log cos(x/2) divided-difference integral over [0,pi/2]^2",
          "pi*G - 7/4*zeta(3)", TOL_2D, _eq_1_1),
        I("prop-1-1", "Catalan constant from the log cos(x/2) double integral",
          "G = (7/4*zeta(3) + I)/pi", TOL_2D, _prop_1_1),
        I("prop-1-2-a", "log cos divided-difference integral over [0,pi/2]^2",
          "2*pi*G", TOL_2D, _prop_1_2_a),
        I("prop-1-2-b", "integral over [0,1] of (arcsec z/sqrt(z^2-1))^2",
          "7/2*zeta(3)", TOL_2D, _prop_1_2_b),
        I("prop-1-2-b-cosh", "log cosh(x/2) divided-difference integral over [0,inf)^2",
          "7/4*zeta(3)", TOL_2D, _prop_1_2_b_cosh),
        I("prop-1-2-c", "log(1+tan) divided-difference integral over [0,pi/2]^2",
          "pi/16*(pi^2+pi-4*log 2) - G", TOL_SERIES, _prop_1_2_c,
          notes="second log argument read as tan(theta_2) (symmetric kernel)"),
        I("eq-2-1", "nested triple sum, inner weight 1/(2l)", "7/32*zeta(3) - 3/16*zeta(2)",
          TOL_SERIES, _eq_2_1("2l")),
        I("eq-2-1-doubled", "nested triple sum, inner weight 1/l", "7/16*zeta(3) - 3/8*zeta(2)",
          TOL_SERIES, _eq_2_1("l")),
        I("eq-2-1-normalization", "triple sum with inner weight 1/l against both normalizations",
          "7/16*zeta(3) - 3/8*zeta(2) (candidate) vs 7/32*zeta(3) - 3/16*zeta(2)",
          TOL_SERIES, _eq_2_1_normalization, typo_suspect=True),
    ]
    for k in range(1, 7):
        fx.append(I(f"eq-2-2-k{k}", f"E_{2 * k}: (cos {2 * k}x - cos {2 * k}z)/(cos x - cos z)",
                    "2*pi*sum_{l=0}^{k-1} (-1)^l/(2l+1)", TOL_SERIES, _eq_2_2(k)))
    for n in range(0, 5):
        fx.append(I(f"eq-2-3-n{n}", f"E_{2 * n + 1}: (cos {2 * n + 1}x - cos {2 * n + 1}z)/(cos x - cos z)",
                    "pi^2/4 + 4*sum_{k=1}^n (-1)^(k+1)/k * sum_{m<k} 1/(2m+1)",
                    TOL_SERIES, _eq_2_3(n)))
    fx += [
        I("eq-2-2-convention", "lower summation index of the even-order closed form",
          "sum from l=0 (candidate) vs l=1 (printed)", TOL_SERIES, _eq_2_2_convention,
          typo_suspect=True),
        I("eq-2-3-convention", "inner summation limit of the odd-order closed form",
          "inner limit k-1 (candidate) vs n-1 (printed)", TOL_SERIES, _eq_2_3_convention,
          typo_suspect=True),
        I("mzv-11", "depth-2 alternating sum sum (-1)^(k-1)/k sum_{n<k} (-1)^n/(2n+1)", "G",
          1e-8, _mzv_11),
        I("thm-3-1-logcos", "cosine-series route, alpha_0=-log 2, alpha_2k=(-1)^(k-1)/k",
          "2*pi*G", TOL_SERIES, _thm_3_1_logcos),
    ]
    for a in (0.25, 0.5, 0.75):
        fx.append(I(f"claim-3-3-a{a:g}", f"cosine-series route with alpha_k = {a:g}^k",
                    "4a/(1-a^2)*arctan^2((1+a)/(1-a))", 1e-8, _claim_3_3(a)))
    fx += [
        I("thm-3-1-printed", "third coefficient of the cosine-series formula",
          "4 (candidate) vs pi^2 (printed)", 1e-8, _thm_3_1_printed, typo_suspect=True),
        I("thm-4-1-int", "ordered-simplex triple integral of 1/((1-x^2)(1+y^2)(1+z^2))",
          "(pi*G - 7/4*zeta(3))/8", TOL_SERIES, _thm_4_1_int),
        I("thm-4-1-sum", "alternating triple t-value", "(pi*G - 7/4*zeta(3))/8",
          TOL_SERIES, _thm_4_1_sum),
        I("thm-4-1-pairwise", "triple integral vs triple sum", "agreement", 1e-5,
          _thm_4_1_pairwise),
        I("thm-4-1-odd-index", "odd-index form of the triple sum (partial sums)",
          "even middle index (candidate) vs odd (printed)", 1e-2, _thm_4_1_odd_index,
          typo_suspect=True),
        I("prop-4-2", "Catalan constant from the simplex triple integral",
          "G = (8*T + 7/4*zeta(3))/pi", TOL_SERIES, _prop_4_2),
        I("prop-5-1-z1-n2", "Li_2(cos) divided-difference integral over [0,pi]^2",
          "pi^2*(1-2^-n)*zeta(n), n=2", 1e-5, _prop_5_1(2, 1.0)),
        I("prop-5-1-z1-n3", "Li_3(cos) divided-difference integral over [0,pi]^2",
          "pi^2*(1-2^-n)*zeta(n), n=3", 1e-5, _prop_5_1(3, 1.0)),
        I("prop-5-1-z0.5-n2", "Li_2(z cos) divided-difference integral, z=1/2",
          "pi^2/2*(Li_2(z) - Li_2(-z))", 1e-5, _prop_5_1(2, 0.5)),
        I("prop-5-1-golden", "Li_2(phi cos) integral with phi = (sqrt 5 - 1)/2",
          "pi^4/12 - 3pi^2/4*log^2(golden) (candidate) vs pi^4/12 - 3/2*log^2(golden)",
          1e-5, _prop_5_1_golden, typo_suspect=True),
    ]
    for z in (0.25, 0.5, 0.9):
        fx.append(I(f"prop-5-2-z{z:g}", f"log(1+z cos) integral over [0,pi]^2, z={z:g}",
                    "pi^2/2*log((1+z)/(1-z))", TOL_SERIES, _prop_5_2(z)))
    for i in range(5):
        fx.append(I(f"thm-5-3-parity-{i + 1}", "parity extraction on a random polynomial",
                    "odd / even part of F at z", 1e-8, _thm_5_3(i)))
    for label, z in (("z0", 0.0), ("zpi6", PI / 6), ("zpi3", PI / 3), ("zpi2", PI / 2)):
        fx.append(I(f"prop-6-1-{label}", "log(1 + cos z cos) integral over [0,pi/2]^2",
                    "2iz[Li2(e)-Li2(-e)] + 2[Li3(-e)-Li3(e)] - z^2 log((1-e)/(1+e)) + 2piG, e=exp(iz)",
                    TOL_SERIES, _prop_6_1(z)))
    fx.append(I("prop-6-1-printed", "polylog arguments i*exp(iz) (printed) vs exp(iz)",
                "three-way at z=pi/6", TOL_SERIES, _prop_6_1_printed, typo_suspect=True))
    for z in (0.25, 0.5, 0.9):
        fx.append(I(f"thm-7-1-z{z:g}", f"circle-average form of the log(1+z cos) integral, z={z:g}",
                    "square double integral (quadrature)", TOL_2D, _thm_7_1(z)))
    fx += [
        I("thm-7-1-printed", "generating-function kernel of the circle average",
          "arccos(-w) (candidate) vs arccos(sqrt(1-w^2)) (printed)", TOL_2D, _thm_7_1_printed,
          typo_suspect=True),
        I("thm-7-1-sign", "sign of the exponent inside the generating function",
          "exp(-it) (candidate) vs exp(+it)", TOL_2D, _thm_7_1_sign, typo_suspect=True),
        I("thm-7-2-poly", "Hadamard product vs double integral, random degree-6 polynomial",
          "sum F_n B_(n-1) z^n", 1e-8, _thm_7_2),
    ]
    names = du.PAIR_NAMES
    for a in names:
        for b in names:
            fx.append(I(f"thm-8-1-{a}-{b}", f"duality with f1={a}, f2={b}, f3=uniform01",
                        "int f3 * hat f1 * hat f2", TOL_SERIES, _thm_8_1(a, b),
                        notes=("divergent on [0,1]; checked on uniform[0,0.99]"
                               if a == b == "arcsine_full" else "")))
    n3 = ("arcsine01", "cauchy", "sec_branch", "uniform01")
    fx += [
        I("thm-8-1-n3", "duality, n=3: " + ", ".join(n3), "int f4 * hat f1 * hat f2 * hat f3",
          TOL_3D, _thm_8_1_n3(n3)),
        I("prop-8-2-n2", "cos-node kernel of x^0 log(1+x) over [0,pi/2]^2", "J_2", TOL_2D,
          _prop_8_2(2)),
        I("prop-8-2-n3", "cos-node kernel of x log(1+x) over [0,pi/2]^3",
          "J_3 = 3pi^2/8*log 4 - 21/8*zeta(3)", TOL_3D, _prop_8_2(3)),
        I("prop-8-2-display", "log cos(theta/2) kernel vs J_n", "J_n/2 (candidate) vs J_n",
          TOL_3D, _prop_8_2_display, typo_suspect=True),
        I("prop-8-4-n2", "tan-node kernel of log(1+x) over [0,pi/2)^2",
          "pi/16*(pi^2+pi-4*log 2) - G", TOL_SERIES, _prop_8_4(2),
          notes="second log argument read as tan(theta_2) (symmetric kernel)"),
        I("prop-8-4-n3", "tan-node kernel of x log(1+x) over [0,pi/2)^3",
          "int_0^1 ((pi/2 + z log z)/(1+z^2))^3 dz", TOL_3D, _prop_8_4(3)),
    ]
    for n in range(1, 5):
        formula = {1: "pi^2/8", 2: "2*pi*G - 7/2*zeta(3)",
                   3: "3pi^2/8*log 4 - 21/8*zeta(3)",
                   4: "3/4(31 zeta5 - 28 zeta3) + pi/2 G(pi^2+24) - pi^3/4 + pi/128(psi3(3/4)-psi3(1/4))"}[n]
        fx.append(I(f"jn-{n}", f"J_{n} = int_0^(pi/2) z^{n}/sin^{n - 1} z dz", formula,
                    TOL_2D, _jn(n), typo_suspect=(n == 4)))
    ids = [f.id for f in fx]
    assert len(ids) == len(set(ids)), "duplicate fixture id"
    return {f.id: f for f in fx}


REGISTRY = _build()


def list_identities(pattern: Optional[str] = None) -> list:
    """Fixtures in registry order, optionally filtered by a glob pattern."""
    if pattern is None:
        return list(REGISTRY.values())
    return [f for f in REGISTRY.values() if fnmatch.fnmatchcase(f.id, pattern)]


def get_identity(id: str) -> Identity:
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownIdentity(id) from None


def verify_identity(id: str, tol: Optional[float] = None,
                    budget: Optional[int] = None) -> VerificationRecord:
    fx = get_identity(id)
    tol = fx.tol if tol is None else float(tol)
    budget = DEFAULT_BUDGET if budget is None else int(budget)
    t0 = time.perf_counter()
    out = fx.plan(tol, budget)
    ms = 1e3 * (time.perf_counter() - t0)
    if isinstance(out, VerificationRecord):
        out.id = fx.id
        out.elapsed_ms = ms
        out.suspect = fx.typo_suspect
        out.tol = tol
        return out
    rec = VerificationRecord.compare(fx.id, out.lhs, out.rhs, tol, n_evals=out.n_evals,
                                     elapsed_ms=ms, detail=out.detail)
    rec.suspect = fx.typo_suspect
    return rec
