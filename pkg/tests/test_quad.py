import math

import numpy as np
import pytest

from stieltjes_verify.quad import (EvaluationError, Fn1D, integrate_adaptive, integrate_de,
                                   integrate_periodic)
from stieltjes_verify.specfun import DomainError

from oracles import DE_TEST, GK_TEST


def test_gk_smooth():
    r = integrate_adaptive(lambda x: np.exp(-x) * np.cos(3 * x), 1e-13, 0.0, 2.0)
    assert r.converged
    assert abs(r.value - GK_TEST) < 1e-13
    assert abs(r.value - GK_TEST) <= 2 * r.err_est + 1e-15


def test_gk_needs_finite_interval():
    with pytest.raises(DomainError):
        integrate_adaptive(np.exp, 1e-8, 0.0, math.inf)


def test_gk_budget_reports_not_converged():
    r = integrate_adaptive(lambda x: np.sin(1 / x), 1e-14, 1e-4, 1.0, max_evals=300)
    assert not r.converged and r.n_evals <= 300


def test_nonfinite_integrand_raises():
    with np.errstate(divide="ignore"), pytest.raises(EvaluationError):
        integrate_adaptive(lambda x: 1 / (x - 0.5), 1e-8, 0.0, 1.0)


def test_de_endpoint_singularities():
    r = integrate_de(lambda x: np.log(x) / np.sqrt(1 - x), 1e-12, 0.0, 1.0)
    assert abs(r.value - DE_TEST) < 1e-11


def test_de_half_line():
    r = integrate_de(lambda x: 1 / (1 + x * x), 1e-12, 0.0, math.inf)
    assert r.value == pytest.approx(math.pi / 2, abs=1e-12)


def test_de_with_distance():
    # 1/sqrt(1-x) written with the distance to the right end, which stays
    # accurate where 1 - x rounds to zero
    fn = Fn1D(lambda x: 1 / np.sqrt(1 - x), 0.0, 1.0,
              with_distance=lambda x, dl, dr: 1 / np.sqrt(dr))
    r = integrate_de(fn, 1e-13)
    assert r.value == pytest.approx(2.0, abs=1e-12)


def test_periodic_trapezoid_spectral():
    # (1/2pi) int e^{cos t} dt = I_0(1)
    r = integrate_periodic(lambda t: np.exp(np.cos(t)), n_points=8, tol=1e-14)
    assert r.value / (2 * math.pi) == pytest.approx(1.2660658777520082, abs=1e-14)
    assert r.n_evals <= 64


def test_periodic_complex():
    r = integrate_periodic(lambda t: np.exp(2j * t) / (1 - 0.5 * np.exp(1j * t)), tol=1e-14)
    assert abs(r.value) < 1e-13
