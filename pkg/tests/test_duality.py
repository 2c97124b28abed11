import math

import numpy as np
import pytest

from stieltjes_verify import duality as du
from stieltjes_verify.specfun import CATALAN, ZETA3, DomainError

from oracles import HAT_AT_HALF, J


@pytest.mark.parametrize("name", sorted(HAT_AT_HALF))
def test_hat_closed_forms(name):
    assert float(du.get_pair(name).hat(0.5)) == pytest.approx(HAT_AT_HALF[name], rel=1e-13)


def test_uniform_hat():
    p = du.get_pair("uniform01")
    assert float(p.hat(0.5)) == pytest.approx(2 * math.log(1.5), rel=1e-15)
    assert float(p.hat(0.0)) == 1.0


def test_hat_series_near_one():
    # the closed forms switch to a series near z = 1; both sides must join
    for name in ("arcsine01", "sec_branch"):
        p = du.get_pair(name)
        a = float(p.hat(1 - 2e-5))
        b = float(p.hat(1 - 5e-6))
        assert abs(a - b) < 1e-4


def test_unknown_pair():
    with pytest.raises(KeyError):
        du.get_pair("gauss")


def test_numeric_hat_pole():
    with pytest.raises(DomainError):
        du.hat_transform_numeric(du.get_pair("arcsine_full"), -1.0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_j_n(n):
    assert du.j_n(n).value == pytest.approx(J[n], abs=1e-12)


def test_j_n_closed_forms():
    assert J[2] == pytest.approx(2 * math.pi * CATALAN - 3.5 * ZETA3, abs=1e-15)
    assert J[3] == pytest.approx(3 * math.pi ** 2 / 8 * math.log(4) - 21 / 8 * ZETA3, abs=1e-15)


def test_divergence_detected():
    pairs = [du.get_pair("arcsine_full")] * 2 + [du.get_pair("uniform01")]
    assert du.duality_divergence(pairs) is not None
    with pytest.raises(du.DivergenceError):
        du.verify_duality(pairs)


def test_truncated_uniform_closes_divergence():
    c = 0.9
    pairs = [du.get_pair("arcsine_full")] * 2 + [du.uniform_pair(c)]
    rec = du.verify_duality(pairs, tol=1e-6)
    assert rec.passed
    assert rec.rhs == pytest.approx(math.pi ** 2 / 2 * math.log((1 + c) / (1 - c)), abs=1e-8)


def test_duality_closed_values():
    u = du.get_pair("uniform01")
    a = du.get_pair("arcsine01")
    s = du.get_pair("sec_branch")
    assert du.verify_duality([a, a, u]).rhs == pytest.approx(J[2], abs=1e-10)
    assert du.verify_duality([s, s, u]).rhs == pytest.approx(3.5 * ZETA3, abs=1e-10)


def test_multivariate_forms():
    r = du.multivariate_lhs_cos(2, tol=1e-10)
    assert r.value == pytest.approx(J[2], abs=1e-9)
    half = du.multivariate_lhs_cos(2, tol=1e-10, form="display")
    assert half.value == pytest.approx(J[2] / 2, abs=1e-9)
    tan = du.multivariate_lhs_tan(2, tol=1e-10)
    assert tan.value == pytest.approx(du.multivariate_rhs_tan(2).value, abs=1e-9)
