import math

import numpy as np
import pytest

from stieltjes_verify import specfun as sf

from oracles import (LI2_09_E2I, LI2_I, LI2_MINUS_ONE, LI3_E1I, LI3_HALF, LI4_07,
                     PSI3_QUARTER, PSI3_THREE_QUARTERS, ZETA5)


def test_constants():
    assert sf.catalan() == pytest.approx(0.9159655941772190, abs=1e-15)
    assert sf.ZETA5 == pytest.approx(ZETA5, abs=1e-15)
    assert sf.ZETA2 == pytest.approx(math.pi ** 2 / 6, abs=1e-15)


def test_catalan_series_agrees_with_literal():
    assert sf.catalan_series() == pytest.approx(sf.CATALAN, abs=1e-12)


def test_bernoulli_and_even_zeta():
    assert sf.bernoulli(2) == sf.bernoulli(2).__class__(1, 6)
    assert sf.zeta(6) == pytest.approx(math.pi ** 6 / 945, rel=1e-14)
    with pytest.raises(sf.DomainError):
        sf.zeta(1)


@pytest.mark.parametrize("n, z, ref", [
    (2, 1j, LI2_I), (3, 0.5, LI3_HALF), (2, -1.0, LI2_MINUS_ONE),
    (2, 0.9 * np.exp(2j), LI2_09_E2I), (4, 0.7, LI4_07), (3, np.exp(1j), LI3_E1I),
])
def test_polylog_oracles(n, z, ref):
    assert abs(complex(sf.polylog(n, z)) - ref) < 1e-13


def test_polylog_at_one_and_vectorized():
    assert sf.polylog(2, 1.0).real == pytest.approx(sf.ZETA2, abs=1e-15)
    z = np.array([0.1, 0.5j, -0.9])
    v = sf.polylog(2, z)
    assert v.shape == (3,)
    assert all(abs(v[i] - sf.polylog(2, z[i])) < 1e-15 for i in range(3))


def test_polylog_domain():
    with pytest.raises(sf.DomainError):
        sf.polylog(2, 1.5)
    with pytest.raises(sf.DomainError):
        sf.polylog(1, 1.0)
    with pytest.raises(sf.DomainError):
        sf.polylog(0, 0.5)


def test_polygamma3():
    assert sf.polygamma3(0.25) == pytest.approx(PSI3_QUARTER, rel=1e-12)
    assert sf.polygamma3(0.75) == pytest.approx(PSI3_THREE_QUARTERS, rel=1e-12)


def test_complex_arccos_principal_branch():
    w = np.array([0.3, -0.7, 0.5 + 0.5j, -0.2 - 0.9j])
    v = sf.complex_arccos(w)
    assert np.allclose(np.cos(v), w, atol=1e-14)
    assert np.all(v.real >= 0) and np.all(v.real <= math.pi)


def test_li2_minus_small_golden():
    # Li_2(-phi), phi = (sqrt 5 - 1)/2: the series value is -pi^2/15 + log^2(golden)/2,
    # not -pi^2/10 + log^2(golden)/2
    v = sf.polylog(2, -sf.PHI_SMALL).real
    half_log2 = 0.5 * math.log(sf.GOLDEN) ** 2
    assert v == pytest.approx(half_log2 - math.pi ** 2 / 15, abs=1e-14)
    assert abs(v - (half_log2 - math.pi ** 2 / 10)) > 0.3
