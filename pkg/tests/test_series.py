import math

import numpy as np
import pytest

from stieltjes_verify import series as se
from stieltjes_verify.specfun import CATALAN, ZETA2, ZETA3

from oracles import T_VALUE


def test_alternating_sum_leibniz():
    r = se.alternating_sum(lambda n: (1.0 - 2.0 * (n % 2)) / (2.0 * n + 1.0), tol=1e-13)
    assert r.value == pytest.approx(math.pi / 4, abs=1e-13)
    assert abs(r.value - math.pi / 4) <= r.tail_bound + 1e-15


def test_alternating_sum_rejects_non_alternating():
    with pytest.raises(se.ContractError):
        se.alternating_sum(lambda n: 1.0 / (n + 1.0) ** 2)


def test_mzv_tail_triple():
    r = se.mzv_tail_triple()
    assert r.value == pytest.approx(7 / 32 * ZETA3 - 3 / 16 * ZETA2, abs=1e-12)
    with pytest.raises(ValueError):
        se.mzv_tail_triple(inner_weight="3l")


def test_t_value_triple():
    assert se.t_value_triple().value == pytest.approx(T_VALUE, abs=1e-12)


def test_odd_index_partial_sums():
    even = se.t_value_odd_partial(2000, middle="even")
    odd = se.t_value_odd_partial(2000, middle="odd")
    assert abs(even - T_VALUE) < 2e-3
    assert abs(odd - T_VALUE) > 0.03


@pytest.mark.parametrize("k, ref", [(1, 2 * math.pi), (2, 2 * math.pi * (1 - 1 / 3))])
def test_e_even(k, ref):
    assert se.e_even(k) == pytest.approx(ref, rel=1e-15)


def test_e_odd_and_table():
    assert se.e_odd(0) == pytest.approx(math.pi ** 2 / 4)
    assert se.e_odd(1) == pytest.approx(math.pi ** 2 / 4 + 4)
    E = se.e_table(11)
    for j in range(1, 12):
        ref = se.e_even(j // 2) if j % 2 == 0 else se.e_odd(j // 2)
        assert E[j] == pytest.approx(ref, rel=1e-14)


def test_fourier_geometric_closed_form():
    a = 0.5
    c = se.FourierCoefficients(lambda j: a ** j.astype(float), K=2000)
    ref = 4 * a / (1 - a * a) * math.atan((1 + a) / (1 - a)) ** 2
    assert se.fourier_double_integral(c).value == pytest.approx(ref, abs=1e-12)


def test_fourier_harmonic_needs_many_terms():
    c = se.FourierCoefficients(lambda j: np.zeros(j.shape), K=100, decay_class="harmonic")
    with pytest.raises(se.ContractError):
        se.fourier_double_integral(c)


def test_fourier_divergent():
    c = se.FourierCoefficients(lambda j: 1.1 ** j.astype(float), K=500)
    with pytest.raises(se.ContractError):
        se.fourier_double_integral(c)


def test_catalan_reference():
    assert CATALAN == pytest.approx(0.915965594177219, abs=1e-15)
