from fractions import Fraction as F

import pytest

from liequant.scalar import (
    ExpScalar,
    HSeries,
    QScalar,
    hseries_exp,
    hseries_log,
    q_power,
    q_to_hseries,
)


def test_hseries_basic_arithmetic():
    a = HSeries([1, 2, 3], 4)
    b = HSeries([0, 1], 4)
    assert (a + b).coeffs == (F(1), F(3), F(3), F(0), F(0))
    assert (a * b).coeffs == (F(0), F(1), F(2), F(3), F(0))
    assert (-a + a).is_zero()


def test_hseries_mixed_orders_truncate():
    a = HSeries([1, 1, 1], 2)
    b = HSeries([1, 0, 0, 5], 3)
    c = a * b
    assert c.order == 2
    assert c.coeffs == (F(1), F(1), F(1))


def test_hseries_inverse_and_div():
    a = HSeries([1, 1], 4)  # 1 + h
    inv = a.inverse()
    assert inv.coeffs == (F(1), F(-1), F(1), F(-1), F(1))
    assert (a * inv) == HSeries.one(4)
    with pytest.raises(ZeroDivisionError):
        HSeries.hbar(3).inverse()


def test_hseries_exp_log_roundtrip():
    x = HSeries([0, 1, F(1, 3), -2], 5)
    assert hseries_log(hseries_exp(x)) == x
    y = HSeries([1, F(2, 7), 0, 1], 5)
    assert hseries_exp(hseries_log(y)) == y
    with pytest.raises(ValueError):
        hseries_exp(HSeries.one(3))
    with pytest.raises(ValueError):
        hseries_log(HSeries.zero(3))


def test_hseries_valuation_eval_getitem():
    x = HSeries([0, 0, 5, 1], 6)
    assert x.valuation() == 2
    assert HSeries.zero(3).valuation() is None
    assert x.eval(F(1, 2)) == 5 * F(1, 4) + F(1, 8)
    assert x[2] == F(5)
    with pytest.raises(IndexError):
        x[7]


def test_q_expansion_oracle():
    # q = exp(hbar/2): 1 + h/2 + h^2/8 + h^3/48
    q = q_to_hseries(QScalar.v_power(1), 3, D=1)
    assert q.coeffs == (F(1), F(1, 2), F(1, 8), F(1, 48))
    # q - q^{-1} = h + h^3/24 through order 3
    d = q_to_hseries(QScalar.v_power(1) - QScalar.v_power(-1), 3, D=1)
    assert d.coeffs == (F(0), F(1), F(0), F(1, 24))


def test_qscalar_field_ops():
    a = QScalar.v_power(2) - QScalar.one()
    b = QScalar.v_power(1) - QScalar.one()
    c = a / b  # v + 1
    assert c == QScalar.v_power(1) + QScalar.one()
    assert (b * c) == a
    assert a - a == QScalar.zero()
    assert QScalar.const(F(3, 4)).as_rational() == F(3, 4)
    with pytest.raises(ZeroDivisionError):
        a / QScalar.zero()


def test_qscalar_eval_and_negative_powers():
    x = QScalar.v_power(-2) + QScalar.v_power(1)
    assert x.eval(F(2)) == F(1, 4) + 2
    assert QScalar.v_power(-1) * QScalar.v_power(1) == QScalar.one()


def test_q_power_root_denominator():
    assert q_power(F(1, 2), 2) == QScalar.v_power(1)
    assert q_power(3, 1) == QScalar.v_power(3)
    with pytest.raises(ValueError):
        q_power(F(1, 3), 2)


def test_q_to_hseries_with_root():
    # v = q^{1/2} = exp(hbar/4)
    v = q_to_hseries(QScalar.v_power(1), 2, D=2)
    assert v.coeffs == (F(1), F(1, 4), F(1, 32))


def test_expscalar_ring():
    one = ExpScalar.const(1)
    e2 = ExpScalar.exp(2)
    assert e2 * ExpScalar.exp(-2) == one
    assert e2 - e2 == 0
    assert (e2 + one) * (e2 - one) == e2 * e2 - one
    assert not (e2 - one == 0)
    # division by monomials only
    assert (e2 + one) / e2 == one + ExpScalar.exp(-2)
    with pytest.raises(ZeroDivisionError):
        one / (e2 + one)


def test_expscalar_eval():
    import math

    x = ExpScalar.exp(1) * 2 - 1
    assert abs(x.eval() - (2 * math.e - 1)) < 1e-12
