from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsf.quasihopf import QConfig
from qsf.scalars import ONE, BetaChoice, CycScalar, LaurentScalar, zeta_pow

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
cyc = st.tuples(rationals, rationals, rationals, rationals).map(lambda c: CycScalar(*c))
laurent = st.dictionaries(st.integers(-3, 3), cyc, max_size=3).map(LaurentScalar)

LAWS = settings(max_examples=1000, deadline=None)


def naive_mul(a, b):
    # schoolbook product in Q[x], then x^4 = -1
    prod = [Fraction(0)] * 7
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    return [prod[k] - (prod[k + 4] if k + 4 < 7 else 0) for k in range(4)]


def fracs(x: CycScalar):
    return [Fraction(int(c.numerator), int(c.denominator)) for c in x.c]


@LAWS
@given(cyc, cyc)
def test_product_matches_schoolbook_oracle(a, b):
    assert fracs(a * b) == naive_mul(fracs(a), fracs(b))


@LAWS
@given(cyc, cyc, cyc)
def test_field_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b - b == a


@LAWS
@given(cyc, cyc)
def test_division_inverts_multiplication(a, b):
    if b:
        assert (a / b) * b == a
        assert b * (ONE / b) == ONE


@LAWS
@given(cyc, cyc)
def test_conjugation_is_a_ring_automorphism(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.conjugate().conjugate() == a


@LAWS
@given(laurent, laurent, laurent)
def test_laurent_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentScalar()


def test_zeta_order_eight():
    z = zeta_pow(1)
    assert z ** 4 == -ONE
    assert z ** 8 == ONE
    assert z ** -1 == zeta_pow(7)
    assert zeta_pow(2) * zeta_pow(2) == -ONE


def test_laurent_units():
    x = LaurentScalar.monomial(zeta_pow(3) * 2, 5)
    assert x.is_unit()
    assert x * x.inverse() == LaurentScalar.coerce(1)
    with pytest.raises(ZeroDivisionError):
        (x + LaurentScalar.coerce(1)).inverse()


def test_json_roundtrip():
    a = CycScalar(Fraction(1, 3), -2, 0, Fraction(7, 5))
    assert CycScalar.from_json(a.to_json()) == a
    x = LaurentScalar({-2: a, 1: ONE})
    assert LaurentScalar.from_json(x.to_json()) == x


@pytest.mark.parametrize("n,b", [(1, 0), (1, 2), (2, 1), (3, 4)])
def test_parity_constraint_rejected(n, b):
    with pytest.raises(ValueError, match=r"beta\^4 = \(-1\)\^N"):
        BetaChoice(n, b)
    with pytest.raises(ValueError):
        QConfig(n, b)


def test_beta_power_four_is_parity():
    for n in (1, 2, 3):
        for b in range(n % 2, 8, 2):
            assert BetaChoice(n, b).pow(4) == CycScalar((-1) ** n)
