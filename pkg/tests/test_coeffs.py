import random

import pytest
import sympy
from hypothesis import given

from conftest import F2, F4, F9, QT, rand_scalar, seeds
from skewlab.coeffs import (QQ, GF, CustomDerivation, DtDerivation, IdentityTwist, ShiftTwist,
                            check_ore_data, field_from_spec, fp_is_irreducible_exhaustive,
                            fp_proper_factor, frobenius)
from skewlab.errors import ParseError, UnsupportedRingError

FIELDS = [QQ, GF(5), F2, F4, F9, QT]


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.name)
@given(seed=seeds)
def test_field_axioms(F, seed):
    rng = random.Random(seed)
    a, b, c = (rand_scalar(rng, F) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == F.zero
    if a:
        assert a * F.inv(a) == F.one


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.name)
@given(seed=seeds)
def test_format_parse_roundtrip(F, seed):
    a = rand_scalar(random.Random(seed), F)
    assert F.parse(F.format(a)) == a


def test_f4_table():
    a = F4.gen
    assert a * a == a + F4.one
    assert len(list(F4.elements())) == 4
    assert all(x ** 3 == F4.one for x in F4.elements() if x)


def test_prime_field_is_integers_mod_p():
    F = GF(7)
    for x in range(7):
        for y in range(7):
            assert F(x) * F(y) == F(x * y % 7)


@given(seed=seeds)
def test_qt_against_sympy(seed):
    rng = random.Random(seed)
    a, b = rand_scalar(rng, QT), rand_scalar(rng, QT)
    ea, eb = (sympy.sympify(QT.format(x).replace("^", "**")) for x in (a, b))
    got = sympy.sympify(QT.format(a * b - a).replace("^", "**"))
    assert sympy.simplify(got - (ea * eb - ea)) == 0


@pytest.mark.parametrize("F", [F4, F9, GF(2, 3)], ids=lambda F: F.name)
def test_frobenius_is_automorphism(F):
    s = frobenius(F)
    elems = list(F.elements())
    assert sorted(F.code(s(x)) for x in elems) == list(range(F.q))
    for x in elems:
        assert s(x) == x ** F.p
    check_ore_data(F, s, CustomDerivation(F, s, F.zero))


def test_frobenius_order():
    s = frobenius(F9)
    assert s.order == 2
    assert all(s(s(x)) == x for x in F9.elements())


def test_dt_leibniz():
    d = DtDerivation(QT, IdentityTwist(QT))
    check_ore_data(QT, IdentityTwist(QT), d)
    assert d(QT.parse("1/t")) == QT.parse("-1/t^2")


def test_shift():
    s = ShiftTwist(QT, 1)
    assert s(QT.parse("t^2")) == QT.parse("t^2 + 2*t + 1")
    assert s.inverse()(s(QT.parse("1/(t+3)"))) == QT.parse("1/(t+3)")


def test_custom_sigma_derivation_over_f4():
    s = frobenius(F4)
    d = CustomDerivation(F4, s, F4.one)
    check_ore_data(F4, s, d)


def test_dt_needs_identity():
    with pytest.raises(UnsupportedRingError):
        DtDerivation(QT, ShiftTwist(QT, 1))


def test_field_from_spec():
    assert field_from_spec("QQ") is QQ
    assert field_from_spec("GF(4)").q == 4
    assert field_from_spec("GF(3,2)").q == 9
    assert field_from_spec("Q(t)") == QT
    assert field_from_spec({"type": "GF", "p": 5}).q == 5
    for bad in ("GF(6)", "R", "GF(1)"):
        with pytest.raises(ParseError):
            field_from_spec(bad)


def test_proper_factor_mod_p():
    # x^4 + 1 splits over F_p for every odd p; (x^2+x+1)^2 over F_2
    for m, p in [((1, 0, 0, 0, 1), 3), ((1, 0, 1, 0, 1), 2)]:
        assert not fp_is_irreducible_exhaustive(list(m), p)
        f = fp_proper_factor(list(m), p)
        assert f is not None and 0 < len(f) - 1 < len(m) - 1
    assert fp_proper_factor([1, 1, 1], 2) is None
