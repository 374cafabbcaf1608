import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from skewlab.coeffs import QQ, GF, DtDerivation, IdentityTwist, QQt, ShiftTwist, frobenius
from skewlab.orepoly import OreRing

settings.register_profile(
    "default", max_examples=20, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

QT = QQt()
F2 = GF(2)
F4 = GF(2, 2)
F9 = GF(3, 2)


def qt_diff():
    return OreRing(QT, IdentityTwist(QT), DtDerivation(QT, IdentityTwist(QT)))


def qt_shift():
    return OreRing(QT, ShiftTwist(QT, 1))


def f4_frob():
    return OreRing(F4, frobenius(F4))


def f9_frob():
    return OreRing(F9, frobenius(F9))


def commutative(field):
    return OreRing(field)


def rand_scalar(rng, field, small=True):
    """Random element: finite fields uniformly, Q small fractions, Q(t) low degree."""
    if field.is_finite:
        return field.from_code(rng.randrange(field.q))
    if field is QQ:
        return QQ(rng.randint(-3, 3)) / rng.randint(1, 2)
    num = [rng.randint(-2, 2) for _ in range(rng.randint(1, 2))]
    den = [1] if rng.random() < 0.7 else [rng.randint(-1, 1) or 1, 1]
    return field.from_polys([QQ(c) for c in num], tuple(QQ(c) for c in den))


def rand_poly(rng, ring, deg, monic=False):
    cs = [rand_scalar(rng, ring.field) for _ in range(deg + 1)]
    if monic:
        cs[-1] = ring.field.one
    return ring.poly(cs)


@pytest.fixture
def rng():
    return random.Random(12345)


seeds = st.integers(min_value=0, max_value=10 ** 6)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
