from __future__ import annotations

import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrangeo.exact import ExactScalar, compare, rational_between, squarefree_part

mpmath.mp.dps = 100


def q(a, b=0, d=1):
    return ExactScalar(F(a), F(b), d)


def as_mpf(x: ExactScalar):
    return mpmath.mpf(x.a.numerator) / x.a.denominator + \
        mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(x.d)


def test_compare_examples():
    assert compare(F(1, 2), F(1, 3)) == 1
    assert compare(ExactScalar.sqrt(2), F(3, 2)) == -1
    assert compare(q(1, 1, 2), q(1, 1, 3)) == -1


def test_normalization():
    x = ExactScalar(F(1), F(3), 8)  # 1 + 3*sqrt(8) = 1 + 6*sqrt(2)
    assert (x.a, x.b, x.d) == (1, 6, 2)
    assert ExactScalar(F(1), F(2), 4).kind == "Rational"
    assert ExactScalar(F(1), F(2), 4) == ExactScalar.of(5)
    assert ExactScalar(F(2), F(0), 7).d == 1
    assert ExactScalar.sqrt(F(8, 9)) == ExactScalar(F(0), F(2, 3), 2)


def test_squarefree_part():
    assert squarefree_part(72) == (6, 2)
    assert squarefree_part(1) == (1, 1)
    assert squarefree_part(30) == (1, 30)


def test_arithmetic_same_radicand():
    r2 = ExactScalar.sqrt(2)
    assert r2 * r2 == ExactScalar.of(2)
    x = q(1, 1, 2)
    assert x * x.conjugate() == ExactScalar.of(-1)
    assert x / x == ExactScalar.of(1)
    assert (x - x).is_rational
    with pytest.raises(ValueError):
        _ = r2 + ExactScalar.sqrt(3)


def test_decimal_strings_rejected():
    with pytest.raises(ValueError):
        ExactScalar.of("0.5")
    assert ExactScalar.of("3/6") == ExactScalar.of(F(1, 2))


def test_json_round_trip():
    for x in (ExactScalar.of(F(-7, 3)), q(F(1, 2), F(-3, 4), 5)):
        assert ExactScalar.from_json(x.to_json()) == x
    assert ExactScalar.of(2).to_json() == {"rat": "2"}
    assert q(0, 1, 2).to_json() == {"quad": {"a": "0", "b": "1", "d": 2}}


def test_compare_against_interval_oracle_10k_pairs():
    rng = random.Random(2024)
    radicands = [1, 2, 3, 5, 6, 7, 10, 11, 13]
    for _ in range(10_000):
        xs = []
        for _ in range(2):
            a = F(rng.randint(-50, 50), rng.randint(1, 12))
            b = F(rng.randint(-20, 20), rng.randint(1, 12))
            xs.append(ExactScalar(a, b, rng.choice(radicands)))
        x, y = xs
        diff = as_mpf(x) - as_mpf(y)
        want = 0 if abs(diff) < mpmath.mpf(10) ** -80 else (1 if diff > 0 else -1)
        assert compare(x, y) == want, (x, y)


small = st.builds(F, st.integers(-200, 200), st.integers(1, 12))
scalars = st.builds(lambda a, b, d: ExactScalar(a, b, d), small, small, st.sampled_from([1, 2, 3, 5, 7, 15]))


@settings(max_examples=300, deadline=None)
@given(scalars, scalars, scalars)
def test_compare_is_a_total_order(x, y, z):
    assert compare(x, y) == -compare(y, x)
    assert (compare(x, y) == 0) == (x == y)
    if compare(x, y) <= 0 and compare(y, z) <= 0:
        assert compare(x, z) <= 0


@settings(max_examples=200, deadline=None)
@given(scalars, scalars)
def test_rational_between(x, y):
    if compare(x, y) == 0:
        return
    lo, hi = (x, y) if compare(x, y) < 0 else (y, x)
    r = rational_between(lo, hi)
    assert compare(lo, r) < 0 and compare(r, hi) < 0


@settings(max_examples=200, deadline=None)
@given(scalars)
def test_bounds_enclose_value(x):
    lo, hi = x.bounds(30)
    assert compare(lo, x) <= 0 <= compare(hi, x)
