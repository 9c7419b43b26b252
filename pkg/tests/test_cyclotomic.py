"""Exact cyclotomic arithmetic: spec examples, field axioms, sign oracle."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfclib.cyclotomic import (
    ExactScalar,
    conjugate,
    cyclotomic_polynomial,
    euler_phi,
    floor_ratio,
    invert,
    normalize,
    rational,
    root_of_unity,
    sign_of_real,
)
from mfclib.errors import DivisionByZero, NotReal


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    for n in (1, 2, 5, 8, 30, 60):
        assert len(cyclotomic_polynomial(n)) == euler_phi(n) + 1


def test_normalize_examples():
    assert normalize(4, [1, 0, 1]).is_zero()          # zeta_4^2 + 1
    assert normalize(3, [1, 1, 1]).is_zero()          # all cube roots
    s = root_of_unity(8) + root_of_unity(8, 7)
    assert (s * s) == rational(2)                     # (z8 + z8^7)^2


def test_normalize_idempotent():
    raw = [Fraction(3, 2), 0, 1, 5, -2, 7, 0, 1, 1]   # degree beyond phi(12)
    a = normalize(12, raw)
    b = normalize(12, a.coeffs)
    assert a == b


def test_invert_examples():
    assert invert(rational(2)) == rational(Fraction(1, 2))
    for n in (5, 8, 12):
        assert invert(root_of_unity(n)) == root_of_unity(n, n - 1)
    a = rational(1) + root_of_unity(5)
    # extended-Euclid oracle: the defining property is product == 1
    assert a * invert(a) == rational(1)
    with pytest.raises(DivisionByZero):
        invert(rational(0))


def test_conjugate_examples():
    assert conjugate(root_of_unity(4)) == -root_of_unity(4)
    assert conjugate(rational(Fraction(7, 3))) == rational(Fraction(7, 3))
    real = root_of_unity(5) + root_of_unity(5, 4)
    assert conjugate(real) == real


def test_sign_of_real_examples():
    assert sign_of_real(root_of_unity(8) + root_of_unity(8, 7)) == 1
    assert sign_of_real(rational(0)) == 0
    v = root_of_unity(5) + root_of_unity(5, 4) + rational(Fraction(1, 2))
    assert sign_of_real(v) == 1          # 2 cos 72 + 1/2 ~ 1.118
    assert sign_of_real(-v) == -1
    with pytest.raises(NotReal):
        sign_of_real(root_of_unity(5))


def test_sign_matches_float_when_visible():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.choice([3, 4, 5, 8, 12, 20, 36, 60])
        coeffs = [rng.randint(-4, 4) for _ in range(euler_phi(n))]
        a = ExactScalar(n, coeffs)
        a = a + conjugate(a)             # force a real element
        f = float(a)
        if abs(f) > 1e-6:
            assert sign_of_real(a) == (1 if f > 0 else -1)


def test_cross_conductor_arithmetic():
    assert root_of_unity(6, 3) == rational(-1)
    z4, z6 = root_of_unity(4), root_of_unity(6)
    prod = z4 * z6
    assert prod.conductor == 12
    assert prod == root_of_unity(12, 3 + 2)
    # equality lifts both sides
    assert root_of_unity(4) == root_of_unity(12, 3)


def test_pow_and_floor():
    a = root_of_unity(8) + root_of_unity(8, 7)       # sqrt 2
    assert a ** 2 == rational(2)
    assert a ** -2 == rational(Fraction(1, 2))
    assert floor_ratio(rational(12), a) == 8
    assert floor_ratio(rational(12), rational(4)) == 3
    assert floor_ratio(rational(-1), rational(2)) == -1


_conductors = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 21, 24,
                               30, 36, 40, 45, 48, 60])


@st.composite
def _scalar(draw, conductor=None):
    n = conductor if conductor is not None else draw(_conductors)
    phi = euler_phi(n)
    num = [draw(st.integers(-9, 9)) for _ in range(phi)]
    den = draw(st.integers(1, 6))
    return ExactScalar(n, num, den)


@st.composite
def _scalar_triple(draw):
    n = draw(_conductors)
    return (draw(_scalar(n)), draw(_scalar(n)), draw(_scalar(n)))


@settings(max_examples=300, deadline=None)
@given(_scalar_triple())
def test_field_axioms(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=200, deadline=None)
@given(_scalar())
def test_inverse_axiom(a):
    if not a.is_zero():
        assert a * invert(a) == rational(1)


@settings(max_examples=200, deadline=None)
@given(_scalar_triple())
def test_conjugation_automorphism(triple):
    a, b, _ = triple
    assert conjugate(conjugate(a)) == a
    assert conjugate(a * b) == conjugate(a) * conjugate(b)
    assert conjugate(a + b) == conjugate(a) + conjugate(b)


def test_randomized_axiom_bulk():
    """Seeded mass test over conductors <= 60 (fast path for the big count)."""
    rng = random.Random(20240811)
    conductors = [1, 2, 3, 4, 6, 8, 12, 20, 24, 36, 48, 60]
    cases = 0
    for _ in range(1500):
        n = rng.choice(conductors)
        phi = euler_phi(n)
        mk = lambda: ExactScalar(n, [rng.randint(-5, 5) for _ in range(phi)],
                                 rng.randint(1, 4))
        a, b, c = mk(), mk(), mk()
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        cases += 3
    assert cases >= 4000
