"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1) of
Q[x]/(Phi_N) with an integer coefficient vector over a common positive
denominator.  All operations are exact; floating point appears only in
diagnostics and as certified intervals inside :func:`sign_of_real`.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from .errors import DivisionByZero, NotReal

__all__ = [
    "ExactScalar",
    "cyclotomic_polynomial",
    "euler_phi",
    "normalize",
    "invert",
    "conjugate",
    "sign_of_real",
    "root_of_unity",
    "rational",
]


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    """Quotient of integer polynomials known to divide exactly (den monic-ish)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead != 0:
            raise ArithmeticError("non-exact polynomial division")
        c //= lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first, monic."""
    if n < 1:
        raise ValueError("conductor must be a positive integer")
    if n == 1:
        return (-1, 1)
    # (x^n - 1) / prod_{d | n, d < n} Phi_d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divide_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _tables(n: int):
    """Per-conductor reduction data.

    Returns (phi, powers, conj_rows, red_bound) where powers[e] is the
    integer coefficient vector of x^e mod Phi_n for e = 0..max(n, 2*phi-1)-1,
    conj_rows[i] the vector of x^(-i), and red_bound a growth factor used by
    bulk code to certify int64 safety.
    """
    phi = euler_phi(n)
    cyc = cyclotomic_polynomial(n)
    assert len(cyc) == phi + 1 and cyc[phi] == 1
    top = [-c for c in cyc[:phi]]  # x^phi = top . basis
    count = max(n, 2 * phi - 1)
    powers: list[tuple[int, ...]] = []
    for e in range(phi):
        vec = [0] * phi
        vec[e] = 1
        powers.append(tuple(vec))
    for e in range(phi, count):
        prev = powers[e - 1]
        vec = [0] * phi
        for i in range(phi - 1):
            vec[i + 1] += prev[i]
        hi = prev[phi - 1]
        if hi:
            for i in range(phi):
                vec[i] += hi * top[i]
        powers.append(tuple(vec))
    conj_rows = tuple(powers[(n - i) % n] for i in range(phi))
    red_bound = 1
    for m in range(phi, 2 * phi - 1):
        red_bound = max(red_bound, 1 + sum(abs(c) for c in powers[m]))
    return phi, tuple(powers), conj_rows, red_bound


def _normalize_pair(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        den = -den
        num = [-c for c in num]
    g = den
    for c in num:
        if c:
            g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        den //= g
        num = [c // g for c in num]
    return tuple(num), den


def _reduce_raw(n: int, raw: list[int]) -> list[int]:
    """Reduce an integer coefficient list of any length mod Phi_n."""
    phi, powers, _, _ = _tables(n)
    out = list(raw[:phi]) + [0] * max(0, phi - len(raw))
    for e in range(phi, len(raw)):
        c = raw[e]
        if c:
            vec = powers[e] if e < len(powers) else None
            if vec is None:
                # exponent beyond table (sparse huge powers): fold mod n first
                vec = powers[e % n]
            for i in range(phi):
                out[i] += c * vec[i]
    return out


class ExactScalar:
    """An element of Q(zeta_N), reduced mod the N-th cyclotomic polynomial."""

    __slots__ = ("conductor", "_num", "_den")
    __hash__ = None  # cross-conductor equality makes hashing a trap

    def __init__(self, conductor: int, num, den: int = 1, _normalized: bool = False):
        phi, _, _, _ = _tables(conductor)
        if len(num) != phi:
            raise ValueError("coefficient vector has wrong length")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self.conductor = conductor
        if _normalized:
            self._num = tuple(num)
            self._den = den
        else:
            self._num, self._den = _normalize_pair(list(num), den)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_rational(q, conductor: int = 1) -> "ExactScalar":
        q = Fraction(q)
        phi, _, _, _ = _tables(conductor)
        num = [0] * phi
        num[0] = q.numerator
        return ExactScalar(conductor, num, q.denominator)

    @staticmethod
    def zeta_power(conductor: int, exponent: int = 1) -> "ExactScalar":
        phi, powers, _, _ = _tables(conductor)
        return ExactScalar(conductor, list(powers[exponent % conductor]), 1)

    @staticmethod
    def from_root_combo(conductor: int, combo) -> "ExactScalar":
        """Sum of coeff * zeta^e for (e, coeff) pairs; coeffs rational."""
        phi, powers, _, _ = _tables(conductor)
        den = 1
        items = []
        for e, c in (combo.items() if isinstance(combo, dict) else combo):
            c = Fraction(c)
            items.append((e % conductor, c))
            den = den * c.denominator // gcd(den, c.denominator)
        num = [0] * phi
        for e, c in items:
            scale = c.numerator * (den // c.denominator)
            vec = powers[e]
            for i in range(phi):
                num[i] += scale * vec[i]
        return ExactScalar(conductor, num, den)

    # -- representation -------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def numerator_vector(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._num)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self._num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self._num[0], self._den)

    def is_nonneg_integer(self) -> bool:
        return self.is_rational() and self._den == 1 and self._num[0] >= 0

    def __repr__(self):
        if self.is_rational():
            return f"ExactScalar({Fraction(self._num[0], self._den)})"
        terms = []
        for i, c in enumerate(self._num):
            if c:
                terms.append(f"{Fraction(c, self._den)}*z{self.conductor}^{i}")
        return "ExactScalar(" + " + ".join(terms) + ")"

    # -- conductor handling ----------------------------------------------

    def lift(self, m: int) -> "ExactScalar":
        """Embed into Q(zeta_m) for a multiple m of the conductor."""
        n = self.conductor
        if m == n:
            return self
        if m % n != 0:
            raise ValueError("can only lift to a multiple of the conductor")
        phi_m, powers_m, _, _ = _tables(m)
        step = m // n
        num = [0] * phi_m
        for i, c in enumerate(self._num):
            if c:
                vec = powers_m[(i * step) % m]
                for j in range(phi_m):
                    num[j] += c * vec[j]
        return ExactScalar(m, num, self._den)

    @staticmethod
    def common(a: "ExactScalar", b: "ExactScalar"):
        if a.conductor == b.conductor:
            return a, b
        m = a.conductor * b.conductor // gcd(a.conductor, b.conductor)
        return a.lift(m), b.lift(m)

    # -- ring operations --------------------------------------------------

    @staticmethod
    def _coerce(x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return ExactScalar.from_rational(x)
        return NotImplemented

    def __add__(self, other):
        other = ExactScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = ExactScalar.common(self, other)
        da, db = a._den, b._den
        g = gcd(da, db)
        la, lb = db // g, da // g
        num = [x * la + y * lb for x, y in zip(a._num, b._num)]
        return ExactScalar(a.conductor, num, da // g * db)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(self.conductor, [-c for c in self._num], self._den,
                           _normalized=True)

    def __sub__(self, other):
        other = ExactScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = ExactScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = ExactScalar.common(self, other)
        n = a.conductor
        phi, powers, _, _ = _tables(n)
        an, bn = a._num, b._num
        raw = [0] * (2 * phi - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        raw[i + j] += x * y
        out = list(raw[:phi])
        for e in range(phi, 2 * phi - 1):
            c = raw[e]
            if c:
                vec = powers[e]
                for i in range(phi):
                    out[i] += c * vec[i]
        return ExactScalar(n, out, a._den * b._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ExactScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * invert(other)

    def __rtruediv__(self, other):
        other = ExactScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * invert(self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else invert(self)
        k = abs(k)
        result = ExactScalar.from_rational(1, base.conductor)
        acc = base
        while k:
            if k & 1:
                result = result * acc
            acc = acc * acc
            k >>= 1
        return result

    def __eq__(self, other):
        other = ExactScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = ExactScalar.common(self, other)
        return a._num == b._num and a._den == b._den

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    # -- analytic views -----------------------------------------------------

    def __complex__(self) -> complex:
        z = 0j
        for i, c in enumerate(self._num):
            if c:
                z += c * cmath.exp(2j * cmath.pi * i / self.conductor)
        return z / self._den

    def __float__(self) -> float:
        return complex(self).real


def normalize(conductor: int, raw_coeffs) -> ExactScalar:
    """Reduce a raw polynomial in zeta_N (any degree, rational coeffs)."""
    coeffs = [Fraction(c) for c in raw_coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [c.numerator * (den // c.denominator) for c in coeffs]
    num = _reduce_raw(conductor, ints)
    return ExactScalar(conductor, num, den)


def rational(q) -> ExactScalar:
    return ExactScalar.from_rational(q)


def root_of_unity(conductor: int, exponent: int = 1) -> ExactScalar:
    return ExactScalar.zeta_power(conductor, exponent)


def conjugate(a: ExactScalar) -> ExactScalar:
    """Complex conjugation zeta -> zeta^(-1); a ring automorphism."""
    phi, _, conj_rows, _ = _tables(a.conductor)
    num = [0] * phi
    for i, c in enumerate(a._num):
        if c:
            row = conj_rows[i]
            for j in range(phi):
                num[j] += c * row[j]
    return ExactScalar(a.conductor, num, a._den)


def _poly_xgcd(a: list[Fraction], b: list[Fraction]):
    """Extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g."""

    def deg(p):
        for i in range(len(p) - 1, -1, -1):
            if p[i] != 0:
                return i
        return -1

    def trim(p):
        d = deg(p)
        return p[: d + 1] if d >= 0 else []

    def sub_scaled(p, q, c, shift):
        out = list(p) + [Fraction(0)] * max(0, len(q) + shift - len(p))
        for i, x in enumerate(q):
            out[i + shift] -= c * x
        return trim(out)

    def divmod_poly(p, q):
        p = trim(list(p))
        dq = deg(q)
        quo = [Fraction(0)] * max(0, len(p) - dq)
        while deg(p) >= dq:
            dp = deg(p)
            c = p[dp] / q[dq]
            quo[dp - dq] = c
            p = sub_scaled(p, q, c, dp - dq)
        return quo, p

    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]

    def poly_mul(p, q):
        if not p or not q:
            return []
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, x in enumerate(p):
            if x:
                for j, y in enumerate(q):
                    out[i + j] += x * y
        return trim(out)

    def poly_sub(p, q):
        out = list(p) + [Fraction(0)] * max(0, len(q) - len(p))
        for i, y in enumerate(q):
            out[i] -= y
        return trim(out)

    while r1:
        quo, rem = divmod_poly(r0, r1)
        r0, r1 = r1, trim(rem)
        s0, s1 = s1, poly_sub(s0, poly_mul(quo, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(quo, t1))
    return r0, s0, t0


def invert(a: ExactScalar) -> ExactScalar:
    """Multiplicative inverse via extended Euclid against Phi_N."""
    if a.is_zero():
        raise DivisionByZero("inverse of zero")
    if a.is_rational():
        q = a.as_fraction()
        return ExactScalar.from_rational(1 / q, a.conductor)
    n = a.conductor
    phi_poly = [Fraction(c) for c in cyclotomic_polynomial(n)]
    g, s, _ = _poly_xgcd([Fraction(c, a._den) for c in a._num], phi_poly)
    # g is a nonzero constant: Phi_N is irreducible over Q
    c = g[0]
    inv_coeffs = [x / c for x in s]
    return normalize(n, inv_coeffs)


def sign_of_real(a: ExactScalar) -> int:
    """Sign (-1, 0, 1) of a conjugation-fixed element.

    Zero is detected symbolically; otherwise certified interval evaluation
    with geometrically escalating precision, which terminates because the
    value is exactly nonzero.
    """
    if conjugate(a) != a:
        raise NotReal("element is not fixed by conjugation")
    if a.is_zero():
        return 0
    if a.is_rational():
        return 1 if a._num[0] > 0 else -1
    n = a.conductor
    prec = 64
    while True:
        with mpmath.workprec(prec):
            two_pi = mpmath.iv.pi * 2
            total = mpmath.iv.mpf(0)
            for i, c in enumerate(a._num):
                if c:
                    total += mpmath.iv.cos(two_pi * i / n) * c
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
        prec *= 2


def floor_ratio(a: ExactScalar, b: ExactScalar) -> int:
    """floor(a / b) for real a and real positive b, exactly."""
    x = a * invert(b)
    approx = float(x)
    t = int(approx // 1)
    while sign_of_real(x - rational(t)) < 0:
        t -= 1
    while sign_of_real(x - rational(t + 1)) >= 0:
        t += 1
    return t
