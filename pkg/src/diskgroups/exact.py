"""Exact arithmetic in the fifth cyclotomic field and in real quadratic fields.

CyclotomicElement represents numbers c0 + c1*z + c2*z**2 + c3*z**3 with
z = exp(2*pi*i/5) and rational coefficients.  QuadraticReal represents
a + b*sqrt(d) for d in {2, 3, 5} with exact sign evaluation.  The module
also carries the closed-form critical radii known for rotation orders
5, 8, 10 and 12, together with their integer minimal polynomials.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "CyclotomicElement",
    "QuadraticReal",
    "ZETA",
    "closed_form_radius_squared",
    "critical_radius_float",
    "minpoly",
    "minpoly_check",
    "to_quadratic_real",
]

_QUADRATIC_DS = (2, 3, 5)


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class CyclotomicElement:
    """Element of Q(z) with z a primitive fifth root of unity.

    Stored on the basis {1, z, z**2, z**3}; z**4 reduces to
    -(1 + z + z**2 + z**3).
    """

    __slots__ = ("coeffs",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.coeffs = (_frac(c0), _frac(c1), _frac(c2), _frac(c3))

    @classmethod
    def zeta(cls, k=1):
        """z**k for any integer k."""
        k %= 5
        if k < 4:
            c = [0, 0, 0, 0]
            c[k] = 1
            return cls(*c)
        return cls(-1, -1, -1, -1)

    @classmethod
    def from_rational(cls, q):
        return cls(_frac(q), 0, 0, 0)

    def _coerce(self, other):
        if isinstance(other, CyclotomicElement):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        return CyclotomicElement(*(a[i] + b[i] for i in range(4)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(*(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        return CyclotomicElement(*(a[i] - b[i] for i in range(4)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        e = [Fraction(0)] * 7
        for i in range(4):
            ai = a[i]
            if ai:
                for j in range(4):
                    e[i + j] += ai * b[j]
        # Reduce z**4 = -(1+z+z**2+z**3), z**5 = 1, z**6 = z.
        return CyclotomicElement(
            e[0] - e[4] + e[5],
            e[1] - e[4] + e[6],
            e[2] - e[4],
            e[3] - e[4],
        )

    __rmul__ = __mul__

    def galois(self, k):
        """Image under the field automorphism z -> z**k, k in 1..4."""
        k %= 5
        if k == 0:
            raise ValueError("galois exponent must be nonzero mod 5")
        v = [Fraction(0)] * 5
        for i, c in enumerate(self.coeffs):
            v[(i * k) % 5] += c
        return CyclotomicElement(v[0] - v[4], v[1] - v[4], v[2] - v[4], v[3] - v[4])

    def conjugate(self):
        """Complex conjugate (z -> z**4)."""
        return self.galois(4)

    def abs_squared(self):
        """Self times its complex conjugate; always a real element."""
        return self * self.conjugate()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        y = self.galois(2) * self.galois(3) * self.galois(4)
        d = self * y
        c = d.coeffs
        if c[1] or c[2] or c[3]:
            raise ArithmeticError("conjugate product failed to be rational")
        return y * (Fraction(1) / c[0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def is_real(self):
        c = self.coeffs
        return c[1] == 0 and c[2] == c[3]

    def to_complex(self):
        z = complex(math.cos(2 * math.pi / 5), math.sin(2 * math.pi / 5))
        acc = complex(0)
        for c in reversed(self.coeffs):
            acc = acc * z + complex(float(c))
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"CyclotomicElement{self.coeffs}"


ZETA = CyclotomicElement.zeta()


def to_quadratic_real(x):
    """Convert a real cyclotomic element to its a + b*sqrt(5) form.

    Real elements are exactly the rational combinations a + b*(z + z**4),
    and z + z**4 = (-1 + sqrt(5))/2.
    """
    if not isinstance(x, CyclotomicElement):
        raise TypeError("to_quadratic_real expects a CyclotomicElement")
    if not x.is_real():
        raise ValueError(f"element is not real: {x!r}")
    c = x.coeffs
    b = -c[2]
    a = c[0] - c[2]
    return QuadraticReal(a - b / 2, b / 2, 5)


class QuadraticReal:
    """Exact number a + b*sqrt(d) with rational a, b and d in {2, 3, 5}."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=5):
        if d not in _QUADRATIC_DS:
            raise ValueError(f"unsupported radicand {d!r}")
        self.a = _frac(a)
        self.b = _frac(b)
        self.d = d

    @classmethod
    def sqrt_d(cls, d):
        return cls(0, 1, d)

    def _coerce(self, other):
        if isinstance(other, QuadraticReal):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise ValueError(f"mixed radicands {self.d} and {other.d}")
            if other.d != self.d:
                # One side is purely rational; unify on the irrational side.
                d = self.d if self.b != 0 else other.d
                return QuadraticReal(self.a, self.b, d), QuadraticReal(other.a, other.b, d)
            return self, other
        if isinstance(other, (int, Fraction)):
            return self, QuadraticReal(other, 0, self.d)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadraticReal(s.a + o.a, s.b + o.b, s.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticReal(-self.a, -self.b, self.d)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadraticReal(s.a - o.a, s.b - o.b, s.d)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return o - s

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadraticReal(s.a * o.a + s.b * o.b * s.d, s.a * o.b + s.b * o.a, s.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        den = o.a * o.a - o.b * o.b * o.d
        if den == 0:
            if o.a == 0 and o.b == 0:
                raise ZeroDivisionError("division by zero quadratic real")
            raise ArithmeticError("degenerate divisor")
        num = s * QuadraticReal(o.a, -o.b, s.d)
        return QuadraticReal(num.a / den, num.b / den, s.d)

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return o / s

    def sign(self):
        """Exact sign: -1, 0 or 1."""
        a, b = self.a, self.b
        if b == 0:
            return -1 if a < 0 else (0 if a == 0 else 1)
        if a == 0:
            return -1 if b < 0 else 1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Opposite signs: compare a*a against b*b*d.
        lhs = a * a
        rhs = b * b * self.d
        if lhs == rhs:
            return 0
        if a > 0:
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    def is_zero(self):
        return self.sign() == 0

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return s.a == o.a and s.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return (s - o).sign() < 0

    def __le__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return (s - o).sign() <= 0

    def __gt__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return (s - o).sign() > 0

    def __ge__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return (s - o).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadraticReal({self.a}, {self.b}, d={self.d})"


# Squared critical radii with exact closed forms, and the integer quartic
# (even) minimal polynomials of the radii themselves.  Keys are rotation
# orders of the symmetric two-disk system.
_RC_SQUARED = {
    5: QuadraticReal(Fraction(7, 2), Fraction(1, 2), 5),
    8: QuadraticReal(10, -5, 2),
    10: QuadraticReal(Fraction(7, 2), Fraction(-1, 2), 5),
    12: QuadraticReal(40, -22, 3),
}

_MINPOLY = {
    5: (1, -7, 11),
    8: (1, -20, 50),
    10: (1, -7, 11),
    12: (1, -80, 148),
}


def closed_form_radius_squared(n):
    """Exact squared critical radius for n in {5, 8, 10, 12}."""
    try:
        return _RC_SQUARED[n]
    except KeyError:
        raise ValueError(f"no closed form known for order {n}") from None


def minpoly(n):
    """Even quartic (x**4, x**2, 1) coefficients annihilating the radius."""
    try:
        return _MINPOLY[n]
    except KeyError:
        raise ValueError(f"no minimal polynomial known for order {n}") from None


def critical_radius_float(n):
    return math.sqrt(float(closed_form_radius_squared(n)))


def minpoly_check(coeffs, value):
    """True iff the even integer quartic annihilates the exact radius.

    coeffs is (p4, p2, p0) for p4*x**4 + p2*x**2 + p0, or the full
    five-coefficient quartic whose odd coefficients must be zero.
    value is the exact squared radius as a QuadraticReal.
    """
    coeffs = tuple(coeffs)
    if not all(isinstance(c, int) for c in coeffs):
        raise TypeError("polynomial coefficients must be integers")
    if len(coeffs) == 5:
        if coeffs[1] != 0 or coeffs[3] != 0:
            raise ValueError("quartic must have zero odd coefficients")
        coeffs = (coeffs[0], coeffs[2], coeffs[4])
    if len(coeffs) != 3:
        raise ValueError("expected 3 or 5 coefficients")
    if not isinstance(value, QuadraticReal):
        raise TypeError("value must be a QuadraticReal squared radius")
    p4, p2, p0 = coeffs
    acc = value * value * p4 + value * p2 + p0
    return acc.sign() == 0
