"""Exact scalars: rationals and values a + b*sqrt(d) with exact ordering."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Union

Number = Union[int, Fraction, "ExactScalar"]


@lru_cache(maxsize=4096)
def squarefree_part(n: int) -> tuple[int, int]:
    """Split a positive integer as s**2 * d with d square-free; returns (s, d)."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, d, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    return s, d * n


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def sign2(a: Fraction, b: Fraction, d: int) -> int:
    """Sign of a + b*sqrt(d) for square-free d >= 2 (or b == 0)."""
    sa, sb = _sign(a), _sign(b)
    if sb == 0 or d == 1:
        return _sign(a + b) if d == 1 else sa
    if sa == 0 or sa == sb:
        return sb
    return sa if a * a > b * b * d else sb


def sign3(a: Fraction, b: Fraction, p: int, c: Fraction, q: int) -> int:
    """Sign of a + b*sqrt(p) + c*sqrt(q) with distinct square-free p, q.

    Two squarings: the first two terms have a known sign, the third too;
    when they disagree we compare squares, which lives in Q(sqrt(p)).
    """
    s1 = sign2(a, b, p)
    s2 = _sign(c)
    if s1 == 0:
        return s2
    if s2 == 0 or s1 == s2:
        return s1
    t = sign2(a * a + b * b * p - c * c * q, 2 * a * b, p)
    return s1 if t > 0 else s2


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        if any(ch in v for ch in ".eE"):
            raise ValueError(f"decimal literals are not exact: {v!r}")
        return Fraction(v)
    raise TypeError(f"cannot read {v!r} as a rational")


@dataclass(frozen=True)
class ExactScalar:
    """a + b*sqrt(d); rational when b == 0 (then d is stored as 1)."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self) -> None:
        a, b, d = _frac(self.a), _frac(self.b), int(self.d)
        if d < 1:
            raise ValueError("radicand must be positive")
        if b != 0 and d != 1:
            s, d = squarefree_part(d)
            b *= s
        if d == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            d = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def of(cls, v: Number) -> "ExactScalar":
        if isinstance(v, ExactScalar):
            return v
        return cls(_frac(v))

    @classmethod
    def sqrt(cls, q: Number) -> "ExactScalar":
        """Square root of a non-negative rational."""
        q = _frac(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls(Fraction(0))
        num, den = q.numerator * q.denominator, q.denominator
        s, d = squarefree_part(num)
        return cls(Fraction(0), Fraction(s, den), d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def kind(self) -> str:
        return "Rational" if self.is_rational else "Quadratic"

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.a, -self.b, self.d)

    def _radicand_with(self, other: "ExactScalar") -> int:
        if self.d == 1:
            return other.d
        if other.d in (1, self.d):
            return self.d
        raise ValueError(f"mixed radicands {self.d} and {other.d} in arithmetic")

    def __add__(self, other: Number) -> "ExactScalar":
        o = ExactScalar.of(other)
        d = self._radicand_with(o)
        return ExactScalar(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.a, -self.b, self.d)

    def __sub__(self, other: Number) -> "ExactScalar":
        return self + (-ExactScalar.of(other))

    def __rsub__(self, other: Number) -> "ExactScalar":
        return ExactScalar.of(other) - self

    def __mul__(self, other: Number) -> "ExactScalar":
        o = ExactScalar.of(other)
        d = self._radicand_with(o)
        return ExactScalar(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "ExactScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return ExactScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: Number) -> "ExactScalar":
        return self * ExactScalar.of(other).inverse()

    def __rtruediv__(self, other: Number) -> "ExactScalar":
        return ExactScalar.of(other) * self.inverse()

    def sign(self) -> int:
        return sign2(self.a, self.b, self.d)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.of(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return (self.a, self.b, self.d) == (other.a, other.b, other.d)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __lt__(self, other: Number) -> bool:
        return compare(self, ExactScalar.of(other)) < 0

    def __le__(self, other: Number) -> bool:
        return compare(self, ExactScalar.of(other)) <= 0

    def __gt__(self, other: Number) -> bool:
        return compare(self, ExactScalar.of(other)) > 0

    def __ge__(self, other: Number) -> bool:
        return compare(self, ExactScalar.of(other)) >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.d ** 0.5

    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational interval containing the value, of width about 2**-bits * |b|."""
        if self.is_rational:
            return self.a, self.a
        scale = 1 << bits
        r = isqrt(self.d * scale * scale)
        lo, hi = Fraction(r, scale), Fraction(r + 1, scale)
        if self.b > 0:
            return self.a + self.b * lo, self.a + self.b * hi
        return self.a + self.b * hi, self.a + self.b * lo

    def to_json(self) -> dict:
        if self.is_rational:
            return {"rat": str(self.a)}
        return {"quad": {"a": str(self.a), "b": str(self.b), "d": self.d}}

    @classmethod
    def from_json(cls, obj: dict) -> "ExactScalar":
        if "rat" in obj:
            return cls(_frac(obj["rat"]))
        q = obj["quad"]
        return cls(_frac(q["a"]), _frac(q["b"]), int(q["d"]))

    def __repr__(self) -> str:
        if self.is_rational:
            return str(self.a)
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt({self.d})"


def compare(x: Number, y: Number) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    x, y = ExactScalar.of(x), ExactScalar.of(y)
    if x.d == 1 or y.d == 1 or x.d == y.d:
        d = max(x.d, y.d)
        return sign2(x.a - y.a, x.b - y.b, d)
    return sign3(x.a - y.a, x.b, x.d, -y.b, y.d)


def rational_between(x: ExactScalar, y: ExactScalar) -> Fraction:
    """A rational strictly between two distinct exact scalars."""
    if compare(x, y) > 0:
        x, y = y, x
    if compare(x, y) == 0:
        raise ValueError("no rational strictly between equal values")
    bits = 8
    while True:
        _, xhi = x.bounds(bits)
        ylo, _ = y.bounds(bits)
        if xhi < ylo:
            mid = (xhi + ylo) / 2
            # prefer a short representative
            for den in (1, 2, 4, 8, 16):
                cand = Fraction(round(mid * den), den)
                if xhi < cand < ylo or (compare(x, cand) < 0 and compare(cand, y) < 0):
                    return cand
            return mid
        bits *= 2
