"""Exact arithmetic in real quadratic fields Q(sqrt(D)).

Integers and rationals are Python's ``int`` and :class:`fractions.Fraction`.
:class:`QuadraticSurd` holds ``(a + b*sqrt(D))/c`` in canonical form and
never touches floating point: floors and comparisons go through integer
square roots.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DomainError

__all__ = [
    "QuadraticSurd",
    "isqrt",
    "is_square",
    "squarefree_decompose",
    "parse_surd",
    "surd_arith",
    "conjugate",
    "norm",
    "floor_surd",
    "compare",
]


def isqrt(n: int) -> int:
    """Largest ``t`` with ``t*t <= n``."""
    if n < 0:
        raise DomainError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


@lru_cache(maxsize=1)
def _small_primes(limit: int = 1 << 17) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Split ``n >= 1`` as ``s*s*r`` with ``r`` squarefree; returns ``(s, r)``.

    Trial division runs up to the cube root of the unfactored part, after
    which the cofactor has at most two prime factors and is squarefree
    unless it is a perfect square. Past the sieve limit the result is only
    guaranteed to satisfy ``n == s*s*r``.
    """
    if n < 1:
        raise DomainError(f"squarefree_decompose needs n >= 1, got {n}")
    s, r, m = 1, 1, n
    for p in _small_primes():
        if p * p * p > m:
            break
        if m % p:
            continue
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    if is_square(m):
        s *= math.isqrt(m)
    else:
        r *= m
    return s, r


def _check_radicand(D):
    if D is None:
        return
    if not isinstance(D, int) or isinstance(D, bool):
        raise DomainError(f"radicand must be an int, got {D!r}")
    if D < 2 or is_square(D):
        raise DomainError(f"radicand must be a non-square integer >= 2, got {D}")


class QuadraticSurd:
    """The real number ``(a + b*sqrt(D))/c``.

    Canonical form: ``c >= 1`` and ``gcd(a, b, c) == 1``. ``b == 0`` encodes a
    rational; such values may carry ``D=None`` and then adopt the radicand of
    whatever they are combined with. Instances are immutable and hashable.
    """

    __slots__ = ("a", "b", "c", "D")

    def __init__(self, a: int, b: int = 0, c: int = 1, D: int | None = None):
        for name, v in (("a", a), ("b", b), ("c", c)):
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"{name} must be an int, got {type(v).__name__}")
        if c == 0:
            raise ZeroDivisionError("surd with zero denominator")
        _check_radicand(D)
        if b != 0 and D is None:
            raise DomainError("an irrational surd needs a radicand D")
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(a, b, c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticSurd is immutable")

    def __reduce__(self):
        return (QuadraticSurd, (self.a, self.b, self.c, self.D))

    # construction helpers

    @classmethod
    def rational(cls, q, D: int | None = None) -> QuadraticSurd:
        q = Fraction(q)
        return cls(q.numerator, 0, q.denominator, D)

    @classmethod
    def sqrt(cls, D: int) -> QuadraticSurd:
        return cls(0, 1, 1, D)

    @classmethod
    def parse(cls, text: str, D: int | None = None) -> QuadraticSurd:
        return parse_surd(text, D)

    def _coerce(self, other) -> QuadraticSurd | None:
        if isinstance(other, QuadraticSurd):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return QuadraticSurd.rational(other, self.D)
        return None

    # predicates and parts

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def rational_part(self) -> Fraction:
        return Fraction(self.a, self.c)

    @property
    def radical_part(self) -> Fraction:
        """Coefficient of sqrt(D)."""
        return Fraction(self.b, self.c)

    def to_fraction(self) -> Fraction:
        if self.b:
            raise DomainError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def sign(self) -> int:
        """Exact sign of the value."""
        return _sign_of(self.a, self.b, self.D)

    def conjugate(self) -> QuadraticSurd:
        return QuadraticSurd(self.a, -self.b, self.c, self.D)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b * (self.D or 0), self.c * self.c)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.c)

    def floor(self) -> int:
        return floor_surd(self)

    # arithmetic

    def _field(self, other: QuadraticSurd) -> int | None:
        if self.D is None:
            return other.D
        if other.D is None or other.D == self.D:
            return self.D
        if self.b == 0:
            return other.D
        if other.b == 0:
            return self.D
        raise DomainError(f"cannot mix Q(sqrt({self.D})) and Q(sqrt({other.D}))")

    def __add__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        D = self._field(y)
        return QuadraticSurd(self.a * y.c + y.a * self.c, self.b * y.c + y.b * self.c, self.c * y.c, D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.c, self.D)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y + (-self)

    def __mul__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        D = self._field(y)
        a = self.a * y.a + self.b * y.b * (D or 0)
        b = self.a * y.b + self.b * y.a
        return QuadraticSurd(a, b, self.c * y.c, D)

    __rmul__ = __mul__

    def inverse(self) -> QuadraticSurd:
        # 1/x = c * conj(a + b sqrt D) / (a^2 - b^2 D)
        n = self.a * self.a - self.b * self.b * (self.D or 0)
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        return QuadraticSurd(self.c * self.a, -self.c * self.b, n, self.D)

    def __truediv__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        self._field(y)
        return self * y.inverse()

    def __rtruediv__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = QuadraticSurd(1, 0, 1, self.D)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison

    def __eq__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        if self.b == 0 and y.b == 0:
            return self.a == y.a and self.c == y.c
        return (self.a, self.b, self.c, self.D) == (y.a, y.b, y.c, y.D)

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.D))

    def _cmp(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return compare(self, y)

    def __lt__(self, other):
        r = self._cmp(other)
        return r if r is NotImplemented else r < 0

    def __le__(self, other):
        r = self._cmp(other)
        return r if r is NotImplemented else r <= 0

    def __gt__(self, other):
        r = self._cmp(other)
        return r if r is NotImplemented else r > 0

    def __ge__(self, other):
        r = self._cmp(other)
        return r if r is NotImplemented else r >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        if self.b == 0:
            return self.a / self.c
        scaled = QuadraticSurd(self.a << 64, self.b << 64, self.c, self.D)
        return floor_surd(scaled) / 2.0**64

    # text

    def __str__(self):
        if self.b == 0:
            return str(self.a) if self.c == 1 else f"{self.a}/{self.c}"
        rad = f"sqrt({self.D})"
        if self.b == 1:
            bpart = rad
        elif self.b == -1:
            bpart = "-" + rad
        else:
            bpart = f"{self.b}*{rad}"
        if self.a == 0:
            num = bpart
        else:
            num = f"{self.a}{'' if bpart.startswith('-') else '+'}{bpart}"
        return num if self.c == 1 else f"({num})/{self.c}"

    def __repr__(self):
        if self.b == 0 and self.D is not None:
            return f"QuadraticSurd({self.a}, 0, {self.c}, D={self.D})"
        return f"QuadraticSurd('{self}')"


def _sign_of(a: int, b: int, D) -> int:
    """Sign of a + b*sqrt(D) using integers only."""
    if b == 0:
        return (a > 0) - (a < 0)
    sb = 1 if b > 0 else -1
    if a == 0 or (a > 0) == (b > 0):
        return sb
    # opposite signs: compare a^2 with b^2 D (never equal, D non-square)
    return -sb if a * a > b * b * D else sb


_INT = r"[+-]?\d+"
_SQRT_TERM = re.compile(r"^([+-]?)(?:(\d+)\*)?sqrt\((\d+)\)$")
_RAT_TERM = re.compile(r"^[+-]?\d+$")
_RATIONAL = re.compile(rf"^{_INT}(?:/\d+)?$")
_OVER = re.compile(r"^\((.+)\)/(\d+)$")


def parse_surd(text: str, D: int | None = None) -> QuadraticSurd:
    """Parse ``(a+b*sqrt(D))/c`` and its shorthands.

    Accepted: ``sqrt(2)``, ``-3*sqrt(7)``, ``1+sqrt(2)``, ``(1-sqrt(5))/2``,
    ``3/2``, ``-4``. A denominator on an expression with a radical requires
    the parenthesised form, so ``1+sqrt(5)/2`` is rejected. ``D`` is
    attached to purely rational input and must match any radical present.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise DomainError("empty surd text")
    if _RATIONAL.match(s):
        return QuadraticSurd.rational(Fraction(s), D)
    m = _OVER.match(s)
    if m:
        inner, c = m.group(1), int(m.group(2))
    else:
        inner, c = s, 1
        if inner.startswith("(") and inner.endswith(")"):
            inner = inner[1:-1]
    if "/" in inner:
        raise DomainError(f"ambiguous surd {text!r}: write (a+b*sqrt(D))/c")
    if "(" in inner.replace("sqrt(", ""):
        raise DomainError(f"cannot parse surd {text!r}")
    terms = re.findall(r"[+-]?[^+-]+", inner)
    if not terms or "".join(terms) != inner or len(terms) > 2:
        raise DomainError(f"cannot parse surd {text!r}")
    a = b = 0
    radicand = None
    seen_rat = seen_rad = False
    for t in terms:
        if _RAT_TERM.match(t):
            if seen_rat:
                raise DomainError(f"two rational terms in {text!r}")
            a, seen_rat = int(t), True
            continue
        mt = _SQRT_TERM.match(t)
        if not mt or seen_rad:
            raise DomainError(f"cannot parse surd {text!r}")
        sign, coef, rad = mt.groups()
        b = (int(coef) if coef else 1) * (-1 if sign == "-" else 1)
        radicand, seen_rad = int(rad), True
    if radicand is not None and D is not None and radicand != D:
        raise DomainError(f"surd {text!r} is not in Q(sqrt({D}))")
    if c == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return QuadraticSurd(a, b, c, radicand if radicand is not None else D)


def surd_arith(x: QuadraticSurd, y: QuadraticSurd, op: str) -> QuadraticSurd:
    """Apply ``op`` in {"add", "sub", "mul", "div"} exactly."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise DomainError(f"unknown surd operation {op!r}")


def conjugate(x: QuadraticSurd) -> QuadraticSurd:
    return x.conjugate()


def norm(x: QuadraticSurd) -> Fraction:
    """``x * conjugate(x)`` as an exact rational."""
    return x.norm()


def floor_surd(x: QuadraticSurd) -> int:
    """Exact floor by bracketing ``b*sqrt(D)`` between consecutive integers."""
    if x.b == 0:
        return x.a // x.c
    t = math.isqrt(x.b * x.b * x.D)
    # b*sqrt(D) is irrational, so it lies strictly inside (t, t+1) or (-t-1, -t)
    lo = x.a + t if x.b > 0 else x.a - t - 1
    return lo // x.c


def compare(x: QuadraticSurd, y: QuadraticSurd) -> int:
    """Return -1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``."""
    if not isinstance(x, QuadraticSurd):
        x = QuadraticSurd.rational(x)
    if not isinstance(y, QuadraticSurd):
        y = QuadraticSurd.rational(y)
    return (x - y).sign()
