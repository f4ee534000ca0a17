"""Arbitrary-precision reals with rigorous error radii.

An :class:`HPReal` is a ball ``(mid +/- rad) * 2**exp``: ``mid`` is an integer
of roughly ``prec`` bits and ``rad`` bounds every error made so far, both
input error and rounding. All functions take the working precision as an
argument; there is no global context.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DomainError, PrecisionExhausted
from .exactnum import QuadraticSurd, floor_surd

__all__ = [
    "HPReal",
    "eval_surd",
    "const_pi",
    "const_ln2",
    "const_gamma",
    "ln_rational",
    "exp_rational",
    "digamma",
    "digamma_difference_series",
    "bernoulli_even",
]

_GUARD = 8


def _shift_round(n: int, k: int) -> int:
    """``n / 2**k`` rounded to nearest, for ``k >= 0``."""
    if k <= 0:
        return n << -k
    return (n + (1 << (k - 1))) >> k


def _ceil_shift(n: int, k: int) -> int:
    """``ceil(n / 2**k)`` for ``n >= 0``."""
    if k <= 0:
        return n << -k
    return -((-n) >> k)


class HPReal:
    """A real number known to lie in ``[(mid-rad)*2**exp, (mid+rad)*2**exp]``."""

    __slots__ = ("mid", "rad", "exp", "prec")

    def __init__(self, mid: int, rad: int = 0, exp: int = 0, prec: int = 128):
        if rad < 0:
            raise ValueError("negative radius")
        excess = mid.bit_length() - (prec + _GUARD)
        if excess > 0:
            rounded = _shift_round(mid, excess)
            rad = _ceil_shift(rad, excess) + (1 if rounded << excess != mid else 0)
            mid, exp = rounded, exp + excess
        elif mid == 0 and rad:
            # keep radius small in magnitude
            excess = rad.bit_length() - (prec + _GUARD)
            if excess > 0:
                rad, exp = _ceil_shift(rad, excess), exp + excess
        object.__setattr__(self, "mid", mid)
        object.__setattr__(self, "rad", rad)
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("HPReal is immutable")

    # construction

    @classmethod
    def from_value(cls, q, prec: int) -> HPReal:
        """Enclose an int or rational, exactly when the value is dyadic."""
        if isinstance(q, HPReal):
            return q
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1) == 0:
            return cls(q.numerator, 0, -(den.bit_length() - 1), prec)
        shift = prec + _GUARD + den.bit_length() - q.numerator.bit_length()
        shift = max(shift, prec + _GUARD)
        num = q.numerator << shift
        mid = num // den
        return cls(mid, 1, -shift, prec)

    def _coerce(self, other) -> HPReal | None:
        if isinstance(other, HPReal):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return HPReal.from_value(other, self.prec)
        return None

    def with_prec(self, prec: int) -> HPReal:
        return HPReal(self.mid, self.rad, self.exp, prec)

    # views

    @property
    def lo(self) -> Fraction:
        return Fraction(self.mid - self.rad) * Fraction(2) ** self.exp

    @property
    def hi(self) -> Fraction:
        return Fraction(self.mid + self.rad) * Fraction(2) ** self.exp

    @property
    def center(self) -> Fraction:
        return Fraction(self.mid) * Fraction(2) ** self.exp

    @property
    def radius(self) -> Fraction:
        return Fraction(self.rad) * Fraction(2) ** self.exp

    def contains(self, q) -> bool:
        if isinstance(q, HPReal):
            return self.lo <= q.lo and q.hi <= self.hi
        q = Fraction(q)
        return self.lo <= q <= self.hi

    def overlaps(self, other: HPReal) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __float__(self):
        return math.ldexp(self.mid, self.exp) if self.mid else 0.0

    def abs_upper(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def sign(self) -> int:
        """Sign of the value; raises when the ball straddles zero."""
        if self.mid - self.rad > 0:
            return 1
        if self.mid + self.rad < 0:
            return -1
        if self.mid == 0 and self.rad == 0:
            return 0
        raise PrecisionExhausted("sign undecided inside the enclosure")

    def floor(self) -> int:
        lo, hi = self.lo, self.hi
        f = math.floor(lo)
        if math.floor(hi) != f:
            raise PrecisionExhausted(f"floor undecided: enclosure [{float(lo)}, {float(hi)}]")
        return f

    # arithmetic

    def __neg__(self):
        return HPReal(-self.mid, self.rad, self.exp, self.prec)

    def __pos__(self):
        return self

    def __abs__(self):
        if self.mid - self.rad >= 0:
            return self
        if self.mid + self.rad <= 0:
            return -self
        # straddles zero: enclose [0, max|.|]
        top = abs(self.mid) + self.rad
        return HPReal(top, top, self.exp - 1, self.prec)

    def scale2(self, k: int) -> HPReal:
        """Multiply by ``2**k`` exactly."""
        return HPReal(self.mid, self.rad, self.exp + k, self.prec)

    def __add__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        e = min(self.exp, y.exp)
        m1, r1 = self.mid << (self.exp - e), self.rad << (self.exp - e)
        m2, r2 = y.mid << (y.exp - e), y.rad << (y.exp - e)
        return HPReal(m1 + m2, r1 + r2, e, max(self.prec, y.prec))

    __radd__ = __add__

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
        mid = self.mid * y.mid
        rad = abs(self.mid) * y.rad + abs(y.mid) * self.rad + self.rad * y.rad
        return HPReal(mid, rad, self.exp + y.exp, max(self.prec, y.prec))

    __rmul__ = __mul__

    def __truediv__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return _div(self, y)

    def __rtruediv__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return _div(y, self)

    def __pow__(self, n):
        if isinstance(n, int):
            base = self if n >= 0 else 1 / self
            n = abs(n)
            result = HPReal(1, 0, 0, self.prec)
            while n:
                if n & 1:
                    result = result * base
                n >>= 1
                if n:
                    base = base * base
            return result
        return self.pow_real(n)

    def pow_real(self, s) -> HPReal:
        """``self**s`` for a positive ball and real exponent ``s``."""
        s = s if isinstance(s, HPReal) else HPReal.from_value(Fraction(s), self.prec + 16)
        return (self.ln() * s).exp_()

    def sqrt(self) -> HPReal:
        if self.mid + self.rad < 0:
            raise DomainError("sqrt of a negative number")
        lo = max(self.lo, Fraction(0))
        hi = self.hi
        k = self.prec + _GUARD
        lo_s = math.isqrt(math.floor(lo * 4**k))
        hi_s = math.isqrt(math.ceil(hi * 4**k)) + 1
        return HPReal(lo_s + hi_s, hi_s - lo_s, -k - 1, self.prec)

    def ln(self) -> HPReal:
        if self.mid - self.rad <= 0:
            raise DomainError("ln needs a positive enclosure")
        c = self.center
        base = ln_rational(c, self.prec)
        if self.rad == 0:
            return base
        # mean value bound: |ln x - ln c| <= rad / (mid - rad)
        return base.widen(Fraction(self.rad, self.mid - self.rad))

    def exp_(self) -> HPReal:
        base = exp_rational(self.center, self.prec)
        if self.rad == 0:
            return base
        r = self.radius
        if r > Fraction(1, 2):
            raise PrecisionExhausted("exponent enclosure too wide")
        # |exp(c+t) - exp(c)| <= exp(c) * 2|t| for |t| <= 1/2
        return base.widen(base.abs_upper() * 2 * r)

    def widen(self, err) -> HPReal:
        """Add ``err >= 0`` (a rational) to the radius."""
        err = Fraction(err)
        if err == 0:
            return self
        e = self.exp
        extra = math.ceil(err / Fraction(2) ** e)
        if extra.bit_length() > self.prec + 2 * _GUARD:
            # radius dominates; rescale to keep integers small
            shift = extra.bit_length() - (self.prec + _GUARD)
            m = _shift_round(self.mid, shift)
            return HPReal(m, _ceil_shift(extra + self.rad, shift) + 1, e + shift, self.prec)
        return HPReal(self.mid, self.rad + extra, e, self.prec)

    # comparison helpers (True only when decided by the enclosure)

    def certainly_lt(self, other) -> bool:
        y = self._coerce(other)
        return self.hi < y.lo

    def certainly_gt(self, other) -> bool:
        y = self._coerce(other)
        return self.lo > y.hi

    # text

    def to_decimal(self, max_digits: int | None = None) -> str:
        """Decimal string whose every digit is fixed by the enclosure.

        The printed value is the correct rounding of every point in the
        ball; digits stop where the enclosure stops deciding them or after
        ``max_digits`` significant digits.
        """
        lo, hi = self.lo, self.hi
        if max_digits is None:
            max_digits = int(self.prec * 0.30103) + 2
        mag = max(abs(lo), abs(hi))
        if mag == 0:
            return "0"
        lead = math.floor(math.log10(float(mag))) if float(mag) > 0 else -300
        best = None
        for k in range(-lead, -lead + max_digits):
            a = _round_dec(lo, k)
            b = _round_dec(hi, k)
            if a != b:
                break
            best = (a, k)
        if best is None:
            return f"{float(self.center):.3e} +/- {float(self.radius):.1e}"
        n, k = best
        return _fmt_dec(n, k)

    def __str__(self):
        return self.to_decimal()

    def __repr__(self):
        return f"HPReal({self.to_decimal()}, rad~{float(self.radius):.2e}, prec={self.prec})"


def _round_dec(q: Fraction, k: int) -> int:
    """``q * 10**k`` rounded half away from zero."""
    v = q * Fraction(10) ** k
    return math.floor(v + Fraction(1, 2)) if v >= 0 else -math.floor(-v + Fraction(1, 2))


def _fmt_dec(n: int, k: int) -> str:
    if k <= 0:
        return str(n * 10 ** (-k))
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(k + 1, "0")
    return f"{sign}{s[:-k]}.{s[-k:]}"


def _div(x: HPReal, y: HPReal) -> HPReal:
    m1, r1, m2, r2 = x.mid, x.rad, y.mid, y.rad
    if abs(m2) <= r2:
        if m2 == 0 and r2 == 0:
            raise ZeroDivisionError("division by exact zero")
        raise PrecisionExhausted("divisor enclosure contains zero")
    prec = max(x.prec, y.prec)
    s = max(0, prec + _GUARD + m2.bit_length() - m1.bit_length() + 2)
    if m2 < 0:
        m1, m2 = -m1, -m2
    mid = (m1 << s) // m2
    num = (r1 * m2 + abs(m1) * r2) << s
    den = m2 * (m2 - r2)
    rad = -(-num // den) + 1
    return HPReal(mid, rad, x.exp - y.exp - s, prec)


def eval_surd(x: QuadraticSurd, prec: int) -> HPReal:
    """Enclose ``x`` with relative radius at most ``2**(-prec-1)``."""
    if prec < 32:
        raise DomainError("eval_surd needs prec >= 32")
    if x.b == 0:
        return HPReal.from_value(Fraction(x.a, x.c), prec)
    k = prec + 2
    while True:
        f = floor_surd(QuadraticSurd(x.a << k, x.b << k, x.c, x.D))
        # value * 2**k lies strictly inside (f, f + 1)
        small = min(abs(f), abs(f + 1))
        if small >= 1 << (prec + 1):
            return HPReal(2 * f + 1, 1, -k - 1, prec)
        k += max(1, prec + 2 - small.bit_length())


# fixed-point series kernels; results carry an error count in units of 2**-w


def _atan_like(p: int, q: int, w: int, alternating: bool) -> tuple[int, int]:
    """``sum z^(2j+1)/(2j+1)`` for ``z = p/q`` (|z| < 1) at scale ``2**w``.

    Returns ``(value, err)`` with ``|true*2**w - value| <= err``.
    """
    sign = 1 if p >= 0 else -1
    p = abs(p)
    power = (p << w) // q
    z2n, z2d = p * p, q * q
    total, err, j = 0, 0, 0
    while power:
        term = power // (2 * j + 1)
        total += -term if (alternating and j % 2) else term
        err += 2 + j
        power = power * z2n // z2d
        j += 1
    # the remaining tail is below one ulp once power reaches zero; bound it
    # by the geometric remainder of the next true term (< 1 ulp) / (1 - z^2)
    err += 2 * -(-z2d // (z2d - z2n))
    return sign * total, err


def _fixed_to_hp(value: int, err: int, w: int, prec: int) -> HPReal:
    return HPReal(value, err, -w, prec)


@lru_cache(maxsize=64)
def const_pi(prec: int, method: str = "machin") -> HPReal:
    """pi by an arctan formula; ``method`` picks Machin or Stormer."""
    w = prec + 2 * _GUARD + 16
    if method == "machin":
        formula = ((16, 5), (-4, 239))
    elif method == "stormer":
        formula = ((48, 18), (32, 57), (-20, 239))
    else:
        raise DomainError(f"unknown pi method {method!r}")
    total = err = 0
    for coef, inv in formula:
        v, e = _atan_like(1, inv, w, alternating=True)
        total += coef * v
        err += abs(coef) * e
    return _fixed_to_hp(total, err, w, prec)


@lru_cache(maxsize=64)
def const_ln2(prec: int, method: str = "atanh3") -> HPReal:
    """ln 2 from atanh series; ``method`` picks a one- or three-term formula."""
    w = prec + 2 * _GUARD + 16
    if method == "atanh3":
        formula = ((2, 3),)
    elif method == "atanh_triple":
        formula = ((18, 26), (-2, 4801), (8, 8749))
    else:
        raise DomainError(f"unknown ln2 method {method!r}")
    total = err = 0
    for coef, inv in formula:
        v, e = _atan_like(1, inv, w, alternating=False)
        total += coef * v
        err += abs(coef) * e
    return _fixed_to_hp(total, err, w, prec)


def ln_rational(q, prec: int) -> HPReal:
    """Natural log of a positive rational."""
    q = Fraction(q)
    if q <= 0:
        raise DomainError(f"ln of non-positive {q}")
    if q == 1:
        return HPReal(0, 0, 0, prec)
    e = q.numerator.bit_length() - q.denominator.bit_length()
    m = q / Fraction(2) ** e
    # m in (1/2, 2); pull it into [2/3, 4/3)
    if m >= Fraction(4, 3):
        m /= 2
        e += 1
    elif m < Fraction(2, 3):
        m *= 2
        e -= 1
    z = (m - 1) / (m + 1)
    w = prec + 2 * _GUARD + 16 + max(0, abs(e).bit_length())
    v, err = _atan_like(z.numerator, z.denominator, w, alternating=False)
    result = HPReal(2 * v, 2 * err, -w, prec)
    if e:
        result = result + const_ln2(w - 2 * _GUARD - 16) * e
    return result.with_prec(prec)


def exp_rational(q, prec: int) -> HPReal:
    """``exp(q)`` for rational ``q`` by argument halving and a Taylor series."""
    q = Fraction(q)
    if q == 0:
        return HPReal(1, 0, 0, prec)
    halvings = max(0, q.numerator.bit_length() - q.denominator.bit_length() + 9)
    r = q / (1 << halvings)
    w = prec + 2 * _GUARD + 16 + 2 * halvings
    p, d = r.numerator, r.denominator
    term = 1 << w
    total, err, j = term, 0, 0
    while term:
        j += 1
        term = term * p // (d * j)
        total += term
        err += 2
    # |r| < 1/256 so the untouched tail is below one ulp
    err += 2
    y = HPReal(total, err, -w, w)
    for _ in range(halvings):
        y = y * y
    return y.with_prec(prec)


@lru_cache(maxsize=64)
def const_gamma(prec: int) -> HPReal:
    """Euler's constant by the Brent-McMillan sums with ``n = 2**j``.

    gamma = U/V - ln n with U = sum (n^k/k!)^2 H_k, V = sum (n^k/k!)^2; the
    infinite-sum formula is off by less than pi*exp(-4n).
    """
    n = 4
    while 5.7 * n < prec + 32:
        n *= 2
    j = n.bit_length() - 1
    K = math.ceil(3.5911 * n) + 10
    w = prec + 2 * _GUARD + 32 + 2 * K.bit_length()
    t = 1 << w  # (n^k/k!)^2 at scale 2**w
    n2 = n * n
    H = Fraction(0)
    V, U = t, 0
    err_t = errV = errU = 0
    for k in range(1, K + 1):
        t = t * n2 // (k * k)
        err_t += 1
        H += Fraction(1, k)
        V += t
        errV += err_t
        U += t * H.numerator // H.denominator
        errU += err_t * (k.bit_length() + 1) + 1
    # tail beyond K: geometric with ratio <= 2 n^2 / (K+1)^2, and H_k <= k
    ratio = Fraction(2 * n2, (K + 1) ** 2)
    tailV = Fraction(t + err_t) * ratio / (1 - ratio)
    errV += math.ceil(tailV) + 1
    errU += math.ceil(tailV * (K + 2)) + 1
    Uh = HPReal(U, errU, -w, w)
    Vh = HPReal(V, errV, -w, w)
    g = Uh / Vh - const_ln2(w) * j
    # pi * exp(-4n) < 4 * 2**(-5.76 n)
    return g.widen(Fraction(4, 2 ** int(5.76 * n))).with_prec(prec)


@lru_cache(maxsize=8)
def bernoulli_even(count: int) -> tuple[Fraction, ...]:
    """``B_0, B_2, ..., B_{2(count-1)}`` exactly."""
    n_max = 2 * (count - 1)
    B = [Fraction(0)] * (n_max + 1)
    A = [Fraction(0)] * (n_max + 1)
    for m in range(n_max + 1):
        A[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            A[j - 1] = j * (A[j - 1] - A[j])
        B[m] = A[0]
    return tuple(B[0::2])


def digamma(x, prec: int) -> HPReal:
    """psi(x) for rational ``x > 0``.

    Shifts the argument up to ``max(10, prec/3)`` with psi(x+1) = psi(x) + 1/x,
    then sums the asymptotic series ln y - 1/(2y) - sum B_2k/(2k y^2k). For
    real y > 0 the truncation error is below the first omitted term.
    """
    x = Fraction(x)
    if x <= 0:
        raise DomainError(f"digamma needs x > 0, got {x}")
    threshold = max(10, Fraction(prec, 3))
    shift = max(0, math.ceil(threshold - x))
    y = x + shift
    exact = -sum((Fraction(1) / (x + j) for j in range(shift)), Fraction(0))
    exact -= 1 / (2 * y)
    target = Fraction(1, 2 ** (prec + 2 * _GUARD))
    count = 8
    bern = bernoulli_even(count)
    k = 1
    y2 = y * y
    ypow = y2
    while True:
        if k >= len(bern):
            count *= 2
            bern = bernoulli_even(count)
        term = bern[k] / (2 * k * ypow)
        nxt_k = k + 1
        if nxt_k >= len(bern):
            count *= 2
            bern = bernoulli_even(count)
        nxt = abs(bern[nxt_k] / (2 * nxt_k * ypow * y2))
        exact -= term
        if nxt < target:
            remainder = nxt
            break
        if nxt > abs(term):
            raise PrecisionExhausted("asymptotic series diverged before reaching precision")
        k += 1
        ypow *= y2
    wprec = prec + 2 * _GUARD
    return (ln_rational(y, wprec) + HPReal.from_value(exact, wprec)).widen(remainder).with_prec(prec)


def digamma_difference_series(a, b, terms: int) -> tuple[Fraction, Fraction]:
    """Truncated ``sum_{k<terms} (1/(k+a) - 1/(k+b))`` and its tail bound.

    Each summand is at most ``|b-a|/(k+m)^2`` with ``m = min(a, b)``, so the
    tail is below ``|b-a|/(terms+m-1)``. Low-precision cross-check only.
    """
    a, b = Fraction(a), Fraction(b)
    if a <= 0 or b <= 0:
        raise DomainError("digamma difference needs positive arguments")
    if terms < 1:
        raise DomainError("terms must be >= 1")
    total = Fraction(0)
    for k in range(terms):
        total += Fraction(1) / (k + a) - Fraction(1) / (k + b)
    bound = abs(b - a) / (terms + min(a, b) - 1)
    return total, bound
