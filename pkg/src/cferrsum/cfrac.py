"""Regular continued fractions of quadratic irrationals."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import chain, count, islice, repeat
from typing import Iterable, Sequence

from .errors import DegenerateInputError, DomainError, LengthError
from .exactnum import QuadraticSurd, floor_surd, is_square, squarefree_decompose

__all__ = [
    "CFExpansion",
    "ConvergentPair",
    "CompleteQuotient",
    "cq_step",
    "expand",
    "convergents",
    "convergent_table",
    "is_purely_periodic",
    "surd_from_word",
    "primitive_root",
    "parse_word",
    "complete_quotients",
    "value_of",
    "take",
]


@dataclass(frozen=True)
class ConvergentPair:
    index: int
    h: int
    k: int


@dataclass(frozen=True)
class CFExpansion:
    """``[preperiod; period]`` with ``period`` repeating forever."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    D: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise DomainError("a quadratic irrational has a nonempty period")
        if any(d < 1 for d in self.period) or any(d < 1 for d in self.preperiod[1:]):
            raise DomainError(f"partial quotients after a0 must be >= 1: {self}")

    @property
    def purely_periodic(self) -> bool:
        return not self.preperiod

    def digit(self, n: int) -> int:
        if n < 0:
            raise LengthError(f"no digit at index {n}")
        p = len(self.preperiod)
        if n < p:
            return self.preperiod[n]
        return self.period[(n - p) % len(self.period)]

    def digits(self) -> Iterable[int]:
        """Infinite iterator over a_0, a_1, ..."""
        return chain(self.preperiod, chain.from_iterable(repeat(self.period)))

    def __str__(self):
        pre = ",".join(map(str, self.preperiod))
        return f"[{pre};{','.join(map(str, self.period))}]"


@dataclass(frozen=True)
class CompleteQuotient:
    """``(P + s*sqrt(D))/Q`` with ``Q`` dividing ``s^2*D - P^2``.

    ``s*sqrt(D)`` is the radical written in the field's own radicand, so the
    quotient can be turned back into a :class:`QuadraticSurd` of that field.
    """

    P: int
    Q: int
    D: int
    s: int = 1

    @property
    def radicand(self) -> int:
        return self.s * self.s * self.D

    def to_surd(self) -> QuadraticSurd:
        return QuadraticSurd(self.P, self.s, self.Q, self.D)

    @classmethod
    def from_surd(cls, x: QuadraticSurd) -> CompleteQuotient:
        if x.b == 0:
            raise DomainError(f"{x} is rational; no periodic expansion")
        P, s, Q = x.a, x.b, x.c
        if s < 0:
            P, s, Q = -P, -s, -Q
        if (s * s * x.D - P * P) % Q:
            P, s, Q = P * abs(Q), s * abs(Q), Q * abs(Q)
        return cls(P, Q, x.D, s)


def cq_step(x: CompleteQuotient) -> tuple[int, CompleteQuotient]:
    """Split off ``floor(x)`` and return it with ``1/(x - floor(x))``."""
    if x.Q == 0 or is_square(x.D):
        raise DomainError("complete quotient is not irrational")
    d = x.radicand
    digit = floor_surd(QuadraticSurd(x.P, x.s, x.Q, x.D))
    P = digit * x.Q - x.P
    Q, rem = divmod(d - P * P, x.Q)
    assert rem == 0, "standard-form invariant broken"
    return digit, CompleteQuotient(P, Q, x.D, x.s)


def expand(x: QuadraticSurd) -> CFExpansion:
    """Expand ``x`` and cut the digit stream at the first repeated quotient."""
    if x.b == 0:
        raise DomainError(f"{x} is rational; no periodic expansion")
    q = CompleteQuotient.from_surd(x)
    seen: dict[tuple[int, int], int] = {}
    digits: list[int] = []
    for i in count():
        key = (q.P, q.Q)
        if key in seen:
            start = seen[key]
            return CFExpansion(tuple(digits[:start]), tuple(digits[start:]), x.D)
        seen[key] = i
        d, q = cq_step(q)
        digits.append(d)


def complete_quotients(x: QuadraticSurd, n: int) -> list[QuadraticSurd]:
    """``xi_0 .. xi_{n-1}`` as surds."""
    q = CompleteQuotient.from_surd(x)
    out = []
    for _ in range(n):
        out.append(q.to_surd())
        _, q = cq_step(q)
    return out


def _digit_source(digits) -> Iterable[int]:
    if isinstance(digits, CFExpansion):
        return digits.digits()
    return iter(digits)


def convergents(digits, n: int) -> list[ConvergentPair]:
    """Convergent pairs for indices -2..n, seeds included.

    ``digits`` is a :class:`CFExpansion` or any iterable of partial quotients.
    """
    if n < -2:
        raise DomainError(f"convergent index must be >= -2, got {n}")
    out = [ConvergentPair(-2, 0, 1), ConvergentPair(-1, 1, 0)]
    h2, k2, h1, k1 = 0, 1, 1, 0
    src = _digit_source(digits)
    for i in range(n + 1):
        try:
            a = next(src)
        except StopIteration:
            raise LengthError(f"digit stream exhausted at index {i}") from None
        h2, k2, h1, k1 = h1, k1, a * h1 + h2, a * k1 + k2
        out.append(ConvergentPair(i, h1, k1))
    return out[: n + 3]


def convergent_table(digits, n: int) -> tuple[list[int], list[int]]:
    """Lists ``h`` and ``k`` where ``h[i+2]`` is h_i, for i in -2..n."""
    pairs = convergents(digits, n)
    return [p.h for p in pairs], [p.k for p in pairs]


def is_purely_periodic(x: QuadraticSurd) -> bool:
    """Galois' test: ``x > 1`` and ``-1 < conjugate(x) < 0``."""
    if x.b == 0:
        raise DomainError(f"{x} is rational")
    xb = x.conjugate()
    return x > 1 and -1 < xb < 0


def primitive_root(word: Sequence[int]) -> tuple[int, ...]:
    """Shortest ``w`` such that ``word`` is a power of ``w``."""
    word = tuple(word)
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


def surd_from_word(period: Sequence[int]) -> QuadraticSurd:
    """The purely periodic number ``[period repeated]``.

    Solves ``k_{N-1} x^2 + (k_{N-2} - h_{N-1}) x - h_{N-2} = 0`` for its root
    above 1 and pulls square factors out of the discriminant.
    """
    word = tuple(period)
    if not word or any(not isinstance(d, int) or d < 1 for d in word):
        raise DomainError(f"period word needs digits >= 1, got {list(word)}")
    N = len(word)
    h, k = convergent_table(word, N - 1)
    hN1, hN2, kN1, kN2 = h[N + 1], h[N], k[N + 1], k[N]
    disc = (kN2 - hN1) ** 2 + 4 * kN1 * hN2
    if is_square(disc):
        raise DegenerateInputError(f"word {list(word)} gives a rational value")
    s, D = squarefree_decompose(disc)
    return QuadraticSurd(hN1 - kN2, s, 2 * kN1, D)


_WORD = re.compile(r"^\[\s*([^;\]]*?)\s*(?:;\s*([^\]]*?)\s*)?\]$")


def parse_word(text: str) -> CFExpansion:
    """Parse ``[a0,a1;p0,p1,...]`` (``[;2]`` for a purely periodic word)."""
    m = _WORD.match(text.strip())
    if not m or m.group(2) is None:
        raise DomainError(f"cannot parse digit word {text!r}; expected [pre;period]")

    def ints(part):
        part = part.strip()
        if not part:
            return ()
        try:
            return tuple(int(t) for t in part.split(","))
        except ValueError:
            raise DomainError(f"bad digit in {text!r}") from None

    return CFExpansion(ints(m.group(1)), ints(m.group(2)))


def _rebase(x: QuadraticSurd, D: int) -> QuadraticSurd:
    """Rewrite ``x`` (squarefree radicand) over ``sqrt(D)`` for ``D = t^2 * x.D``."""
    if x.b == 0:
        return QuadraticSurd(x.a, 0, x.c, D)
    t, r = squarefree_decompose(D)
    if r != x.D:
        raise DomainError(f"{x} does not lie in Q(sqrt({D}))")
    return QuadraticSurd(x.a * t, x.b, x.c * t, D)


def value_of(expansion: CFExpansion) -> QuadraticSurd:
    """Exact value of an eventually periodic expansion, over ``expansion.D`` if set."""
    tail = surd_from_word(expansion.period)
    x = tail
    for a in reversed(expansion.preperiod):
        x = a + 1 / x
    if expansion.D is not None and expansion.D != x.D:
        x = _rebase(x, expansion.D)
    return x


def take(expansion: CFExpansion, n: int) -> list[int]:
    return list(islice(expansion.digits(), n))
