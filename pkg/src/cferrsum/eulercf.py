"""Euler-type continued fractions ``a_0 + b_1/(a_1 + b_2/(a_2 + ...))``.

Holds the convergent recurrences, the telescoping identity
``sum a_{n+1} eps_n^2 / B_{n+1} = xi`` in exact partial form, and the pi and
ln 2 instances with their squared-tail sums.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import DomainError
from .numeric import HPReal, const_ln2, const_pi, digamma

__all__ = [
    "GeneralizedCF",
    "GCFConvergent",
    "TailValue",
    "IdentityReport",
    "gcf_convergents",
    "telescoping_partial",
    "theorem6_limit_check",
    "pi_instance",
    "ln2_instance",
    "leibniz_partial",
    "leibniz_partial_and_tail",
    "leibniz_tail_series",
    "leibniz_tail_digamma",
    "alt_harmonic_partial",
    "alt_harmonic_tail_series",
    "alt_harmonic_tail_digamma",
    "pi_identity_sum",
    "ln2_identity_sum",
    "parse_sequence",
]


@dataclass(frozen=True)
class GeneralizedCF:
    """Partial denominators ``a(n)`` (n >= 0) and numerators ``b(n)`` (n >= 1)."""

    a: Callable[[int], int]
    b: Callable[[int], int]
    label: str = "custom"

    def b_checked(self, n: int) -> int:
        v = self.b(n)
        if v < 1:
            raise DomainError(f"{self.label}: b_{n} = {v} is not a positive integer")
        return v


@dataclass(frozen=True)
class GCFConvergent:
    index: int
    h: int
    k: int
    B: int


@dataclass(frozen=True)
class TailValue:
    """A series tail with a rigorous enclosure, plus an independent second route."""

    n: int
    value: HPReal
    bound: Fraction
    digamma: HPReal | None = None

    @property
    def agree(self) -> bool:
        return self.digamma is None or self.value.overlaps(self.digamma)


@dataclass(frozen=True)
class IdentityReport:
    name: str
    terms: int
    prec: int
    total: HPReal
    reference: HPReal
    residual: HPReal
    predicted_remainder: float
    digamma_max_gap: float | None

    def as_dict(self) -> dict:
        return {
            "identity": self.name,
            "terms": self.terms,
            "prec": self.prec,
            "sum": self.total.to_decimal(),
            "reference": self.reference.to_decimal(),
            "residual": self.residual.to_decimal(30),
            "residual_float": float(self.residual),
            "predicted_remainder": self.predicted_remainder,
            "digamma_max_gap": self.digamma_max_gap,
        }


def gcf_convergents(cf: GeneralizedCF, n_max: int) -> list[GCFConvergent]:
    """Convergents for indices -2..n_max with ``B_{-2} = B_{-1} = B_0 = 1``."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    out = [GCFConvergent(-2, 0, 1, 1), GCFConvergent(-1, 1, 0, 1)]
    a0 = cf.a(0)
    out.append(GCFConvergent(0, a0, 1, 1))
    h2, k2, h1, k1, B = 1, 0, a0, 1, 1
    for n in range(1, n_max + 1):
        a, b = cf.a(n), cf.b_checked(n)
        h2, k2, h1, k1 = h1, k1, a * h1 + b * h2, a * k1 + b * k2
        B *= b
        out.append(GCFConvergent(n, h1, k1, B))
    return out


def telescoping_partial(cf: GeneralizedCF, xi, N: int) -> tuple[Fraction, Fraction]:
    """Both sides of the summed telescoping relation, exactly.

    lhs = sum_{n=-1}^{N} a_{n+1} eps_n^2 / B_{n+1}
    rhs = eps_N eps_{N+1} / B_{N+1} - eps_{-2} eps_{-1} / B_0
    with ``eps_n = h_n - xi k_n``; the relation is a polynomial identity in xi.
    """
    if N < -1:
        raise DomainError("N must be >= -1")
    xi = Fraction(xi)
    conv = gcf_convergents(cf, max(N + 1, 0))
    eps = [Fraction(c.h) - xi * c.k for c in conv]  # eps[i] is eps_{i-2}
    lhs = Fraction(0)
    for n in range(-1, N + 1):
        lhs += cf.a(n + 1) * eps[n + 2] ** 2 / conv[n + 3].B
    rhs = eps[N + 2] * eps[N + 3] / conv[N + 3].B - eps[0] * eps[1] / conv[2].B
    return lhs, rhs


def theorem6_limit_check(cf: GeneralizedCF, xi_ref: HPReal, N: int, prec: int) -> dict:
    """Partial weighted sum up to index N against a reference value of xi.

    The gap equals the boundary term ``eps_N eps_{N+1} / B_{N+1}``, reported
    alongside so convergence can be judged.
    """
    conv = gcf_convergents(cf, N + 1)
    xi = xi_ref.with_prec(prec)
    eps = [c.h - xi * c.k for c in conv]
    total = HPReal(0, 0, 0, prec)
    for n in range(-1, N + 1):
        total = total + eps[n + 2] * eps[n + 2] * Fraction(cf.a(n + 1), conv[n + 3].B)
    boundary = eps[N + 2] * eps[N + 3] * Fraction(1, conv[N + 3].B)
    residual = total - xi
    return {
        "partial_sum": total,
        "residual": residual,
        "boundary": boundary,
        "consistent": (residual - boundary).contains(0),
    }


def pi_instance() -> GeneralizedCF:
    """4/(1 + 1^2/(2 + 3^2/(2 + 5^2/(2 + ...))))."""
    return GeneralizedCF(
        a=lambda n: 0 if n == 0 else (1 if n == 1 else 2),
        b=lambda n: 4 if n == 1 else (2 * n - 3) ** 2,
        label="pi",
    )


def ln2_instance() -> GeneralizedCF:
    """1/(1 + 1^2/(1 + 2^2/(1 + 3^2/(1 + ...))))."""
    return GeneralizedCF(
        a=lambda n: 0 if n == 0 else 1,
        b=lambda n: 1 if n == 1 else (n - 1) ** 2,
        label="ln2",
    )


def leibniz_partial(n: int) -> Fraction:
    """``L_n = sum_{j<n} (-1)^j / (2j+1)``."""
    return sum((Fraction((-1) ** j, 2 * j + 1) for j in range(n)), Fraction(0))


def alt_harmonic_partial(n: int) -> Fraction:
    """``S_n = sum_{j=1}^{n} (-1)^(j+1) / j``."""
    return sum((Fraction((-1) ** (j + 1), j) for j in range(1, n + 1)), Fraction(0))


def _euler_transformed_tail(step: int, start: int, prec: int) -> tuple[Fraction, Fraction]:
    """``sum_{i>=0} (-1)^i / (step*i + start)`` with a rigorous bound.

    The Euler transform turns the alternating sum into a positive series with
    terms ``k! step^k / (2^(k+1) prod_{j<=k} (start + j step))`` whose ratio
    stays below 1/2, so the remainder is at most twice the last term kept.
    """
    target = Fraction(1, 2 ** (prec + 8))
    term = Fraction(1, 2 * start)
    total = Fraction(0)
    k = 0
    while True:
        total += term
        k += 1
        term = term * k * step / (2 * (start + k * step))
        if 2 * term < target:
            return total, 2 * term


def leibniz_tail_series(n: int, prec: int) -> TailValue:
    """``sum_{j>=n} (-1)^j/(2j+1)`` by an accelerated alternating series."""
    if n < 0:
        raise DomainError("n must be >= 0")
    val, bound = _euler_transformed_tail(2, 2 * n + 1, prec)
    val = val if n % 2 == 0 else -val
    return TailValue(n, HPReal.from_value(val, prec + 8).widen(bound).with_prec(prec), bound)


def leibniz_tail_digamma(n: int, prec: int) -> HPReal:
    """``(-1)^n/4 * [psi((2n+3)/4) - psi((2n+1)/4)]``."""
    d = digamma(Fraction(2 * n + 3, 4), prec + 8) - digamma(Fraction(2 * n + 1, 4), prec + 8)
    return (d * Fraction((-1) ** n, 4)).with_prec(prec)


def leibniz_partial_and_tail(n: int, prec: int) -> tuple[Fraction, TailValue]:
    """``L_n`` exactly and the tail ``pi/4 - L_n`` computed by two routes."""
    if n < 1:
        raise DomainError("n must be >= 1")
    tail = leibniz_tail_series(n, prec)
    return leibniz_partial(n), TailValue(n, tail.value, tail.bound, leibniz_tail_digamma(n, prec))


def alt_harmonic_tail_series(n: int, prec: int) -> TailValue:
    """``sum_{j>n} (-1)^(j+1)/j`` (which equals ``ln 2 - S_n``)."""
    if n < 0:
        raise DomainError("n must be >= 0")
    val, bound = _euler_transformed_tail(1, n + 1, prec)
    val = val if n % 2 == 0 else -val
    return TailValue(n, HPReal.from_value(val, prec + 8).widen(bound).with_prec(prec), bound)


def alt_harmonic_tail_digamma(n: int, prec: int) -> HPReal:
    """``(-1)^n/2 * [psi(n/2 + 1) - psi(n/2 + 1/2)]``."""
    d = digamma(Fraction(n + 2, 2), prec + 8) - digamma(Fraction(n + 1, 2), prec + 8)
    return (d * Fraction((-1) ** n, 2)).with_prec(prec)


def _squared_tail_sum(seed: HPReal, first: int, count: int, step_den, w: int):
    """Sum ``t_n^2`` for n = first..first+count-1 with ``t_{n+1} = t_n - step(n)``.

    Runs in w-bit fixed point on plain ints; returns the sum and its error
    bound, both in units of 2**-w, and the last tail.
    """
    # seed as fixed point, widened by its radius
    shift = seed.exp + w
    t = seed.mid << shift if shift >= 0 else seed.mid >> -shift
    rt = (seed.rad << shift if shift >= 0 else (seed.rad >> -shift) + 1) + 1
    one = 1 << w
    total = 0
    rtotal = 0
    for n in range(first, first + count):
        sq = t * t
        total += sq >> w
        rtotal += ((2 * abs(t) * rt + rt * rt) >> w) + 2
        num, den = step_den(n)
        t -= num * one // den
        rt += 1
    return total, rtotal


def _identity_sum(name, seed, first, count, step, weight, reference, prec, predicted, gaps):
    w = prec + max(1, math.ceil(math.log2(count + 1))) + 16
    total, rtotal = _squared_tail_sum(seed.with_prec(w + 8), first, count, step, w)
    s = HPReal(total * weight, rtotal * weight, -w, w)
    ref = reference.with_prec(w)
    return IdentityReport(
        name, count, prec, s.with_prec(prec), ref.with_prec(prec), (s - ref).with_prec(prec), predicted, gaps
    )


def pi_identity_sum(N: int, prec: int = 256, digamma_terms: int = 50) -> IdentityReport:
    """``8 sum_{n=1}^{N} tail_n^2`` against ``pi - pi^2/4``.

    Tails run through ``tail_{n+1} = tail_n - (-1)^n/(2n+1)`` from a tail_1
    seeded by the digamma form, at ``prec + ceil(log2 N) + 16`` bits; the
    reference uses the arctan series for pi. The first ``digamma_terms`` tails
    are also compared one by one against the digamma expression.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    if prec < 128:
        raise DomainError("prec must be >= 128")
    w = prec + math.ceil(math.log2(N + 1)) + 16
    seed = leibniz_tail_digamma(1, w + 8)
    pi = const_pi(w + 8)
    ref = pi - pi * pi * Fraction(1, 4)
    gaps = _digamma_gaps(leibniz_tail_digamma, lambda n: (Fraction((-1) ** n, 2 * n + 1)), 1, digamma_terms, seed, prec)
    return _identity_sum(
        "pi - pi^2/4 = 8 sum tail_n^2",
        seed,
        1,
        N,
        lambda n: ((-1) ** n, 2 * n + 1),
        8,
        ref,
        prec,
        1 / (2 * N),
        gaps,
    )


def ln2_identity_sum(N: int, prec: int = 256, digamma_terms: int = 50) -> IdentityReport:
    """``sum_{n=0}^{N} (S_n - ln 2)^2`` against ``ln 2``.

    ``S_n - ln 2`` obeys ``r_{n+1} = r_n + (-1)^n/(n+1)`` from ``r_0 = -ln 2``
    where ln 2 here comes from the digamma form; the reference is the atanh
    series.
    """
    if N < 0:
        raise DomainError("N must be >= 0")
    if prec < 128:
        raise DomainError("prec must be >= 128")
    w = prec + math.ceil(math.log2(N + 2)) + 16
    seed = -alt_harmonic_tail_digamma(0, w + 8)
    gaps = _digamma_gaps(
        lambda n, p: -alt_harmonic_tail_digamma(n, p), lambda n: (Fraction(-((-1) ** n), n + 1)), 0, digamma_terms, seed, prec
    )
    return _identity_sum(
        "ln 2 = sum (S_n - ln 2)^2",
        seed,
        0,
        N + 1,
        lambda n: (-((-1) ** n), n + 1),
        1,
        const_ln2(w + 8),
        prec,
        1 / (4 * N) if N else 1.0,
        gaps,
    )


def _digamma_gaps(tail_fn, step, first, count, seed, prec) -> float | None:
    """Largest gap between the recurrence tails and direct digamma tails."""
    if count <= 0:
        return None
    t = seed.with_prec(prec + 16)
    worst = Fraction(0)
    for n in range(first, first + count):
        direct = tail_fn(n, prec + 16)
        worst = max(worst, abs((t - direct).center) + (t - direct).radius)
        t = t - step(n)
    return float(worst)


_CONST = re.compile(r"^const:\s*(-?\d+)$")
_POLY = re.compile(r"^poly:\s*\(?\s*([-\d,\s]+?)\s*\)?$")


def parse_sequence(token: str) -> Callable[[int], int]:
    """``const:c`` or ``poly:(c0,c1,...)`` (c0 + c1 n + ...) as a function of n."""
    m = _CONST.match(token.strip())
    if m:
        c = int(m.group(1))
        return lambda n: c
    m = _POLY.match(token.strip())
    if m:
        coeffs = tuple(int(t) for t in m.group(1).split(",") if t.strip())
        if not coeffs:
            raise DomainError(f"empty polynomial in {token!r}")

        def poly(n, coeffs=coeffs):
            acc = 0
            for c in reversed(coeffs):
                acc = acc * n + c
            return acc

        return poly
    raise DomainError(f"cannot parse sequence {token!r}; use const:c or poly:(c0,c1,...)")
