"""Units attached to purely periodic expansions and the Pell solutions they give."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cfrac import (
    CompleteQuotient,
    convergent_table,
    cq_step,
    expand,
    is_purely_periodic,
)
from .errors import DomainError
from .exactnum import QuadraticSurd, squarefree_decompose

__all__ = [
    "UnitReport",
    "PellSolution",
    "EquivalenceReport",
    "fundamental_unit",
    "product_complete_quotients",
    "pell_solutions",
    "unit_periodicity_equivalence",
]


@dataclass(frozen=True)
class UnitReport:
    u: QuadraticSurd
    norm: int
    period: int
    repetition: int
    fundamental: bool | None

    def as_dict(self) -> dict:
        return {
            "u": str(self.u),
            "D": self.u.D,
            "norm": self.norm,
            "N": self.period,
            "repetition": self.repetition,
            "fundamental": self.fundamental,
        }


@dataclass(frozen=True)
class PellSolution:
    n: int
    x: Fraction
    y: Fraction
    D: int
    rhs: int

    @property
    def integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    @property
    def residual(self) -> Fraction:
        return self.x * self.x - self.D * self.y * self.y

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "x": str(self.x),
            "y": str(self.y),
            "rhs": self.rhs,
            "integral": self.integral,
        }


@dataclass(frozen=True)
class EquivalenceReport:
    N: int
    u: QuadraticSurd
    norm: Fraction
    is_unit: bool
    galois: bool

    @property
    def agree(self) -> bool:
        return self.is_unit == self.galois


def _checked_period(xi: QuadraticSurd) -> tuple[int, ...]:
    if xi.b == 0 or not is_purely_periodic(xi):
        raise DomainError(f"{xi} is not purely periodic")
    return expand(xi).period


def _is_squarefree(D: int) -> bool:
    return squarefree_decompose(D)[0] == 1


def fundamental_unit(xi: QuadraticSurd, repeat: int = 1) -> UnitReport:
    """``u = k_{N-1} xi + k_{N-2}`` over ``repeat`` copies of the primitive period.

    ``fundamental`` is only asserted for the primitive period of a field
    whose radicand is squarefree; otherwise it is ``None``.
    """
    if repeat < 1:
        raise DomainError("repeat must be >= 1")
    word = _checked_period(xi) * repeat
    N = len(word)
    _, k = convergent_table(word, N - 1)
    u = k[N + 1] * xi + k[N]
    n = u.norm()
    if n != (-1) ** N:
        raise AssertionError(f"norm of {u} is {n}, expected {(-1) ** N}")
    fundamental = (repeat == 1) if _is_squarefree(xi.D) else None
    return UnitReport(u, int(n), N, repeat, fundamental)


def product_complete_quotients(xi: QuadraticSurd, repeat: int = 1) -> QuadraticSurd:
    """``xi_0 * xi_1 * ... * xi_{N-1}`` over ``repeat`` primitive periods."""
    N = len(_checked_period(xi)) * repeat
    q = CompleteQuotient.from_surd(xi)
    prod = QuadraticSurd(1, 0, 1, xi.D)
    for _ in range(N):
        prod = prod * q.to_surd()
        _, q = cq_step(q)
    return prod


def pell_solutions(xi: QuadraticSurd, n_max: int) -> list[PellSolution]:
    """``x_n + y_n sqrt(D) = u**n`` for n = 0..n_max.

    Every pair satisfies ``x^2 - D y^2 = (-1)^(nN)``. Units with half-integer
    coordinates (D = 5 and friends) also give non-integral pairs; those are
    kept and marked by :attr:`PellSolution.integral`.
    """
    rep = fundamental_unit(xi)
    u = rep.u
    if 2 % u.c:
        raise DomainError(f"unit {u} has a denominator other than 1 or 2")
    out = []
    power = QuadraticSurd(1, 0, 1, u.D)
    for n in range(n_max + 1):
        out.append(PellSolution(n, power.rational_part, power.radical_part, u.D, (-1) ** (n * rep.period)))
        power = power * u
    return out


def unit_periodicity_equivalence(xi: QuadraticSurd, N: int | None = None) -> EquivalenceReport:
    """Compare "``k_{N-1} xi + k_{N-2}`` has norm +-1" with Galois' criterion.

    ``N`` defaults to the length of the eventual period of ``xi``.
    """
    if xi.b == 0:
        raise DomainError(f"{xi} is rational")
    if not xi > 1:
        raise DomainError(f"{xi} must exceed 1")
    e = expand(xi)
    if N is None:
        N = len(e.period)
    if N < 1:
        raise DomainError("N must be >= 1")
    _, k = convergent_table(e, N - 1)
    u = k[N + 1] * xi + k[N]
    n = u.norm()
    return EquivalenceReport(N, u, n, abs(n) == 1, is_purely_periodic(xi))
