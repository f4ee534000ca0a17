"""Approximation errors of purely periodic continued fractions and their sums.

For ``xi = [a_0, ..., a_{N-1} repeated]`` the errors ``eps_n = h_n - xi*k_n``
split into N geometric progressions with common ratio ``rho``; every sum here
is evaluated exactly in Q(sqrt(D)) when the exponent is an integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cfrac import CFExpansion, convergent_table, expand, is_purely_periodic
from .errors import DomainError
from .exactnum import QuadraticSurd
from .numeric import HPReal, eval_surd

__all__ = [
    "ErrorTerm",
    "PeriodMatrix",
    "WeightedSumReport",
    "GeometricReport",
    "QuadraticCheck",
    "error_term",
    "error_terms",
    "rho",
    "period_matrix",
    "verify_geometric",
    "beta_closed",
    "f_weighted",
    "f_partial",
    "tail_bound",
    "periodicity_quadratic_check",
]


@dataclass(frozen=True)
class ErrorTerm:
    index: int
    value: QuadraticSurd


@dataclass(frozen=True)
class PeriodMatrix:
    A: int
    B: int
    C: int
    D: int
    lam1: QuadraticSurd
    lam2: QuadraticSurd

    @property
    def det(self) -> int:
        return self.A * self.D - self.B * self.C

    @property
    def entries(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.A, self.B), (self.C, self.D))


@dataclass(frozen=True)
class GeometricReport:
    ok: bool
    period: int
    m_max: int
    checked: int
    failures: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class QuadraticCheck:
    coefficients: tuple[int, int, int]
    holds: bool
    converse_holds: bool


@dataclass(frozen=True)
class WeightedSumReport:
    xi: QuadraticSurd
    s: object
    period: tuple[int, ...]
    rho: QuadraticSurd
    betas: tuple
    f: object
    exact: bool
    numeric_f: HPReal | None = None
    numeric_betas: tuple = field(default=())

    def as_dict(self, prec: int = 128) -> dict:
        def num(v):
            return (v if isinstance(v, HPReal) else eval_surd(v, prec)).to_decimal()

        out = {
            "xi": str(self.xi),
            "D": self.xi.D,
            "period": list(self.period),
            "N": len(self.period),
            "s": str(self.s),
            "exact": self.exact,
            "rho": {"symbolic": str(self.rho), "decimal": num(self.rho)},
        }
        if self.exact:
            out["betas"] = [{"symbolic": str(b), "decimal": num(b)} for b in self.betas]
            out["f"] = {"symbolic": str(self.f), "decimal": num(self.f)}
        else:
            out["betas"] = [{"decimal": b.to_decimal()} for b in self.betas]
            out["f"] = {"decimal": self.f.to_decimal()}
        return out


def _periodic(xi: QuadraticSurd) -> CFExpansion:
    if xi.b == 0:
        raise DomainError(f"{xi} is rational")
    if not is_purely_periodic(xi):
        raise DomainError(f"{xi} is not purely periodic (needs xi > 1 and -1 < conj(xi) < 0)")
    return expand(xi)


def error_terms(xi: QuadraticSurd, n_max: int, expansion: CFExpansion | None = None) -> list[QuadraticSurd]:
    """``eps_{-2} .. eps_{n_max}``; list index ``i`` holds eps_{i-2}."""
    exp_ = expansion if expansion is not None else expand(xi)
    h, k = convergent_table(exp_, n_max)
    return [hi - xi * ki for hi, ki in zip(h, k)]


def error_term(xi: QuadraticSurd, n: int) -> ErrorTerm:
    """``h_n - xi*k_n`` from the regular expansion of ``xi``."""
    if n < -2:
        raise DomainError(f"error index must be >= -2, got {n}")
    return ErrorTerm(n, error_terms(xi, n)[n + 2])


def _unit(xi: QuadraticSurd, expansion: CFExpansion) -> QuadraticSurd:
    N = len(expansion.period)
    _, k = convergent_table(expansion, N - 1)
    return k[N + 1] * xi + k[N]


def rho(xi: QuadraticSurd) -> QuadraticSurd:
    """Common ratio ``(-1)^N / (k_{N-1} xi + k_{N-2})``."""
    e = _periodic(xi)
    N = len(e.period)
    return (-1) ** N / _unit(xi, e)


def period_matrix(xi: QuadraticSurd) -> PeriodMatrix:
    """Product of ``[[a_j, 1], [1, 0]]`` over one period, with eigenvalues."""
    e = _periodic(xi)
    A, B, C, D = 1, 0, 0, 1
    for a in e.period:
        A, B, C, D = A * a + B, A, C * a + D, C
    lam1 = C * xi + D
    # M (xi, 1)^T = lam1 (xi, 1)^T, checked exactly
    if A * xi + B != lam1 * xi:
        raise AssertionError("period matrix does not fix xi")
    N = len(e.period)
    lam2 = (-1) ** N / lam1
    return PeriodMatrix(A, B, C, D, lam1, lam2)


def verify_geometric(xi: QuadraticSurd, m_max: int) -> GeometricReport:
    """Check ``eps_{mN+r} == eps_r * rho**m`` for r < N, m <= m_max.

    The residue class N-1 is additionally checked from its seed at index -1.
    """
    if m_max < 0:
        raise DomainError("m_max must be >= 0")
    e = _periodic(xi)
    N = len(e.period)
    r_ = (-1) ** N / _unit(xi, e)
    eps = error_terms(xi, m_max * N + N - 1, e)
    failures = []
    checked = 0
    power = QuadraticSurd(1, 0, 1, xi.D)
    for m in range(m_max + 1):
        for r in range(N):
            checked += 1
            if eps[m * N + r + 2] != eps[r + 2] * power:
                failures.append((m, r))
        # class N-1 seeded at index -1: eps_{mN-1} = eps_{-1} * rho^m
        if m >= 1:
            checked += 1
            if eps[m * N - 1 + 2] != eps[1] * power:
                failures.append((m, -1))
        power = power * r_
    return GeometricReport(not failures, N, m_max, checked, tuple(failures))


def _abs_eps(eps_n: QuadraticSurd, n: int) -> QuadraticSurd:
    # errors alternate: sign(eps_n) = (-1)^(n-1)
    return eps_n if (n - 1) % 2 == 0 else -eps_n


def _abs_rho(r: QuadraticSurd, N: int) -> QuadraticSurd:
    # rho = (-1)^N / u with u > 1
    return r if N % 2 == 0 else -r


def _class_seeds(xi, e):
    """``|eps|`` at the first index of each residue class 0..N-1."""
    N = len(e.period)
    eps = error_terms(xi, N - 1, e)
    seeds = [_abs_eps(eps[m + 2], m) for m in range(N - 1)]
    seeds.append(_abs_eps(eps[1], -1))
    return seeds


def beta_closed(xi: QuadraticSurd, m: int, s: int) -> QuadraticSurd:
    """Sum of ``|eps_j|**s`` over ``j >= -1`` with ``j = m (mod N)``."""
    if not isinstance(s, int) or s < 1:
        raise DomainError(f"exact beta needs an integer s >= 1, got {s!r}")
    e = _periodic(xi)
    N = len(e.period)
    if not 0 <= m < N:
        raise DomainError(f"residue class must lie in 0..{N - 1}, got {m}")
    rabs = _abs_rho((-1) ** N / _unit(xi, e), N)
    return _class_seeds(xi, e)[m] ** s / (1 - rabs**s)


def _parse_exponent(s):
    if isinstance(s, bool):
        raise DomainError("exponent must be a number")
    if isinstance(s, int):
        return s
    if isinstance(s, str):
        try:
            q = Fraction(s)
        except ValueError:
            raise DomainError(f"cannot read exponent {s!r}") from None
    else:
        q = Fraction(s)
    return int(q) if q.denominator == 1 else q


def f_weighted(xi: QuadraticSurd, s, prec: int = 128) -> WeightedSumReport:
    """``sum_{n>=-1} a_{n+1} |eps_n|**s`` via the residue-class decomposition.

    Integer ``s >= 1`` gives exact elements of Q(sqrt(D)); any other real
    ``s > 1`` is evaluated with enclosures at ``prec`` bits.
    """
    s = _parse_exponent(s)
    e = _periodic(xi)
    N = len(e.period)
    weights = [e.period[(i + 1) % N] for i in range(N)]
    r_ = (-1) ** N / _unit(xi, e)
    rabs = _abs_rho(r_, N)
    seeds = _class_seeds(xi, e)
    if isinstance(s, int):
        if s < 1:
            raise DomainError(f"exact mode needs s >= 1, got {s}")
        denom = 1 - rabs**s
        betas = tuple(seed**s / denom for seed in seeds)
        f = sum((w * b for w, b in zip(weights, betas)), QuadraticSurd(0, 0, 1, xi.D))
        return WeightedSumReport(xi, s, e.period, r_, betas, f, True)
    if s <= 1:
        raise DomainError(f"numeric mode needs s > 1, got {s}")
    wprec = prec + 32
    rn = eval_surd(rabs, wprec).pow_real(s)
    denom = 1 - rn
    betas = tuple(eval_surd(seed, wprec).pow_real(s) / denom for seed in seeds)
    f = sum((b * w for w, b in zip(weights, betas)), HPReal(0, 0, 0, wprec))
    return WeightedSumReport(
        xi, s, e.period, r_, tuple(b.with_prec(prec) for b in betas), f.with_prec(prec), False
    )


def f_partial(xi: QuadraticSurd, s: int, n_max: int) -> QuadraticSurd:
    """Exact ``sum_{n=-1}^{n_max} a_{n+1} |eps_n|**s`` for integer ``s``."""
    if not isinstance(s, int) or s < 1:
        raise DomainError(f"f_partial needs an integer s >= 1, got {s!r}")
    if n_max < -1:
        raise DomainError("n_max must be >= -1")
    e = expand(xi)
    eps = error_terms(xi, n_max + 1, e)
    total = QuadraticSurd(0, 0, 1, xi.D)
    for n in range(-1, n_max + 1):
        total = total + e.digit(n + 1) * _abs_eps(eps[n + 2], n) ** s
    return total


def tail_bound(xi: QuadraticSurd, s: int, n_max: int) -> QuadraticSurd:
    """Upper bound for ``f_weighted - f_partial``.

    ``max_i(a_{i+1} |eps_i|^s) * N * |rho|^(s*floor(n_max/N)) / (1 - |rho|^s)``.
    """
    e = _periodic(xi)
    N = len(e.period)
    eps = error_terms(xi, N - 1, e)
    rabs = _abs_rho((-1) ** N / _unit(xi, e), N)
    terms = [e.period[(i + 1) % N] * _abs_eps(eps[i + 2], i) ** s for i in range(N)]
    top = terms[0]
    for t in terms[1:]:
        if t > top:
            top = t
    return top * N * rabs ** (s * (n_max // N)) / (1 - rabs**s)


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def periodicity_quadratic_check(xi: QuadraticSurd) -> QuadraticCheck:
    """Check ``k_{N-1} x^2 - (h_{N-1} - k_{N-2}) x - h_{N-2} = 0`` at ``xi``.

    The converse direction is checked as a polynomial identity in an
    indeterminate x: ``(h_{N-1} - x k_{N-1}) (k_{N-1} x + k_{N-2}) - (-1)^N``
    must be ``-k_{N-1}`` times the characteristic quadratic, so the relation
    ``eps_{N-1} = rho * eps_{-1}`` forces the quadratic.
    """
    e = _periodic(xi)
    N = len(e.period)
    h, k = convergent_table(e, N - 1)
    hN1, hN2, kN1, kN2 = h[N + 1], h[N], k[N + 1], k[N]
    # coefficients low degree first
    char = [-hN2, -(hN1 - kN2), kN1]
    value = char[2] * xi * xi + char[1] * xi + char[0]
    lhs = _poly_mul([hN1, -kN1], [kN2, kN1])
    lhs[0] -= (-1) ** N
    converse = lhs == [-kN1 * c for c in char]
    return QuadraticCheck((kN1, -(hN1 - kN2), -hN2), value == 0, converse)
