"""Jacobi-Perron expansions and the scalar-product decay check.

Convention (classical form): the state ``(x_1, ..., x_{d-1})`` has digits
``a_i = floor(x_i)`` and moves to ``((x_2-a_2)/t, ..., (x_{d-1}-a_{d-1})/t, 1/t)``
with ``t = x_1 - a_1``. The step matrix ``A`` satisfies
``(1, x_1, ..., x_{d-1}) = t * A (1, x'_1, ..., x'_{d-1})``; for d = 2 this
is ``[[0, 1], [1, a]]`` and the products ``A_0 ... A_n`` are
``[[k_{n-1}, k_n], [h_{n-1}, h_n]]``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, PrecisionExhausted
from .numeric import HPReal

__all__ = [
    "JPAState",
    "StepMatrix",
    "JPAExpansion",
    "ThetaSequence",
    "EigenThetaReport",
    "jpa_step",
    "jpa_expand",
    "jpa_run",
    "isolate_root",
    "mat_mul",
    "mat_product",
    "last_column",
    "theta_sequence",
    "char_poly",
    "left_eigenvector",
    "verify_eigen_theta",
    "detect_period",
    "random_unimodular",
]

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class StepMatrix:
    rows: Matrix

    @property
    def d(self) -> int:
        return len(self.rows)

    def det(self) -> int:
        return _det(self.rows)

    def as_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class JPAState:
    components: tuple[HPReal, ...]
    step: int = 0

    @property
    def d(self) -> int:
        return len(self.components) + 1


@dataclass(frozen=True)
class ThetaSequence:
    B: tuple
    columns: tuple[tuple[int, ...], ...]
    thetas: tuple

    def __len__(self) -> int:
        return len(self.thetas)


@dataclass(frozen=True)
class JPAExpansion:
    eta: HPReal
    digits: tuple[tuple[int, ...], ...]
    matrices: tuple[StepMatrix, ...]
    basis: tuple[HPReal, ...]
    prec: int
    terminated: bool
    period_guess: tuple[int, int] | None  # (preperiod, period), unverified

    def as_dict(self) -> dict:
        return {
            "eta": self.eta.to_decimal(),
            "prec": self.prec,
            "digits": [list(d) for d in self.digits],
            "matrices": [m.as_list() for m in self.matrices],
            "terminated": self.terminated,
            "period_guess": None
            if self.period_guess is None
            else {"preperiod": self.period_guess[0], "period": self.period_guess[1], "verified": False},
        }


@dataclass(frozen=True)
class EigenThetaReport:
    mu: Fraction
    eigen_residual: float
    theta_residual: float | None
    eigen_ok: bool
    theta_ok: bool | None
    period: int
    m_max: int
    worst: tuple[int, int] | None = None
    thetas: tuple = field(default=(), repr=False)

    def as_dict(self) -> dict:
        return {
            "mu": float(self.mu),
            "eigen_residual": self.eigen_residual,
            "theta_residual": self.theta_residual,
            "eigen_ok": self.eigen_ok,
            "theta_ok": self.theta_ok,
            "period": self.period,
            "m_max": self.m_max,
        }


def _det(m) -> int:
    # Bareiss fraction-free elimination
    a = [list(r) for r in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))) for i in range(len(x)))


def mat_product(mats: Sequence[StepMatrix | Matrix]) -> Matrix:
    rows = [m.rows if isinstance(m, StepMatrix) else tuple(map(tuple, m)) for m in mats]
    if not rows:
        raise DomainError("empty matrix product")
    out = rows[0]
    for r in rows[1:]:
        out = mat_mul(out, r)
    return out


def last_column(m: Matrix) -> tuple[int, ...]:
    return tuple(r[-1] for r in m)


def _step_matrix(digits: Sequence[int]) -> StepMatrix:
    d = len(digits) + 1
    rows = []
    rows.append(tuple(1 if j == d - 1 else 0 for j in range(d)))
    for i in range(1, d):
        rows.append(tuple((1 if j == i - 1 else 0) + (digits[i - 1] if j == d - 1 else 0) for j in range(d)))
    return StepMatrix(tuple(rows))


def jpa_step(state: JPAState) -> tuple[tuple[int, ...], JPAState | None, StepMatrix]:
    """One Jacobi-Perron step.

    Returns ``next = None`` when ``x_1`` is an integer (rational breakdown).
    Raises :class:`PrecisionExhausted` when a floor or the pivot's sign
    cannot be decided from the enclosures.
    """
    xs = state.components
    if not xs:
        raise DomainError("JPA state needs at least one component")
    digits = tuple(x.floor() for x in xs)
    m = _step_matrix(digits)
    t = xs[0] - digits[0]
    if t.mid == 0 and t.rad == 0:
        return digits, None, m
    if t.sign() <= 0:
        raise PrecisionExhausted("pivot x_1 - a_1 not separated from zero")
    rest = [(x - a) / t for x, a in zip(xs[1:], digits[1:])]
    rest.append(1 / t)
    return digits, JPAState(tuple(rest), state.step + 1), m


def jpa_run(state: JPAState, n_max: int):
    digits, mats = [], []
    cur = state
    for _ in range(n_max):
        dg, nxt, m = jpa_step(cur)
        digits.append(dg)
        mats.append(m)
        if nxt is None:
            return digits, mats, True
        cur = nxt
    return digits, mats, False


def _poly_eval(coeffs: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def isolate_root(coeffs: Sequence[int], root_index: int, prec: int) -> HPReal:
    """Enclose the ``root_index``-th real root (ascending) of an integer polynomial.

    ``coeffs`` are highest degree first. Float approximations seed
    brackets that are checked by exact sign changes and bisected down to
    ``2**-(prec+8)`` relative width.
    """
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) < 3:
        raise DomainError("polynomial must have degree >= 2")
    approx = np.roots(np.array(coeffs, dtype=float))
    real = sorted(r.real for r in approx if abs(r.imag) <= 1e-9 * max(1.0, abs(r)))
    if not 0 <= root_index < len(real):
        raise DomainError(f"root index {root_index} out of range; {len(real)} real roots")
    r0 = real[root_index]
    guess = Fraction(r0).limit_denominator(10**6)
    if _poly_eval(coeffs, guess) == 0:
        return HPReal.from_value(guess, prec)
    gaps = [abs(r0 - r) for i, r in enumerate(real) if i != root_index]
    width = min([1e-6 * max(1.0, abs(r0))] + [g / 4 for g in gaps])
    lo, hi = Fraction(r0 - width), Fraction(r0 + width)
    flo, fhi = _poly_eval(coeffs, lo), _poly_eval(coeffs, hi)
    if flo == 0:
        return HPReal.from_value(lo, prec)
    if fhi == 0:
        return HPReal.from_value(hi, prec)
    if (flo > 0) == (fhi > 0):
        raise DomainError("root isolation failed: no sign change around the float root")
    target = Fraction(1, 2 ** (prec + 8)) * max(1, abs(Fraction(r0)))
    while hi - lo > target:
        mid = (lo + hi) / 2
        fm = _poly_eval(coeffs, mid)
        if fm == 0:
            return HPReal.from_value(mid, prec)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    centre = (lo + hi) / 2
    return HPReal.from_value(centre, prec + 8).widen((hi - lo) / 2).with_prec(prec)


def detect_period(digits: Sequence[tuple[int, ...]], min_repeats: int = 2) -> tuple[int, int] | None:
    """Smallest (preperiod, period) making the tail periodic with at least
    ``min_repeats`` full windows. Heuristic: a finite table never proves it.
    """
    n = len(digits)
    for s in range(n):
        for p in range(1, (n - s) // min_repeats + 1):
            if all(digits[i] == digits[i + p] for i in range(s, n - p)):
                return s, p
    return None


def jpa_expand(coeffs: Sequence[int], root_index: int, n_max: int, prec: int = 256, max_prec: int | None = None) -> JPAExpansion:
    """Run the algorithm on ``(eta, eta^2, ..., eta^(d-1))`` for a root eta.

    ``d`` is the polynomial degree. Working precision doubles on
    :class:`PrecisionExhausted` until ``max_prec`` (default 16*prec).
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    max_prec = max_prec or 16 * prec
    d = len(coeffs) - next((i for i, c in enumerate(coeffs) if c != 0), len(coeffs)) - 1
    work = prec
    while True:
        eta = isolate_root(coeffs, root_index, work)
        powers = [HPReal(1, 0, 0, work)]
        for _ in range(d - 1):
            powers.append(powers[-1] * eta)
        try:
            digits, mats, term = jpa_run(JPAState(tuple(powers[1:])), n_max)
        except PrecisionExhausted:
            if work * 2 > max_prec:
                raise
            work *= 2
            continue
        return JPAExpansion(
            eta=eta,
            digits=tuple(digits),
            matrices=tuple(mats),
            basis=tuple(powers),
            prec=work,
            terminated=term,
            period_guess=detect_period(digits) if digits and not term else None,
        )


def theta_sequence(matrices: Sequence[StepMatrix | Matrix], B: Sequence, count: int) -> ThetaSequence:
    """``theta_n = <C_n, B>`` for n < count, repeating the matrices periodically."""
    rows = [m.rows if isinstance(m, StepMatrix) else tuple(map(tuple, m)) for m in matrices]
    if not rows:
        raise DomainError("need at least one matrix")
    N = len(rows)
    cols, out = [], []
    P = None
    for n in range(count):
        P = rows[0] if P is None else mat_mul(P, rows[n % N])
        C = last_column(P)
        cols.append(C)
        acc = C[0] * B[0]
        for c, b in zip(C[1:], B[1:]):
            acc = acc + c * b
        out.append(acc)
    return ThetaSequence(tuple(B), tuple(cols), tuple(out))


def char_poly(M: Matrix) -> list[int]:
    """Coefficients of det(xI - M), highest degree first (Faddeev-LeVerrier)."""
    n = len(M)
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- M (Mk + c_{k-1} I)
        for i in range(n):
            Mk[i][i] += coeffs[-1]
        Mk = [[sum(M[i][l] * Mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(Mk[i][i] for i in range(n)) / k)
    return [int(c) for c in coeffs]


def _minor(a, i, j):
    return [[a[r][c] for c in range(len(a)) if c != j] for r in range(len(a)) if r != i]


def _det_generic(a):
    if len(a) == 1:
        return a[0][0]
    acc = None
    for j in range(len(a)):
        term = a[0][j] * _det_generic(_minor(a, 0, j))
        term = term if j % 2 == 0 else -term
        acc = term if acc is None else acc + term
    return acc


def left_eigenvector(M: Matrix, root_index: int, prec: int = 256) -> tuple[HPReal, tuple[HPReal, ...]]:
    """Real eigenvalue ``mu`` (``root_index``-th real root of the characteristic
    polynomial, ascending) and an enclosed vector B with ``M^T B = mu B``.

    B is a row of cofactors of ``M^T - mu I``; the row with the largest
    entry is kept.
    """
    rows = M.rows if isinstance(M, StepMatrix) else tuple(map(tuple, M))
    n = len(rows)
    mu = isolate_root(char_poly(rows), root_index, prec + 32)
    shifted = [[rows[j][i] - (mu if i == j else 0) for j in range(n)] for i in range(n)]
    if n == 1:
        return mu.with_prec(prec), (HPReal(1, 0, 0, prec),)
    best, best_size = None, -1
    for i in range(n):
        vec = []
        for j in range(n):
            c = _det_generic(_minor(shifted, i, j))
            c = c if isinstance(c, HPReal) else HPReal.from_value(Fraction(c), prec + 32)
            vec.append(c if (i + j) % 2 == 0 else -c)
        size = max(abs(float(v.center)) for v in vec)
        if size > best_size:
            best, best_size = vec, size
    if best_size == 0:
        raise DomainError("eigenvalue is not simple; no cofactor row spans the kernel")
    return mu.with_prec(prec), tuple(v.with_prec(prec) for v in best)


def _as_fraction(v) -> Fraction:
    if isinstance(v, HPReal):
        return v.center
    return Fraction(v)


def _fnorm(v: Sequence[Fraction]) -> float:
    return math.sqrt(float(sum(x * x for x in v)))


def verify_eigen_theta(
    period_matrices: Sequence[StepMatrix | Matrix],
    B: Sequence,
    m_max: int,
    tol: float,
) -> EigenThetaReport:
    """Check ``theta_{mN+r} = mu^m theta_r`` when B is a left eigenvector.

    B's entries (HPReal centres or rationals) are used exactly. ``mu`` is the
    Rayleigh quotient ``<B, M^T B>/<B, B>`` for the period product M and the
    eigen residual is ``|M^T B - mu B| / |B|``. If that passes ``tol``, the
    theta relation is checked for all r < N, m <= m_max with the residual
    normalised by ``|C_r| |B| sum_{j<m} |M|_F^(m-1-j) |mu|^j``, the size the
    eigen defect can grow to after m periods.
    """
    rows = [m.rows if isinstance(m, StepMatrix) else tuple(map(tuple, m)) for m in period_matrices]
    if not rows:
        raise DomainError("need at least one period matrix")
    Bf = [_as_fraction(b) for b in B]
    if not any(Bf):
        raise DomainError("B must be nonzero")
    M = mat_product(rows)
    d, N = len(M), len(rows)
    MtB = [sum(M[i][j] * Bf[i] for i in range(d)) for j in range(d)]
    bb = sum(x * x for x in Bf)
    mu = sum(x * y for x, y in zip(Bf, MtB)) / bb
    defect = [x - mu * y for x, y in zip(MtB, Bf)]
    eig_res = _fnorm(defect) / _fnorm(Bf)
    eigen_ok = eig_res <= tol
    if not eigen_ok:
        return EigenThetaReport(mu, eig_res, None, False, None, N, m_max)
    thetas = theta_sequence(rows, Bf, (m_max + 1) * N).thetas
    Cs = []
    P = None
    for r in range(N):
        P = rows[0] if P is None else mat_mul(P, rows[r])
        Cs.append(last_column(P))
    mnorm = math.sqrt(sum(float(x) ** 2 for row in M for x in row))
    amu = abs(float(mu))
    bnorm = _fnorm(Bf)
    worst, where = 0.0, None
    for m in range(1, m_max + 1):
        growth = sum(mnorm ** (m - 1 - j) * amu**j for j in range(m))
        for r in range(N):
            diff = thetas[m * N + r] - mu**m * thetas[r]
            scale = _fnorm(Cs[r]) * bnorm * growth
            res = abs(float(diff)) / scale if scale else 0.0
            if res > worst:
                worst, where = res, (m, r)
    return EigenThetaReport(mu, eig_res, worst, True, worst <= tol, N, m_max, where, thetas)


def random_unimodular(rng: random.Random, d: int, steps: int = 8, span: int = 3) -> Matrix:
    """Product of ``steps`` random elementary matrices ``I + c E_ij`` (det 1)."""
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        c = rng.choice([k for k in range(-span, span + 1) if k])
        for col in range(d):
            m[i][col] += c * m[j][col]
    return tuple(tuple(r) for r in m)
