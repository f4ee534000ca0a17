"""Seeded verification suites shared by ``cferrsum verify`` and the acceptance tests.

Every suite is deterministic given ``(seed, cases)``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .cfrac import surd_from_word
from .errors import PrecisionExhausted
from .errsum import error_terms, f_partial, f_weighted, period_matrix, rho, tail_bound, verify_geometric
from .eulercf import (
    GeneralizedCF,
    alt_harmonic_tail_digamma,
    alt_harmonic_tail_series,
    gcf_convergents,
    leibniz_partial,
    leibniz_tail_digamma,
    leibniz_tail_series,
    ln2_identity_sum,
    pi_identity_sum,
    pi_instance,
    telescoping_partial,
)
from .exactnum import QuadraticSurd, is_square
from .jpa import JPAState, jpa_run, random_unimodular, theta_sequence, verify_eigen_theta
from .numeric import HPReal, const_pi, digamma, eval_surd
from .units import fundamental_unit, pell_solutions, product_complete_quotients, unit_periodicity_equivalence

__all__ = [
    "CheckResult",
    "TABLE",
    "random_words",
    "random_surds",
    "SUITES",
    "run_suites",
    "format_table",
]

# word -> (u, N(u))
TABLE = {
    (2,): (QuadraticSurd(1, 1, 1, 2), -1),
    (1, 2): (QuadraticSurd(2, 1, 1, 3), 1),
    (1,): (QuadraticSurd(1, 1, 2, 5), -1),
    (2, 4): (QuadraticSurd(5, 2, 1, 6), 1),
    (1, 1, 1, 4): (QuadraticSurd(8, 3, 1, 7), 1),
}


@dataclass(frozen=True)
class CheckResult:
    key: str
    title: str
    ok: bool
    detail: str
    seconds: float


def random_words(rng: random.Random, count: int, max_digit: int = 10, max_len: int = 8) -> list[tuple[int, ...]]:
    return [tuple(rng.randint(1, max_digit) for _ in range(rng.randint(1, max_len))) for _ in range(count)]


def random_surds(rng: random.Random, count: int) -> list[QuadraticSurd]:
    """Irrational surds above 1 from small random coefficients."""
    out = []
    while len(out) < count:
        D = rng.randint(2, 1000)
        if is_square(D):
            continue
        x = QuadraticSurd(rng.randint(-100, 100), rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 50), D)
        if x > 1:
            out.append(x)
    return out


def _table(seed, cases):
    bad = []
    for word, (u, n) in TABLE.items():
        rep = fundamental_unit(surd_from_word(word))
        if rep.u != u or rep.norm != n:
            bad.append(f"{list(word)}: got {rep.u}, N={rep.norm}")
    return not bad, "; ".join(bad) or f"{len(TABLE)} rows match"


def _weighted(seed, cases):
    words = random_words(random.Random(seed), cases)
    bad = 0
    for w in words:
        xi = surd_from_word(w)
        if f_weighted(xi, 2).f != xi or f_weighted(xi, 1).f != xi + 1:
            bad += 1
    return bad == 0, f"{len(words) - bad}/{len(words)} words exact"


def _geometric(seed, cases):
    words = random_words(random.Random(seed), cases)
    bad = 0
    for w in words:
        xi = surd_from_word(w)
        if not verify_geometric(xi, 12).ok or period_matrix(xi).lam2 != rho(xi):
            bad += 1
    return bad == 0, f"{len(words) - bad}/{len(words)} words, m <= 12"


def _tail(seed, cases):
    words = list(TABLE) + random_words(random.Random(seed), max(0, min(cases, 20)), max_len=4)
    bad = []
    checked = 0
    for w in words:
        xi = surd_from_word(w)
        for s in (1, 2, 3):
            f = f_weighted(xi, s).f
            for n_max in (10, 30, 60):
                checked += 1
                gap = f - f_partial(xi, s, n_max)
                if gap < 0 or gap > tail_bound(xi, s, n_max):
                    bad.append((w, s, n_max))
    return not bad, f"{checked - len(bad)}/{checked} (word, s, n_max) bounded"


def _units(seed, cases):
    rng = random.Random(seed)
    words = random_words(rng, max(1, cases // 2))
    prod_bad = sum(product_complete_quotients(surd_from_word(w)) != fundamental_unit(surd_from_word(w)).u for w in words)
    pell_bad = 0
    for word in TABLE:
        for sol in pell_solutions(surd_from_word(word), 8):
            pell_bad += sol.residual != sol.rhs
    surds = random_surds(rng, max(1, cases * 5 // 2))
    eq_bad = sum(not unit_periodicity_equivalence(x).agree for x in surds)
    ok = not (prod_bad or pell_bad or eq_bad)
    return ok, (
        f"product=unit {len(words) - prod_bad}/{len(words)}; pell residual failures {pell_bad}; "
        f"galois<=>unit {len(surds) - eq_bad}/{len(surds)}"
    )


def _telescoping(seed, cases):
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        N = rng.randint(0, 30)
        a = [rng.randint(1, 9) for _ in range(N + 3)]
        b = [1] + [rng.randint(1, 9) for _ in range(N + 3)]
        cf = GeneralizedCF(lambda n, a=a: a[n], lambda n, b=b: b[n])
        xi = Fraction(rng.randint(-500, 500), rng.randint(1, 100))
        lhs, rhs = telescoping_partial(cf, xi, N)
        bad += lhs != rhs
    # b = 1 and the regular digits of a surd: the relation becomes the partial weighted sum at s = 2
    red_bad = 0
    for w in random_words(rng, max(1, cases // 10), max_len=4):
        xi = surd_from_word(w)
        N = rng.randint(0, 30)
        eps = error_terms(xi, N + 1)
        red_bad += f_partial(xi, 2, N) != xi + eps[N + 2] * eps[N + 3]
    return bad == 0 and red_bad == 0, f"{cases - bad}/{cases} exact; b=1 reduction failures {red_bad}"


def _pi_structure(seed, cases):
    conv = gcf_convergents(pi_instance(), 50)
    bad = []
    dfact = 1
    for n in range(1, 51):
        dfact *= 2 * n - 1
        c = conv[n + 2]
        if c.k != dfact or c.h != 4 * c.k * leibniz_partial(n):
            bad.append(n)
    return not bad, "n = 1..50 exact" if not bad else f"failures at {bad}"


def _pi_numeric(seed, cases, N=100_000):
    rep = pi_identity_sum(N, 256)
    res = abs(float(rep.residual))
    return res < 1e-5, f"N={N}: |residual| = {res:.3e} (predicted 1/(2N) = {rep.predicted_remainder:.3e})"


def _ln2_numeric(seed, cases, N=100_000):
    rep = ln2_identity_sum(N, 256)
    res = abs(float(rep.residual))
    return res < 1e-5, f"N={N}: |residual| = {res:.3e} (predicted 1/(4N) = {rep.predicted_remainder:.3e})"


def _max_gap(x: HPReal, y: HPReal) -> float:
    d = x - y
    return float(abs(d.center) + d.radius)


def _digamma_forms(seed, cases):
    worst = 0.0
    for n in range(0, 51):
        worst = max(worst, _max_gap(leibniz_tail_series(n, 128).value, leibniz_tail_digamma(n, 128)))
        worst = max(worst, _max_gap(alt_harmonic_tail_series(n, 128).value, alt_harmonic_tail_digamma(n, 128)))
    pi_gap = _max_gap(digamma(Fraction(3, 4), 160) - digamma(Fraction(1, 4), 160), const_pi(160))
    return worst < 1e-12 and pi_gap < 1e-30, f"tails max gap {worst:.2e}; psi(3/4)-psi(1/4) vs pi {pi_gap:.2e}"


def _jpa(seed, cases):
    prec = 256
    d2_worst = 0.0
    d2_ok = True
    for word in TABLE:
        xi = surd_from_word(word)
        N = len(word)
        x = eval_surd(xi, prec)
        digits, mats, _ = jpa_run(JPAState((x,)), N)
        if [dg[0] for dg in digits] != list(word):
            d2_ok = False
        B = (-x, HPReal(1, 0, 0, prec))
        m_max = 12
        eps = error_terms(xi, (m_max + 1) * N)
        th = theta_sequence(mats, B, (m_max + 1) * N).thetas
        for n, t in enumerate(th):
            d2_worst = max(d2_worst, _max_gap(t, eval_surd(eps[n + 2], prec)))
        rep = verify_eigen_theta(mats, B, m_max, 1e-20)
        d2_ok &= bool(rep.eigen_ok and rep.theta_ok)
        d2_ok &= _max_gap(HPReal.from_value(rep.mu, prec), eval_surd(rho(xi), prec)) < 1e-20
    d2_ok &= d2_worst < 1e-20
    rng = random.Random(seed)
    d3_bad = 0
    count = max(1, min(cases, 20))
    worst_ratio = 0.0
    for _ in range(count):
        M = random_unimodular(rng, 3)
        w, v = np.linalg.eig(np.array(M, dtype=float).T)
        real = [i for i in range(3) if abs(w[i].imag) < 1e-12]
        i = min(real, key=lambda j: abs(w[j].real))
        B = [Fraction(float(c)) for c in v[:, i].real]
        rep = verify_eigen_theta([M], B, 8, 1e-6)
        ratio = rep.theta_residual / rep.eigen_residual if rep.eigen_residual and rep.theta_residual is not None else 0.0
        worst_ratio = max(worst_ratio, ratio)
        if not rep.eigen_ok or rep.theta_residual is None or rep.theta_residual > 10 * rep.eigen_residual:
            d3_bad += 1
    ok = d2_ok and d3_bad == 0
    return ok, (
        f"d=2 theta vs eps max gap {d2_worst:.2e}; d=3 {count - d3_bad}/{count} with "
        f"theta residual <= 10x eigen residual (worst ratio {worst_ratio:.2f})"
    )


SUITES: dict[str, tuple[str, Callable]] = {
    "1": ("unit table reproduction", _table),
    "2": ("weighted sums f(2)=xi, f(1)=xi+1", _weighted),
    "3": ("geometric error classes and lambda_2 = rho", _geometric),
    "4": ("partial sums within the geometric tail bound", _tail),
    "5": ("units, Pell residuals, Galois <=> unit norm", _units),
    "6": ("generalized telescoping identity", _telescoping),
    "7": ("pi instance denominators and numerators", _pi_structure),
    "8": ("pi - pi^2/4 identity at N = 1e5", _pi_numeric),
    "9": ("ln 2 identity at N = 1e5", _ln2_numeric),
    "10": ("digamma tail forms", _digamma_forms),
    "11": ("scalar-product decay along a left eigenvector", _jpa),
}


def run_suites(seed: int = 0, cases: int = 200, only=None) -> list[CheckResult]:
    out = []
    for key, (title, fn) in SUITES.items():
        if only and key not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = fn(seed, cases)
        except PrecisionExhausted as exc:
            ok, detail = False, f"precision exhausted: {exc}"
        out.append(CheckResult(key, title, bool(ok), detail, time.perf_counter() - t0))
    return out


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.title) for r in results)
    lines = [f"{'#':>3}  {'check':<{width}}  result  detail"]
    for r in results:
        lines.append(f"{r.key:>3}  {r.title:<{width}}  {'PASS' if r.ok else 'FAIL':<6}  {r.detail}")
    passed = sum(r.ok for r in results)
    lines.append(f"{passed}/{len(results)} passed")
    return "\n".join(lines)

