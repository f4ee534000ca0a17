from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cferrsum.cfrac import expand, surd_from_word
from cferrsum.errors import DomainError
from cferrsum.errsum import (
    beta_closed,
    error_term,
    error_terms,
    f_partial,
    f_weighted,
    period_matrix,
    periodicity_quadratic_check,
    rho,
    tail_bound,
    verify_geometric,
)
from cferrsum.exactnum import QuadraticSurd
from cferrsum.numeric import HPReal, eval_surd

from strategies import words

PHI = QuadraticSurd(1, 1, 2, 5)
X2 = QuadraticSurd(1, 1, 1, 2)
X12 = QuadraticSurd(1, 1, 2, 3)

# f_xi(s) for xi = 1+sqrt(2), from brute-force mpmath sums over 400 terms at 80 digits
F_X2_5_2 = "2.2482603658841206514738915591023939947678940019822"
# xi = golden ratio, s = 3/2, 600 terms
F_PHI_3_2 = "1.9450268191319819062285046480515648047179586108229"


def test_error_term_seeds():
    assert error_term(X2, -1).value == 1
    assert error_term(X2, -2).value == -X2
    assert error_term(X2, 0).value == QuadraticSurd(1, -1, 1, 2)


@given(words, st.integers(0, 30))
def test_sign_law_and_decay(w, n_max):
    xi = surd_from_word(w)
    eps = error_terms(xi, n_max)
    for n in range(-1, n_max + 1):
        assert eps[n + 2].sign() == (-1) ** (n - 1)
    for n in range(0, n_max):
        assert abs(eps[n + 3]) < abs(eps[n + 2])


@pytest.mark.parametrize(
    "xi, r",
    [(PHI, QuadraticSurd(1, -1, 2, 5)), (X2, QuadraticSurd(1, -1, 1, 2)), (X12, QuadraticSurd(2, -1, 1, 3))],
)
def test_rho_examples(xi, r):
    assert rho(xi) == r


def test_rho_needs_pure_period():
    with pytest.raises(DomainError):
        rho(QuadraticSurd(0, 1, 1, 2))


def test_period_matrix_examples():
    m = period_matrix(X2)
    assert m.entries == ((2, 1), (1, 0)) and m.lam1 == X2
    m = period_matrix(X12)
    assert m.entries == ((3, 1), (2, 1)) and m.det == 1


@given(words)
def test_period_matrix_properties(w):
    xi = surd_from_word(w)
    m = period_matrix(xi)
    N = len(expand(xi).period)
    assert m.det == (-1) ** N
    assert m.lam1 * m.lam2 == (-1) ** N
    assert m.lam2 == rho(xi)
    assert abs(m.lam2) < 1 < m.lam1
    u = m.lam1
    assert u * u.conjugate() == (-1) ** N


@pytest.mark.parametrize("xi", [PHI, surd_from_word((2, 4))])
def test_geometric_m12(xi):
    rep = verify_geometric(xi, 12)
    assert rep.ok and not rep.failures


def test_geometric_m0():
    assert verify_geometric(X2, 0).ok


def test_geometric_requires_pure_period():
    with pytest.raises(DomainError):
        verify_geometric(QuadraticSurd(0, 1, 1, 2), 3)


def test_beta_examples():
    assert beta_closed(PHI, 0, 2) == PHI
    assert beta_closed(X2, 0, 2) == 1 / QuadraticSurd(-2, 2, 1, 2)
    with pytest.raises(DomainError):
        beta_closed(X2, 0, 0)
    with pytest.raises(DomainError):
        beta_closed(X2, 1, 2)


@given(words, st.integers(1, 4))
def test_beta_numerators(w, s):
    xi = surd_from_word(w)
    e = expand(xi)
    N = len(e.period)
    rabs = abs(rho(xi))
    eps = error_terms(xi, N)
    for m in range(N):
        seed = abs(eps[m + 2]) if m <= N - 2 else abs(eps[1])
        assert beta_closed(xi, m, s) * (1 - rabs**s) == seed**s
    # the last class starts at eps_{-1} = 1
    assert beta_closed(xi, N - 1, s) * (1 - rabs**s) == 1


@given(words)
def test_weighted_sum_identities(w):
    xi = surd_from_word(w)
    assert f_weighted(xi, 2).f == xi
    assert f_weighted(xi, 1).f == xi + 1


def test_weighted_sum_s3():
    assert f_weighted(X2, 3).f == QuadraticSurd(8, 5, 7, 2)


def test_weighted_sum_report_fields():
    rep = f_weighted(X12, 2)
    assert rep.exact and rep.period == (1, 2)
    weights = [1, 2]
    wrap = [weights[(i + 1) % 2] for i in range(2)]
    assert sum((a * b for a, b in zip(wrap, rep.betas)), QuadraticSurd(0)) == rep.f
    d = rep.as_dict()
    assert d["f"]["symbolic"] == str(X12) and d["N"] == 2


@pytest.mark.parametrize("xi, s, ref", [(X2, "5/2", F_X2_5_2), (PHI, Fraction(3, 2), F_PHI_3_2)])
def test_weighted_sum_numeric(xi, s, ref):
    rep = f_weighted(xi, s, prec=160)
    assert not rep.exact
    # the reference is rounded to 50 digits
    assert abs(rep.f.center - Fraction(ref)) <= rep.f.radius + Fraction(1, 10**49)
    assert rep.f.radius < Fraction(1, 10**40)


@pytest.mark.parametrize("s", [1, "1", 0.5, "-2"])
def test_weighted_sum_numeric_domain(s):
    if s in (1, "1"):
        assert f_weighted(X2, s).exact
    else:
        with pytest.raises(DomainError):
            f_weighted(X2, s)


def test_partial_examples():
    assert f_partial(PHI, 2, -1) == 1
    gap = PHI - f_partial(PHI, 2, 50)
    assert HPReal.from_value(Fraction(1, 10**20), 64).certainly_gt(eval_surd(gap, 128))


@given(words, st.sampled_from([1, 2, 3]), st.integers(0, 40))
def test_partial_within_tail_bound(w, s, n_max):
    xi = surd_from_word(w)
    gap = f_weighted(xi, s).f - f_partial(xi, s, n_max)
    assert 0 < gap <= tail_bound(xi, s, n_max)


@given(words, st.integers(-1, 20))
def test_partial_monotone(w, n):
    xi = surd_from_word(w)
    assert f_partial(xi, 2, n) < f_partial(xi, 2, n + 1)


@pytest.mark.parametrize("xi, coeffs", [(PHI, (1, -1, -1)), (X2, (1, -2, -1)), (X12, (2, -2, -1))])
def test_quadratic_check_examples(xi, coeffs):
    rep = periodicity_quadratic_check(xi)
    assert rep.coefficients == coeffs and rep.holds and rep.converse_holds


@given(words)
def test_quadratic_check_random(w):
    rep = periodicity_quadratic_check(surd_from_word(w))
    assert rep.holds and rep.converse_holds
