import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cferrsum.cfrac import convergent_table, expand, surd_from_word, take
from cferrsum.errors import DomainError, PrecisionExhausted
from cferrsum.errsum import error_terms, rho
from cferrsum.exactnum import QuadraticSurd
from cferrsum.jpa import (
    JPAState,
    StepMatrix,
    char_poly,
    detect_period,
    isolate_root,
    jpa_expand,
    jpa_run,
    jpa_step,
    last_column,
    left_eigenvector,
    mat_product,
    random_unimodular,
    theta_sequence,
    verify_eigen_theta,
)
from cferrsum.numeric import HPReal, eval_surd

from strategies import surds, words

# x^3 - 4x^2 + x + 3: the middle real root has a JPA tail (1,8),(1,2) repeating
CUBIC = (1, -4, 1, 3)
CUBIC_TAIL = ((0, 1, 2), (0, 1, 3), (1, 8, 17))


def test_golden_digits():
    e = jpa_expand((1, -1, -1), 1, 20)
    assert e.digits == ((1,),) * 20
    assert e.period_guess == (0, 1)
    assert all(m.rows == ((0, 1), (1, 1)) for m in e.matrices)


def test_zero_steps():
    e = jpa_expand((1, -1, -1), 1, 0)
    assert e.digits == () and e.matrices == () and e.period_guess is None


def test_rational_breakdown():
    # x^3 - 1 has the rational root 1: the first pivot is exactly zero
    e = jpa_expand((1, 0, 0, -1), 0, 5)
    assert e.terminated and e.digits == ((1, 1),) and e.period_guess is None
    digits, nxt, m = jpa_step(JPAState((HPReal.from_value(3, 64), HPReal.from_value(Fraction(5, 2), 64))))
    assert digits == (3, 2) and nxt is None and m.det() == 1


def test_step_matrix_shape():
    _, _, m = jpa_step(JPAState((HPReal.from_value(Fraction(7, 2), 64), HPReal.from_value(Fraction(31, 3), 64))))
    assert m.rows == ((0, 0, 1), (1, 0, 3), (0, 1, 10))
    assert m.det() == 1


def test_wide_ball_exhausts():
    wide = HPReal.from_value(Fraction(3), 64).widen(Fraction(1, 2))
    with pytest.raises(PrecisionExhausted):
        jpa_step(JPAState((wide,)))


def test_isolate_root():
    r = isolate_root((1, 0, -2), 1, 200)
    assert r.contains(Fraction(99, 70)) is False
    assert (r * r).contains(2) and r.radius < Fraction(1, 2**190)
    assert isolate_root((2, -3, 1), 0, 64).center == Fraction(1, 2)
    with pytest.raises(DomainError):
        isolate_root((1, 0, 1), 0, 64)
    with pytest.raises(DomainError):
        isolate_root((1, -3), 0, 64)
    with pytest.raises(DomainError):
        isolate_root((1, 0, -2), 2, 64)


def test_detect_period():
    assert detect_period([(3,), (1,), (2,), (1,), (2,), (1,), (2,)]) == (1, 2)
    assert detect_period([(1,), (2,), (3,)]) is None
    assert detect_period([(5,), (5,), (5,), (5,)]) == (0, 1)


@pytest.mark.parametrize("word", [(2,), (1, 2), (1,), (2, 4), (1, 1, 1, 4)])
def test_d2_matches_regular_cf(word):
    xi = surd_from_word(word)
    n = 30
    digits, mats, term = jpa_run(JPAState((eval_surd(xi, 1024),)), n)
    assert not term
    assert [d[0] for d in digits] == take(expand(xi), n)
    h, k = convergent_table(expand(xi), n - 1)
    for i in range(n):
        assert last_column(mat_product(mats[: i + 1])) == (k[i + 2], h[i + 2])


@settings(max_examples=50)
@given(surds())
def test_d2_agreement_random(x):
    n = 50
    try:
        digits, mats, _ = jpa_run(JPAState((eval_surd(x, 2048),)), n)
    except PrecisionExhausted:
        assume(False)
    assert [d[0] for d in digits] == take(expand(x), n)
    assert all(m.det() == -1 for m in mats)


@given(words)
def test_theta_equals_error_terms(w):
    xi = surd_from_word(w)
    n = 3 * len(w) + 4
    digits, mats, _ = jpa_run(JPAState((eval_surd(xi, 1024),)), n)
    seq = theta_sequence(mats, (-xi, QuadraticSurd(1)), n)
    eps = error_terms(xi, n - 1)
    assert list(seq.thetas) == eps[2:]


@given(words)
def test_d2_mu_is_rho(w):
    xi = surd_from_word(w)
    N = len(expand(xi).period)
    digits, mats, _ = jpa_run(JPAState((eval_surd(xi, 1024),)), N)
    B = (HPReal.from_value(-eval_surd(xi, 512).center, 512), HPReal.from_value(1, 512))
    rep = verify_eigen_theta(mats, B, 6, 1e-20)
    assert rep.eigen_ok and rep.theta_ok
    assert abs(rep.mu - eval_surd(rho(xi), 256).center) < Fraction(1, 10**20)


def test_det_unimodular_expansion():
    e = jpa_expand(CUBIC, 2, 30)
    assert all(m.det() == 1 for m in e.matrices)
    assert e.digits[:4] == ((3, 11), (2, 2), (1, 8), (1, 2))
    assert e.period_guess == (2, 2)
    assert e.as_dict()["period_guess"]["verified"] is False


@given(st.lists(st.lists(st.integers(0, 20), min_size=2, max_size=2), min_size=1, max_size=8))
def test_step_det_property(rows):
    # det = (-1)^(d-1) whatever the digits
    for a in rows:
        m = StepMatrix(((0, 0, 1), (1, 0, a[0]), (0, 1, a[1])))
        assert m.det() == 1
    m2 = StepMatrix(((0, 1), (1, rows[0][0])))
    assert m2.det() == -1


def test_cubic_tail_eigen():
    e = jpa_expand(CUBIC, 2, 12)
    tail = e.matrices[2:4]
    M = mat_product(tail)
    assert M == CUBIC_TAIL
    assert char_poly(M) == [1, -18, -9, -1]
    for idx in range(3):
        mu, B = left_eigenvector(M, idx, 256)
        rep = verify_eigen_theta(tail, B, 8, 1e-60)
        assert rep.eigen_ok and rep.theta_ok
        assert rep.theta_residual <= 10 * rep.eigen_residual
        assert abs(float(rep.mu) - float(mu.center)) < 1e-60


def test_contracting_theta_decay():
    e = jpa_expand(CUBIC, 2, 12)
    tail = e.matrices[2:4]
    mu, B = left_eigenvector(mat_product(tail), 0, 256)
    rep = verify_eigen_theta(tail, B, 10, 1e-60)
    th = [abs(float(t)) for t in rep.thetas]
    assert all(th[i + 2] < th[i] for i in range(len(th) - 2))


def test_identity_matrix():
    eye = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    rep = verify_eigen_theta([eye], (Fraction(1), Fraction(2), Fraction(-3)), 5, 1e-12)
    assert rep.mu == 1 and rep.eigen_residual == 0
    assert len(set(rep.thetas)) == 1


def test_non_eigenvector_rejected():
    rep = verify_eigen_theta([CUBIC_TAIL], (1, 1, 1), 4, 1e-6)
    assert not rep.eigen_ok and rep.theta_ok is None


def test_char_poly():
    assert char_poly(((2, 1), (1, 0))) == [1, -2, -1]
    assert char_poly(((1, 0, 0), (0, 2, 0), (0, 0, 3))) == [1, -6, 11, -6]


@pytest.mark.parametrize("seed", range(10))
def test_random_unimodular_eigen(seed):
    rng = random.Random(seed)
    M = random_unimodular(rng, 3)
    assert StepMatrix(M).det() == 1
    w, v = np.linalg.eig(np.array(M, dtype=float).T)
    real = [i for i in range(3) if abs(w[i].imag) < 1e-12]
    i = min(real, key=lambda j: abs(w[j]))
    B = tuple(Fraction(float(x)) for x in v[:, i].real)
    rep = verify_eigen_theta([M], B, 6, 1e-6)
    assert rep.eigen_ok and rep.theta_ok
    assert rep.theta_residual <= 10 * rep.eigen_residual + 1e-300


def test_verify_domain():
    with pytest.raises(DomainError):
        verify_eigen_theta([], (1, 0), 3, 1e-6)
    with pytest.raises(DomainError):
        verify_eigen_theta([((1, 0), (0, 1))], (0, 0), 3, 1e-6)
