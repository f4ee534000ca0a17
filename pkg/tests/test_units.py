import random
from fractions import Fraction

import pytest
from hypothesis import given

from cferrsum.cfrac import expand, is_purely_periodic, surd_from_word
from cferrsum.errors import DomainError
from cferrsum.exactnum import QuadraticSurd
from cferrsum.suites import TABLE, random_surds
from cferrsum.units import (
    fundamental_unit,
    pell_solutions,
    product_complete_quotients,
    unit_periodicity_equivalence,
)

from strategies import surds_above_one, words

PHI = QuadraticSurd(1, 1, 2, 5)


@pytest.mark.parametrize("word", list(TABLE))
def test_table_units(word):
    u, n = TABLE[word]
    rep = fundamental_unit(surd_from_word(word))
    assert rep.u == u and rep.norm == n
    assert rep.period == len(word) and rep.fundamental is True


def test_unit_requires_pure_period():
    with pytest.raises(DomainError):
        fundamental_unit(QuadraticSurd(0, 1, 1, 2))


def test_repetition():
    rep = fundamental_unit(surd_from_word((2,)), repeat=2)
    assert rep.u == QuadraticSurd(3, 2, 1, 2) and rep.norm == 1 and rep.fundamental is False
    assert product_complete_quotients(surd_from_word((2,)), repeat=2) == QuadraticSurd(3, 2, 1, 2)


def test_non_squarefree_radicand_not_asserted():
    # (2 + sqrt(8))/2 = 1 + sqrt(2) written over D = 8
    xi = QuadraticSurd(2, 1, 2, 8)
    assert fundamental_unit(xi).fundamental is None


def test_product_examples():
    assert product_complete_quotients(PHI) == PHI
    assert product_complete_quotients(surd_from_word((1, 2))) == QuadraticSurd(2, 1, 1, 3)


@given(words)
def test_product_equals_unit(w):
    xi = surd_from_word(w)
    assert product_complete_quotients(xi) == fundamental_unit(xi).u


@given(words)
def test_unit_norm_and_size(w):
    rep = fundamental_unit(surd_from_word(w))
    assert rep.u > 1
    assert rep.u.norm() == (-1) ** rep.period


@pytest.mark.parametrize("word", list(TABLE))
def test_pell_residuals(word):
    sols = pell_solutions(surd_from_word(word), 10)
    N = len(word)
    assert (sols[0].x, sols[0].y) == (1, 0)
    for s in sols:
        assert s.residual == (-1) ** (s.n * N) == s.rhs


def test_pell_examples():
    s = pell_solutions(surd_from_word((2,)), 1)[1]
    assert (s.x, s.y, s.residual) == (1, 1, -1)
    s = pell_solutions(surd_from_word((1, 2)), 1)[1]
    assert (s.x, s.y, s.residual) == (2, 1, 1)
    s = pell_solutions(surd_from_word((2, 4)), 2)[2]
    assert (s.x, s.y) == (49, 20)


def test_pell_half_integral_flagged():
    sols = pell_solutions(PHI, 6)
    flags = [s.integral for s in sols]
    # phi^n has integral coordinates exactly when 3 | n
    assert flags == [True, False, False, True, False, False, True]
    assert sols[1].x == Fraction(1, 2) and sols[3].x == 2 and sols[3].y == 1


def test_equivalence_examples():
    r = unit_periodicity_equivalence(QuadraticSurd(1, 1, 1, 2), 1)
    assert r.is_unit and r.galois
    r = unit_periodicity_equivalence(QuadraticSurd(0, 1, 1, 2), 1)
    assert r.u == QuadraticSurd(0, 1, 1, 2) and r.norm == -2 and not r.is_unit and not r.galois
    r = unit_periodicity_equivalence(PHI, 3)
    assert r.u == PHI**3 and r.norm == -1 and r.galois


def test_equivalence_domain():
    with pytest.raises(DomainError):
        unit_periodicity_equivalence(QuadraticSurd(1, -1, 2, 5))
    with pytest.raises(DomainError):
        unit_periodicity_equivalence(QuadraticSurd(3))


def test_equivalence_seeded_sample():
    surds = random_surds(random.Random(0), 500)
    assert all(unit_periodicity_equivalence(x).agree for x in surds)


@given(surds_above_one())
def test_equivalence_multiple_of_period(x):
    N = len(expand(x).period)
    r = unit_periodicity_equivalence(x, 2 * N)
    if r.galois:
        assert r.is_unit


@pytest.mark.parametrize(
    "x",
    [QuadraticSurd(3, 1, 2, 5), QuadraticSurd(6, 1, 4, 20), QuadraticSurd(7, 1, 6, 13)],
)
def test_equivalence_counterexamples(x):
    # with N = 1 the candidate unit is xi itself, so a norm +-1 number that
    # is not reduced breaks the converse direction
    r = unit_periodicity_equivalence(x)
    assert r.N == 1 and r.is_unit and not r.galois
    assert not is_purely_periodic(x)
