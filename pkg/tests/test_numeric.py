import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cferrsum.errors import DomainError, PrecisionExhausted
from cferrsum.exactnum import QuadraticSurd, compare
from cferrsum.numeric import (
    HPReal,
    bernoulli_even,
    const_gamma,
    const_ln2,
    const_pi,
    digamma,
    digamma_difference_series,
    eval_surd,
    exp_rational,
    ln_rational,
)

from strategies import surd_pairs, surds

# published / mpmath (80 digits) reference values, truncated
PI = "3.141592653589793238462643383279502884197169399375105820974944592307816"
LN2 = "0.6931471805599453094172321214581765680755001343602552541206800094933936"
GAMMA = "0.5772156649015328606065120900824024310421593359399235988057672348848677"
PSI_1_3 = "-3.13203378002080632299641907428726885415542829672041806419275"
PSI_7_2 = "1.10315664064524318722569033366791109947350706200623255961954"
LN_10_3 = "1.20397280432593599262274621776183850295361093080602352429863"
EXP_M7_5 = "0.246596963941606476939861239833767633064283774241451489246568"
PHI_DIGITS = "1.6180339887498948482045868343656381177203091798057628621354486227"


def agrees(x: HPReal, ref: str, digits: int) -> bool:
    """The enclosure is consistent with ``ref`` and pins ``digits`` decimals."""
    q = Fraction(ref)
    slack = Fraction(1, 10 ** (len(ref.split(".")[1]) - 1))
    return abs(x.center - q) <= x.radius + slack and x.radius < Fraction(1, 10**digits)


@pytest.mark.parametrize("method", ["machin", "stormer"])
def test_pi(method):
    assert agrees(const_pi(256, method), PI, 70)


@pytest.mark.parametrize("method", ["atanh3", "atanh_triple"])
def test_ln2(method):
    assert agrees(const_ln2(256, method), LN2, 70)


def test_pi_methods_overlap():
    assert const_pi(512, "machin").overlaps(const_pi(512, "stormer"))
    assert const_ln2(512, "atanh3").overlaps(const_ln2(512, "atanh_triple"))


def test_gamma():
    assert agrees(const_gamma(256), GAMMA, 60)


def test_unknown_method():
    with pytest.raises(DomainError):
        const_pi(64, "guess")


@pytest.mark.parametrize("x, ref", [(Fraction(1, 3), PSI_1_3), (Fraction(7, 2), PSI_7_2)])
def test_digamma_values(x, ref):
    assert agrees(digamma(x, 200), ref, 55)


def test_digamma_one_is_minus_gamma():
    assert digamma(1, 256).overlaps(-const_gamma(256))


def test_digamma_quarter_difference_is_pi():
    d = digamma(Fraction(3, 4), 256) - digamma(Fraction(1, 4), 256)
    assert d.overlaps(const_pi(256))
    assert float(abs((d - const_pi(256)).center)) < 1e-30


def test_digamma_half_difference_is_2ln2():
    d = digamma(1, 200) - digamma(Fraction(1, 2), 200)
    assert d.overlaps(2 * const_ln2(200))


@pytest.mark.parametrize("x", [0, -1, Fraction(-1, 2)])
def test_digamma_domain(x):
    with pytest.raises(DomainError):
        digamma(x, 64)


@given(st.fractions(min_value=Fraction(1, 50), max_value=60, max_denominator=50))
def test_digamma_recurrence(x):
    lhs = digamma(x + 1, 128) - digamma(x, 128)
    assert lhs.contains(1 / x)


@given(
    st.fractions(min_value=Fraction(1, 10), max_value=5, max_denominator=12),
    st.fractions(min_value=Fraction(1, 10), max_value=5, max_denominator=12),
)
def test_digamma_difference_oracle(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    total, bound = digamma_difference_series(lo, hi, 400)
    d = digamma(hi, 64) - digamma(lo, 64)
    # positive summands: the truncated sum undershoots by at most the bound
    assert total <= d.hi and d.lo <= total + bound


@pytest.mark.parametrize("a, b", [(Fraction(1, 4), Fraction(3, 4)), (Fraction(1, 2), Fraction(1)), (Fraction(5, 3), Fraction(7, 3))])
def test_digamma_difference_coarse(a, b):
    # float summation with K = 10**6 terms; tail (b-a)/K < 1e-6
    K = 10**6
    fa, fb = float(a), float(b)
    total = math.fsum(1 / (k + fa) - 1 / (k + fb) for k in range(K))
    d = float((digamma(b, 64) - digamma(a, 64)).center)
    assert -1e-9 <= d - total <= float(b - a) / (K + float(a) - 1) + 1e-9
    assert abs(d - total) < 1e-6


def test_ln_exp_values():
    assert agrees(ln_rational(Fraction(10, 3), 200), LN_10_3, 55)
    assert agrees(exp_rational(Fraction(-7, 5), 200), EXP_M7_5, 55)
    assert ln_rational(1, 64).contains(0)
    with pytest.raises(DomainError):
        ln_rational(0, 64)


@given(st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=1000))
def test_exp_ln_inverse(q):
    back = exp_rational(q, 128).ln()
    assert back.contains(q)


def test_bernoulli():
    assert bernoulli_even(5) == (1, Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30))


def test_eval_surd_phi():
    x = eval_surd(QuadraticSurd(1, 1, 2, 5), 200)
    assert agrees(x, PHI_DIGITS, 55)
    assert x.radius <= Fraction(2) ** (2 - 200) * x.center


def test_eval_rational_exact():
    x = eval_surd(QuadraticSurd(3, 0, 2), 64)
    assert x.center == Fraction(3, 2) and x.radius == 0


def test_eval_surd_prec_floor():
    with pytest.raises(DomainError):
        eval_surd(QuadraticSurd(1, 1, 1, 2), 16)


@given(surds(), st.sampled_from([32, 64, 200]))
def test_eval_surd_relative_radius(x, prec):
    v = eval_surd(x, prec)
    assert v.radius <= Fraction(2) ** (2 - prec) * abs(v.center)
    assert v.lo.__floor__() <= x.floor() <= v.hi.__floor__()


@given(surd_pairs())
def test_eval_respects_compare(pair):
    x, y = pair
    ex, ey = eval_surd(x, 96), eval_surd(y, 96)
    if ex.certainly_lt(ey):
        assert compare(x, y) < 0
    if ex.certainly_gt(ey):
        assert compare(x, y) > 0


@given(surds())
def test_enclosure_refines(x):
    lo, hi = eval_surd(x, 64), eval_surd(x, 128)
    assert lo.lo <= hi.lo and hi.hi <= lo.hi


rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


@given(rationals, rationals)
def test_arithmetic_contains_exact(p, q):
    x, y = HPReal.from_value(p, 64), HPReal.from_value(q, 64)
    assert (x + y).contains(p + q)
    assert (x - y).contains(p - q)
    assert (x * y).contains(p * q)
    if q != 0:
        assert (x / y).contains(p / q)


@given(st.fractions(min_value=Fraction(1, 10**6), max_value=10**6, max_denominator=10**6))
def test_sqrt_contains(q):
    r = HPReal.from_value(q, 96).sqrt()
    assert (r * r).contains(q)


def test_sign_undecided():
    z = HPReal(0, 5, -10, 64)
    with pytest.raises(PrecisionExhausted):
        z.sign()
    with pytest.raises(PrecisionExhausted):
        HPReal.from_value(1, 64) / z


def test_to_decimal_prints_only_guaranteed_digits():
    x = HPReal.from_value(Fraction(1, 3), 64).widen(Fraction(1, 10**6))
    s = x.to_decimal()
    assert s.startswith("0.33333") and len(s) <= len("0.3333333")
    assert const_pi(128).to_decimal(21) == "3.14159265358979323846"


@given(st.fractions(min_value=-100, max_value=100, max_denominator=1000))
def test_floor_exact(q):
    assert HPReal.from_value(q, 64).floor() == q.__floor__()
