from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linfcheck.series import (
    Series,
    g_series,
    lambert_w_series,
    nilcheck_one_boson,
    solve_f1,
    solve_g2,
    wronskian,
)

ORDER = 12


def rationals(max_num=6, max_den=4):
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def series_strategy(order=6, constant=None):
    head = st.just(constant) if constant is not None else rationals()
    return st.builds(
        lambda c0, tail: Series((Fraction(c0), *tail)),
        head,
        st.lists(rationals(), min_size=order, max_size=order),
    )


# -- arithmetic ---------------------------------------------------------------

def test_basic_identities():
    p = Series.x(ORDER)
    one = Series.one(ORDER)
    assert p.log1p().exp() == one + p
    assert (one + p).inverse() == Series(tuple(Fraction((-1) ** n) for n in range(ORDER + 1)))
    f = Series.from_coeffs([3, 1, 4, 1, 5])
    assert f.integral(0).derivative() == f
    assert f.derivative().order == f.order - 1
    assert f.integral(7).order == f.order + 1
    assert f.integral(7)[0] == 7


def test_alignment_to_smallest_order():
    a = Series.from_coeffs([1, 2, 3])
    b = Series.from_coeffs([1, 1])
    assert (a + b).order == 1
    assert (a * b).order == 1
    assert (a * b).coeffs == (Fraction(1), Fraction(3))


def test_argument_errors():
    p = Series.x(4)
    with pytest.raises(ValueError):
        p.inverse()
    with pytest.raises(ValueError):
        (1 + p).exp()
    with pytest.raises(ValueError):
        p.log()
    with pytest.raises(ValueError):
        (1 + p).log1p()
    with pytest.raises(ValueError):
        p.compose(1 + p)
    with pytest.raises(ValueError):
        Series.from_coeffs([1]).derivative()
    with pytest.raises(IndexError):
        p[9]


@given(series_strategy(), series_strategy(), series_strategy())
@settings(max_examples=50, deadline=None)
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(series_strategy(constant=0), series_strategy(constant=0))
@settings(max_examples=40, deadline=None)
def test_exp_is_a_homomorphism(a, b):
    assert (a + b).exp() == a.exp() * b.exp()


@given(series_strategy(constant=0))
@settings(max_examples=40, deadline=None)
def test_exp_log_round_trip(a):
    assert (1 + a).log().exp() == 1 + a


def test_compose_matches_substitution():
    outer = Series.from_coeffs([2, 1, 3, 0, 1])
    inner = Series.from_coeffs([0, 1, 1, 0, 0])
    direct = 2 + inner + 3 * inner * inner + inner * inner * inner * inner
    assert outer.compose(inner) == direct


# -- the one-variable pairing condition --------------------------------------

def _example_pair(order=32):
    p = Series.x(order)
    g1 = 1 + p
    g2 = (1 + p) * (1 - p.log1p())
    return g1, g2


def test_wronskian_antisymmetry_and_values():
    f = Series.from_coeffs([2, 3, 5, 7])
    assert wronskian(f, f).is_zero()
    assert wronskian(Series.one(4), Series.x(4)) == Series.constant(-1, 3)
    g1, g2 = _example_pair()
    assert wronskian(g1, g2) == (1 + Series.x(32)).truncate(31)


def test_nilcheck_values():
    g1, g2 = _example_pair()
    zero = Series.zero(32)
    assert nilcheck_one_boson(Series.constant(-1, 32), zero, g1, g2).is_zero()
    assert nilcheck_one_boson(zero, zero, zero, zero).is_zero()
    # residual -p when g2 is replaced by the constant 1
    bad = nilcheck_one_boson(
        Series.constant(-1, 32), zero, g1, Series.one(32)
    )
    assert bad == (-Series.x(32)).truncate(31)


def test_solve_f1_cases():
    g1, g2 = _example_pair()
    assert solve_f1(g1, g2) == Series.constant(-1, 31)
    assert solve_f1(g1, g1).is_zero()
    assert solve_f1(Series.one(8), Series.x(8)) == Series.constant(1, 7)
    with pytest.raises(ValueError):
        solve_f1(Series.x(8), Series.one(8))


def test_solve_g2_cases():
    g1, g2 = _example_pair(33)
    f1 = Series.constant(-1, 33)
    assert solve_g2(g1, f1, 1) == g2
    assert solve_g2(g1, Series.zero(33), 5) == 5 * g1
    with pytest.raises(ValueError):
        solve_g2(Series.x(8), Series.one(8))


def test_solvers_zero_the_residual_on_random_data():
    import random

    rng = random.Random(20250809)
    for _ in range(25):
        order = rng.randint(2, 8)
        g1 = Series(
            (Fraction(rng.choice([1, 2, -1, 3])),)
            + tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(order))
        )
        g2 = Series(
            tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(order + 1))
        )
        f1 = solve_f1(g1, g2)
        assert nilcheck_one_boson(f1, Series.zero(f1.order), g1, g2).is_zero()
        fr = Series(
            tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(order + 1))
        )
        g2b = solve_g2(g1, fr, Fraction(rng.randint(1, 3)))
        assert nilcheck_one_boson(fr, Series.zero(fr.order), g1, g2b).is_zero()


# -- the two inverse-function series ------------------------------------------

def test_lambert_w_series_coefficients():
    w = lambert_w_series(20)
    assert w[0] == 0
    assert w[1] == 1
    assert w[2] == Fraction(-1)  # (-2)^1 / 2!
    assert w[3] == Fraction(3, 2)  # (-3)^2 / 3!
    for n in range(1, 21):
        assert factorial(n) * w[n] == Fraction(-n) ** (n - 1)


def test_lambert_w_inverts_w_exp_w():
    w = lambert_w_series(20)
    assert w * w.exp() == Series.x(20)


def test_g_series_coefficients_and_identities():
    g = g_series(20)
    values = [factorial(m) * g[m] for m in range(5)]
    assert values == [1, 1, -1, 4, -27]
    w = lambert_w_series(20)
    assert g == w.exp()
    assert w * g == Series.x(20)
    # substituting back into the inverse function G ln(G) recovers the variable
    assert g * g.log() == Series.x(20)


def test_g_series_ode_residual():
    g = g_series(24)
    p = Series.x(24)
    assert (g.derivative() * (g + p) - g).is_zero()


def test_w_coefficient_ratio_near_e():
    w = lambert_w_series(41)
    ratio = abs(w[41] / w[40])
    e = 2.718281828459045
    assert abs(float(ratio) - e) / e < 0.05
