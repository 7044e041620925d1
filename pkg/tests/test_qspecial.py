from fractions import Fraction as Fr

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from qblowup import qspecial as qs
from qblowup.exact import QSeries

PREC = 40
TOL = mp.mpf(10) ** (-PREC + 2)

v_st = st.fractions(min_value=Fr(1, 50), max_value=Fr(49, 50), max_denominator=997)
q_st = st.fractions(min_value=Fr(1, 10), max_value=Fr(9, 10), max_denominator=97)


# ---------------------------------------------------------------- finite products

def test_qpoch_examples():
    v, q = Fr(2, 7), Fr(3, 5)
    assert qs.qpoch(v, q, 0) == 1
    assert qs.qpoch(v, q, 1) == 1 - v
    assert qs.qpoch(v, q, -1) == 1 / (1 - v / q)
    with pytest.raises(ZeroDivisionError):
        qs.qpoch(q, q, -1)


def test_c_n_examples():
    v, q1, q2 = Fr(5, 11), Fr(2, 3), Fr(3, 4)
    assert qs.c_n(v, 0, q1, q2) == 1
    assert qs.c_n(v, 1, q1, q2) == 1
    assert qs.c_n(v, 2, q1, q2) == 1 - 1 / (q1 * q2 * v)
    assert qs.c_n(v, -1, q1, q2) == 1 - 1 / v
    with pytest.raises(ValueError):
        qs.c_n(v, Fr(1, 2), q1, q2)
    with pytest.raises(ZeroDivisionError):
        qs.c_n(0, 2, q1, q2)


def test_g_n_examples():
    v, g = Fr(5, 11), Fr(7, 3)
    assert qs.g_n(v, 0, g) == 1
    assert qs.g_n(v, 1, g) == 1
    assert qs.g_n(v, 2, g) == -v * g ** -2
    assert qs.g_n(v, -1, g) == -v
    with pytest.raises(ValueError):
        qs.g_n(v, Fr(3, 2), g)


@settings(max_examples=30, deadline=None)
@given(v_st, q_st, q_st, st.integers(-4, 5))
def test_c_n_matches_oracle(v, q1, q2, n):
    assert qs.c_n(v, n, q1, q2) == oracles.c_n(v, n, q1, q2)


def _point(g, q1, v):
    # gamma rational: q2 is fixed by gamma^2 = 1/(q1 q2)
    return q1, 1 / (g * g * q1), v


coeff_point = st.tuples(st.fractions(min_value=Fr(11, 10), max_value=4, max_denominator=13),
                        st.fractions(min_value=Fr(1, 10), max_value=Fr(9, 10), max_denominator=19),
                        st.integers(1, 10 ** 6).map(lambda k: Fr(k, 1000003)))


@settings(max_examples=100, deadline=None)
@given(coeff_point)
def test_c_n_symmetry(pt):
    g, q1, v = pt
    q1, q2, v = _point(g, q1, v)
    for n in range(-3, 4):
        a = (-v) ** Fr(-(n * (n - 1) // 2)) * g ** Fr(-(n * (n - 1) * (n + 1) // 3)) * qs.c_n(1 / v, n, q1, q2)
        assert a == qs.g_n(1 / v, n, g) * qs.c_n(1 / v, n, q1, q2)
        assert a == qs.c_n(g * g * v, -n + 1, q1, q2)
        assert a == qs.c_n(v, n, 1 / q1, 1 / q2)


@settings(max_examples=100, deadline=None)
@given(coeff_point)
def test_c_n_recurrence(pt):
    g, q1, v = pt
    q1, q2, v = _point(g, q1, v)
    for n in range(-3, 4):
        rhs = g ** (n * (n + 1)) * qs.qpoch(v, q1, n + 1) * qs.qpoch(v, q2, n + 1) / (v ** (2 * n + 1) * (v - 1))
        assert qs.c_n(g * g * v, n + 2, q1, q2) == rhs * qs.c_n(v, n, q1, q2)


@settings(max_examples=100, deadline=None)
@given(coeff_point)
def test_c_n_ratio_identity(pt):
    g, q1, v = pt
    q1, q2, v = _point(g, q1, v)
    for n in range(-3, 4):
        assert qs.c_n(1 / (v * q1), -n + 1, q1, q2) / qs.c_n(1 / v, -n, q1, q2) == 1 / qs.qpoch(v, q2, n)


# ---------------------------------------------------------------- float regime

def test_gamma_q_recurrence_and_normalisation():
    with mp.workdps(PREC):
        q, u = mp.mpf("0.37"), mp.mpf("0.813")
        assert abs(qs.gamma_q(1, q) - 1) < TOL
        assert abs(qs.gamma_q(u + 1, q) / qs.gamma_q(u, q) - qs.q_number(u, q)) < TOL
        assert abs(qs.barnes_gq(u + 1, q) / qs.barnes_gq(u, q) - qs.gamma_q(u, q)) < TOL
    with pytest.raises(ValueError):
        qs.gamma_q(u, 1.5)


def test_theta_product_and_sum_agree():
    with mp.workdps(PREC):
        for z, q in (("0.3", "0.5"), ("-1.7", "0.21"), ("2.5", "0.6")):
            a, b = qs.theta(mp.mpf(z), mp.mpf(q)), qs.theta_sum(mp.mpf(z), mp.mpf(q))
            assert abs(a - b) < TOL * max(1, abs(a))


def test_dpoch_exponential_form():
    with mp.workdps(PREC):
        for u, q1, q2 in (("0.17", "0.3", "0.55"), ("-0.4", "0.6", "0.2")):
            u, q1, q2 = mp.mpf(u), mp.mpf(q1), mp.mpf(q2)
            assert abs(qs.dpoch(u, q1, q2) / qs.dpoch_exp(u, q1, q2) - 1) < TOL


def test_elliptic_gamma_shift():
    with mp.workdps(PREC):
        z, q1, q2 = mp.mpf("0.41"), mp.mpf("0.3"), mp.mpf("0.55")
        lhs = qs.ell_gamma(q1 * z, q1, q2) / qs.ell_gamma(z, q1, q2)
        assert abs(lhs / qs.theta(z, q2) - 1) < TOL


def double_pochhammer_split(u, n, q1, q2, k=0):
    g = 1 / mp.sqrt(q1 * q2)
    a = qs.dpoch((q1 * q2) ** (-mp.mpf(k) / 2) * u, q1, q2)
    a /= qs.dpoch(q2 ** (-mp.mpf(k) / 2) * u * q1 ** n, q1, q2 / q1)
    a /= qs.dpoch(q1 ** (-mp.mpf(k) / 2) * u * q2 ** n, q1 / q2, q2)
    b = qs.dpoch(g ** k * u, q1, q2)
    b /= qs.dpoch(g ** k * u * q1 ** (n + mp.mpf(k) / 2), q1, q2 / q1)
    b /= qs.dpoch(g ** k * u * q2 ** (n + mp.mpf(k) / 2), q1 / q2, q2)
    return a, b


@pytest.mark.parametrize("n", range(-3, 4))
def test_double_pochhammer_splitting(n):
    tol = mp.mpf(10) ** -35
    with mp.workdps(PREC):
        q1, q2, u = mp.mpf("0.5"), mp.mpf("0.3"), mp.mpf("0.37")
        g = 1 / mp.sqrt(q1 * q2)
        a, _ = double_pochhammer_split(u, n, q1, q2)
        assert abs(a / qs.c_n(1 / u, -n, q1, q2) - 1) < tol
        ga = qs.ell_gamma(u, q1, q2) / (qs.ell_gamma(u * q1 ** n, q1, q2 / q1) * qs.ell_gamma(u * q2 ** n, q1 / q2, q2))
        assert abs(ga / qs.g_n(1 / u, -n, g) - 1) < tol
        for k in (-2, -1, 1, 2):
            a, b = double_pochhammer_split(u, n, q1, q2, k)
            assert abs(a / b - 1) < tol
            if k % 2 == 0:
                assert abs(a / qs.c_n(g ** -k / u, -n - k // 2, q1, q2) - 1) < tol


# ---------------------------------------------------------------- limits

def test_c_n_limit_trivial_orders():
    with mp.workdps(PREC):
        for n in (0, 1):
            assert abs(qs.c_n_limit(mp.mpf("0.37"), n, mp.mpf("0.3")) - 1) < TOL


def test_richardson_is_exact_on_quadratics():
    ds = [mp.mpf("0.1"), mp.mpf("0.05"), mp.mpf("0.02")]
    vals = [3 + 2 * d - 7 * d * d for d in ds]
    assert abs(qs.richardson(vals, ds) - 3) < mp.mpf(10) ** -30


# ---------------------------------------------------------------- 2phi1

def test_hypergeom_2phi1_against_oracle():
    a, b, c, q = Fr(2, 3), Fr(5, 7), Fr(3, 11), Fr(2, 5)
    z = QSeries(("z",), (17,), {(4,): 1})
    s = qs.hypergeom_2phi1(a, b, c, q, z)
    ref = oracles.phi21(a, b, c, q, 4)
    assert s.coeffs.get((0,)) == 1
    assert s.coeffs.get((4,)) == (1 - a) * (1 - b) / ((1 - c) * (1 - q))
    for k in range(5):
        assert s.coeffs.get((4 * k,), 0) == ref[k]
