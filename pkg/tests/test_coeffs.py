import random
from fractions import Fraction as Fr

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from qblowup.blowup import load_catalog
from qblowup.coeffs import (ExactContext, FloatContext, OffSupport, a4_coeff, a4_index_integrality,
                            a5_index_integrality, c4_coeff, c4_limit_check, c4_limit_coeff, c5_coeff,
                            c_indices_c4, c_n_limit_check, extra_ratio, one_loop_ratio, reduction_final_node,
                            reduction_middle_node)
from qblowup.exact import Monomial, make_param_point
from qblowup.qspecial import IndexError_
from qblowup.nekrasov import half_unit

NAMES = ("theta0", "thetat", "sigma", "theta1", "thetainf")
U = tuple(half_unit(n) for n in NAMES)
T, Y = Monomial.unit("t", 4), Monomial.unit("y", 4)


def fr(x):
    return Fr(int(x.numerator), int(x.denominator))


def ctx_at(seed, **extra):
    p = make_param_point(seed)
    if extra:
        p = p.with_values(**extra)
    return ExactContext(p)


# ---------------------------------------------------------------- C4, C5, A4

def test_trivial_tuples():
    ctx = ctx_at(0)
    assert c4_coeff(ctx, U, (-1, 0, 0, -1), 0, 0) == (1, 0)
    U5 = U[:3] + (half_unit("theta1"), half_unit("sigma1"), half_unit("thetay"), half_unit("thetainf"))
    assert c5_coeff(ctx, U5, (-1, 0, -1, -1, 0), (0, 0), (0, 0)) == (1, (0, 0))
    # the zero tuple lives on half-integer n only
    with pytest.raises(IndexError_):
        c4_coeff(ctx, U, (0, 0, 0, 0), 0, 0)


def test_zero_f_identity():
    ctx = ctx_at(1)
    a, ea = c4_coeff(ctx, U, (0, 0, 0, 0), Fr(1, 2), 0)
    b, eb = c4_coeff(ctx, U, (0, 0, 0, 0), Fr(-1, 2), 0)
    assert ea == eb == Fr(1, 4)
    assert a + b == 0


def test_parity_violation_is_an_error():
    with pytest.raises(ValueError):
        c4_coeff(ctx_at(0), U, (1, 0, 0, 0), 0, 0)


def test_sigma_reflection():
    # flipping both sigma and n leaves C4 unchanged: the sum over the sign
    # of n absorbs it and the prefactor depends on the product only
    p = make_param_point(2)
    flipped = ExactContext(p.with_values(sigma=1 / p["sigma"]))
    ctx = ExactContext(p)
    for jj, n, d in (((-1, 0, 0, -1), 1, 0), ((0, 1, 1, 0), 1, -1), ((0, 0, 0, 0), Fr(3, 2), 1)):
        a, _ = c4_coeff(ctx, U, jj, n, d)
        b, _ = c4_coeff(flipped, U, jj, -n, d)
        assert a == b, (jj, n, d)


@st.composite
def c4_sample(draw):
    j1, j2, j3, j4 = (draw(st.integers(-2, 2)) for _ in range(4))
    nu = Fr((1 + j1 + j2) % 2, 2)
    if (j1 + j2 - j3 - j4) % 2:
        j4 += 1
    n = nu + draw(st.integers(-2, 2))
    return (j1, j2, j3, j4), n, draw(st.integers(-2, 2)), draw(st.integers(0, 5))


@settings(max_examples=100, deadline=None)
@given(c4_sample())
def test_c4_dual_evaluator(sample):
    jj, n, d, seed = sample
    p = make_param_point(seed)
    v = {k: fr(x) for k, x in p.values.items()}
    th = {"0": v["theta0"], "t": v["thetat"], "s": v["sigma"], "1": v["theta1"], "i": v["thetainf"]}
    got, e = c4_coeff(ExactContext(p), U, jj, n, d)
    assert e == n * n
    assert fr(got) == oracles.c4(v["q1"], v["q2"], th, jj, n, d)


def test_parity_soundness_over_catalog():
    for rec in load_catalog(["A1"]):
        for k in range(-3, 4):
            n = rec.nu[0] + k
            assert all(Fr(i).denominator == 1 for i in c_indices_c4(rec.j, n)), rec.record_id


def test_a4_small_values():
    ctx = ctx_at(0, t=Fr(1, 3))
    assert not a4_index_integrality((0, 0, 0, 0), 0, 0)
    assert a4_index_integrality((-1, 0, 0, -1), 0, 0)
    assert a4_coeff(ctx, U, (-1, 0, 0, -1), 0, 0, T) == 1
    # at d = 1 only the c-factor in t Ut^2 survives
    p = ctx.point
    assert a4_coeff(ctx, U, (-1, 0, 0, -1), 0, 1, T) == 1 / (1 - p["t"] ** 4 * p["thetat"] ** 4)


# ---------------------------------------------------------------- float identities

def float_setup(q1="0.45", q2="0.62", thetas=("0.13", "0.21", "0.17", "0.29", "0.11")):
    q1, q2 = mp.mpf(q1), mp.mpf(q2)
    ctx = FloatContext({"q1": mp.root(q1, 4), "q2": mp.root(q2, 4)}, prec=40)
    Uf = tuple(q1 ** (mp.mpf(x) / 2) for x in thetas)
    return ctx, Uf


@pytest.mark.parametrize("jj,n,d", [((-1, 0, 0, -1), 0, 0), ((-1, 0, 0, -1), 1, 0), ((0, 1, 1, 0), 1, -1),
                                    ((0, 0, 0, 0), Fr(1, 2), 0), ((1, 0, 1, 0), -1, 1)])
def test_one_loop_ratio_identity(jj, n, d):
    with mp.workdps(40):
        ctx, Uf = float_setup()
        lhs, rhs = one_loop_ratio(ctx, Uf, jj, n, d)
        assert abs(lhs / rhs - 1) < mp.mpf(10) ** -35


@pytest.mark.parametrize("jj,d", [((-1, 0, 0, -1), 0), ((0, 1, 1, 0), -1), ((0, -1, 1, 0), 1), ((1, 0, 1, 0), 0)])
def test_extra_ratio_identity(jj, d):
    with mp.workdps(40):
        ctx, Uf = float_setup()
        lhs, rhs = extra_ratio(ctx, Uf, jj, d, mp.mpf("0.07"))
        assert abs(lhs / rhs - 1) < mp.mpf(10) ** -35


# ---------------------------------------------------------------- reductions

def _final_tuple(rng, on):
    while True:
        h = rng.choice([1, -1])
        j = [rng.randint(-2, 2) for _ in range(4)]
        n1 = Fr(rng.randint(-4, 4), 2)
        n2 = Fr(j[3], 2) if on else Fr(rng.randint(-4, 4), 2)
        if not on and Fr(j[3]) == 2 * n2:
            continue
        if a5_index_integrality((j[0], j[1], j[2], 2, j[3] - h), (n1, n2), None):
            return tuple(j), (n1, n2), h


def _middle_tuple(rng, on):
    while True:
        h = rng.choice([1, -1])
        j = [rng.randint(-2, 2) for _ in range(4)]
        n2 = Fr(rng.randint(-4, 4), 2)
        n1 = n2 + Fr(h, 2) if on else Fr(rng.randint(-4, 4), 2)
        if not on and n1 == n2 + Fr(h, 2):
            continue
        if a5_index_integrality((j[0], j[1], 2, j[2], j[3]), (n1, n2), None):
            return tuple(j), (n1, n2), h


def run_reductions(count, seed=11):
    """``count`` on-support and ``count`` off-support samples of each kind."""
    rng = random.Random(seed)
    out = {"final-on": 0, "final-off": 0, "middle-on": 0, "middle-off": 0, "failures": []}
    for i in range(count):
        for on in (True, False):
            ctx = ctx_at(i % 7, t=Fr(rng.randint(1, 50), 53), y=Fr(rng.randint(1, 50), 47))
            jj, n, h = _final_tuple(rng, on)
            d, r = rng.randint(-1, 1), rng.randint(-1, 1)
            lhs, rhs = reduction_final_node(ctx, U, jj, n, d, r, h, T, Y)
            ok = lhs == rhs and (on or lhs == 0)
            out["final-on" if on else "final-off"] += ok
            if not ok:
                out["failures"].append(("final", jj, n, d, r, h))
            jj, n, h = _middle_tuple(rng, on)
            dd = (rng.randint(-1, 1), rng.randint(-1, 1))
            lhs, rhs = reduction_middle_node(ctx, U, jj, n, dd, h, (T, Y ** -1))
            ok = lhs == rhs and (on or lhs == 0)
            out["middle-on" if on else "middle-off"] += ok
            if not ok:
                out["failures"].append(("middle", jj, n, dd, h))
    return out


def test_reductions_on_and_off_support():
    res = run_reductions(12)
    assert not res["failures"], res["failures"]


def test_reduction_strict_mode():
    ctx = ctx_at(0, t=Fr(1, 3), y=Fr(2, 5))
    with pytest.raises(OffSupport):
        reduction_final_node(ctx, U, (0, 0, 0, 0), (0, 1), 0, 0, 1, T, Y, strict=True)
    with pytest.raises(OffSupport):
        reduction_middle_node(ctx, U, (0, 0, 0, 0), (0, 0), (0, 0), 1, (T, Y ** -1), strict=True)


def test_reduction_scales_with_q1():
    # the same on-support tuple at two q1 values: both sides track each other
    rng = random.Random(3)
    jj, n, h = _final_tuple(rng, True)
    for q1 in (Fr(9, 13), Fr(11, 17)):
        ctx = ctx_at(0, q1=q1, t=Fr(1, 3), y=Fr(2, 5))
        lhs, rhs = reduction_final_node(ctx, U, jj, n, 0, 0, h, T, Y)
        assert lhs == rhs


# ---------------------------------------------------------------- limits

def test_c4_limit_zero_tuple_is_constant_block():
    with mp.workdps(40):
        th = ("0.13", "0.21", "0.17", "0.29", "0.11")
        a = c4_limit_coeff(th, (0, 0, 0, 0), 0, 0, "0.3", "0.2")
        b = c4_limit_coeff(th, (0, 0, 0, 0), 0, 0, "0.3", "0.05")
        assert abs(a / b - 1) < mp.mpf(10) ** -35


def test_c_n_limit_against_extrapolation():
    for n in range(-2, 4):
        assert c_n_limit_check("0.37", n, "0.3")["rel_error"] <= 1e-6


def test_c4_limit_against_extrapolation():
    th = ("0.13", "0.21", "0.17", "0.29", "0.11")
    for jj, n, d in (((-1, 0, 0, -1), 1, 0), ((0, 1, 1, 0), 1, -1), ((0, 0, 0, 0), Fr(3, 2), 1)):
        assert c4_limit_check(th, jj, n, d, "0.3", "0.3")["rel_error"] <= 1e-6
