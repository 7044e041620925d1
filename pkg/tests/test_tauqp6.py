from fractions import Fraction as Fr

import mpmath as mp
import pytest

from qblowup.exact import make_param_point
from qblowup.tauqp6 import (BILINEAR, GArg, TAU_SPECS, UnbalancedRatio, bilinear_check, c_ratio, c_ratio_factors,
                            c_ratio_float, c_ratio_parts, c_ratio_split, gamma_float, rat_to_mpf, resolve_tau,
                            select_shift_convention, tau_series, y_consistency_check, y_series_s0)

P = make_param_point(0, "tau")


def test_c_ratio_trivial():
    u, v = GArg.make(Fr(1, 4), sigma=1), GArg.make(0, theta0=Fr(1, 2))
    assert c_ratio([u, v], [v, u], P) == 1
    assert c_ratio([], [], P) == 1


def test_c_ratio_shift_by_one():
    # G(u+1) G(v) / (G(u) G(v+1)) = Gamma(u) / Gamma(v) is not a pure
    # q-number product unless u and v share a class
    u, v = GArg.make(Fr(1, 4), sigma=1), GArg.make(0, theta0=Fr(1, 2))
    with pytest.raises(UnbalancedRatio):
        c_ratio_factors([u + 1, v], [u, v + 1])
    _, gammas = c_ratio_parts([u + 1, v], [u, v + 1])
    assert sorted(gammas.values()) == [-1, 1]


def test_c_ratio_same_class():
    # G(u+2) G(u) / G(u+1)^2 = Gamma(u+1) / Gamma(u) = [u]
    u = GArg.make(Fr(1, 4), sigma=1)
    assert c_ratio_factors([u + 2, u], [u + 1, u + 1]) == {u: 1}


@pytest.mark.parametrize("seed", [0, 1])
def test_c_ratio_against_barnes(seed):
    p = make_param_point(seed, "tau")
    u, v = GArg.make(Fr(1, 4), sigma=1), GArg.make(Fr(1, 2), theta0=Fr(1, 2), thetat=Fr(-1, 2))
    nums, dens = [u + 3, v + -1, u + -1], [u + 1, v + 1, u]
    val, gammas = c_ratio_split(nums, dens, p)
    with mp.workdps(45):
        direct = c_ratio_float(nums, dens, p, 40)
        split = rat_to_mpf(val) * gamma_float(gammas, p, 40)
        assert abs(direct / split - 1) < mp.mpf(10) ** -35


def test_n_zero_order_zero_is_one():
    ts = tau_series(TAU_SPECS["tau1"], P, [0], 0)
    assert ts.coeffs == {(0, 0): 1}


def test_series_at_s_zero_keeps_only_n_zero():
    ts = tau_series(TAU_SPECS["tau1"], P, range(-2, 3), 2, s=0)
    assert {N for N, _ in ts.coeffs} == {0}


def test_resolve_tau_shifts():
    assert resolve_tau("tau7_").tshift == -1
    assert resolve_tau("tau8^").tshift == 1
    assert resolve_tau("tau7_", "plus").tshift == 1
    assert resolve_tau("tau1") == TAU_SPECS["tau1"]


@pytest.mark.parametrize("rel", sorted(k for k in BILINEAR if not k.startswith("_")))
@pytest.mark.parametrize("seed", [0, 1])
def test_bilinear_relations(rel, seed):
    rep = bilinear_check(rel, make_param_point(seed, "tau"), order=3, n_range=range(-2, 3))
    assert rep["status"] == "PASS", rep
    assert rep["residual_slots_checked"] > 0


def test_bilinear_detects_wrong_sign():
    saved = BILINEAR["B1"]
    (c0, p0), rest = saved[0], saved[1:]
    BILINEAR["_bad"] = [({0: (-1, c0[0][1])}, p0)] + rest
    try:
        assert bilinear_check("_bad", P, order=2)["status"] == "FAIL"
    finally:
        BILINEAR.pop("_bad")


def test_n_range_too_small():
    with pytest.raises(ValueError):
        bilinear_check("B1", P, order=3, n_range=[0])


def test_shift_convention_is_selected():
    rep = select_shift_convention(P)
    assert rep["selected"] == "minus"
    assert rep["results"] == {"minus": True, "plus": False}


def test_y_equations():
    rep = y_consistency_check(P, order=3)
    assert rep["status"] == "PASS", rep
    assert all(e["structural_match"] for e in rep["equations"].values())


def test_y_at_s_zero_starts_with_t():
    y = y_series_s0(P, order=2)
    assert y.constant_term() != 0
