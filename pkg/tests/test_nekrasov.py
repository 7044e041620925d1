from fractions import Fraction as Fr

import pytest

import oracles
from qblowup import kernel
from qblowup.exact import ParamPoint, make_param_point
from qblowup.nekrasov import f4_inst, f5_inst, f6_inst, higgs_check, standard_theory
from qblowup.tauqp6 import TauSpec, tau_theory
from qblowup.nekrasov import instanton_series

NAMES = ("theta0", "thetat", "sigma", "theta1", "thetainf")


def fr(x):
    return Fr(int(x.numerator), int(x.denominator))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_f4_matches_oracle(seed):
    p = make_param_point(seed)
    v = {k: fr(x) for k, x in p.values.items()}
    s = f4_inst(None, p, 3)
    ref = oracles.f4_coefficients(v["q1"] ** 2, v["q2"] ** 2, *(v[k] ** 2 for k in NAMES), 3)
    assert [fr(s.coeffs.get((4 * k,), 0)) for k in range(4)] == ref
    assert set(s.coeffs) <= {(0,), (4,), (8,), (12,)}


def test_f4_dump_order_one_has_two_lines():
    assert len(f4_inst(None, make_param_point(0), 1).dump().splitlines()) == 2


def test_self_dual_slice_matches_tau_theory():
    tp = make_param_point(0, "tau")
    spec = TauSpec("ref", (0, 0, 0, 0, 0), 0)
    got = instanton_series(tau_theory(spec, 0), tp, ("t",), (13,))
    vals = {k: tp[k] for k in NAMES}
    bp = ParamPoint(dict(vals, q1=tp["q"], q2=1 / tp["q"]))
    assert got == f4_inst(None, bp, 3)


@pytest.mark.parametrize("backend", kernel.available_backends())
def test_backends_agree(backend):
    p = make_param_point(1)
    kernel.clear_cache()
    ref = f5_inst(None, p, 2, 2)
    kernel.clear_cache()
    got = instanton_series(standard_theory(2), p, ("t", "1/y"), ref.trunc, backend=backend)
    assert got == ref
    kernel.clear_cache()


@pytest.mark.skipif("cython" not in kernel.available_backends(), reason="compiled kernel not built")
def test_cython_and_python_identical_f6():
    p = make_param_point(2)
    th = standard_theory(3)
    tr = (5, 5, 5)
    a = instanton_series(th, p, ("x/t", "t", "1/y"), tr, backend="python")
    b = instanton_series(th, p, ("x/t", "t", "1/y"), tr, backend="cython")
    assert a.coeffs == b.coeffs


def test_f5_and_f6_have_unit_constant_term():
    p = make_param_point(0)
    assert f5_inst(None, p, 1, 1).constant_term() == 1
    assert f6_inst(None, p, 1, 1, 1).constant_term() == 1


@pytest.mark.parametrize("kind", ["right-identity", "left-identity", "middle-identity"])
@pytest.mark.parametrize("seed", [0, 1])
def test_higgs_identities(kind, seed):
    rep = higgs_check(kind, make_param_point(seed), 2)
    assert rep["status"] == "PASS", rep


def test_higgs_unknown_kind():
    with pytest.raises(ValueError):
        higgs_check("no-such", make_param_point(0), 1)
