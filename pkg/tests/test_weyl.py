from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from qblowup import weyl
from qblowup.blowup import load_catalog
from qblowup.exact import make_param_point

A1 = load_catalog(["A1"])
A1_TUPLES = {tuple(r.j) + (r.d,) for r in A1}
A2_REPS = {tuple(r.j) + (r.d, r.r) for r in load_catalog(["A2-general"])}

a1_tuple = st.tuples(*[st.integers(-3, 3)] * 5)
a2_tuple = st.tuples(*[st.integers(-3, 3)] * 7)


def test_s3_example():
    assert weyl.apply_a1("s3", (0, -1, 0, -1, 1)) == (0, 0, 1, -1, -1)


def test_sigma_swaps_j2_j3():
    assert weyl.apply_a1("sigmaS", (1, 2, 3, 4, 5)) == (1, 3, 2, 4, 5)


def test_n_shift_keeps_parity_class():
    # the simple reflections carry n along; sigmaS has no n-map of its own
    # and its images get their parity from the tuple, like any catalog row
    for rec in A1:
        src = tuple(rec.j) + (rec.d,)
        for g in weyl.D5_SIMPLE:
            img, n = weyl.apply_a1(g, src, rec.nu[0])
            assert (1 + img[0] + img[1]) % 2 == (2 * n) % 2


@settings(max_examples=100, deadline=None)
@given(a1_tuple)
def test_a1_generators_are_involutions(t):
    if (t[0] + t[1] + t[2] + t[3]) % 2:
        return  # s2 needs the even sum that every catalog tuple has
    for g in weyl.D5_EXTENDED:
        assert weyl.apply_a1(g, weyl.apply_a1(g, t)) == t


@settings(max_examples=100, deadline=None)
@given(a2_tuple)
def test_a2_generators_are_involutions(t):
    for g in weyl.A2_EXTENDED:
        assert weyl.apply_a2(g, weyl.apply_a2(g, t)) == t


def test_apply_generator_dispatch():
    assert weyl.apply_generator("s1", (1, 0, 0, 0, 0)) == (-1, 0, 0, 0, 0)
    assert weyl.apply_generator("t2", (0, 0, 0, 0, 1, 0, 0)) == (0, 0, 0, 0, -1, 0, 0)
    with pytest.raises(ValueError):
        weyl.apply_generator("s1", (1, 2, 3))


def test_orbit_bound():
    with pytest.raises(weyl.OrbitTooLarge):
        weyl.orbit((0, 1, 0, -1, 0), weyl.D5_EXTENDED, bound=5)


# ---------------------------------------------------------------- A1 structure

def test_a1_catalog_is_a_union_of_orbits():
    orbs = weyl.orbits(A1_TUPLES, weyl.D5_EXTENDED)
    assert sorted(len(o) for o in orbs) == [1, 10, 32, 40]
    assert set().union(*orbs) == A1_TUPLES


def test_a1_orbit_highest_weights():
    rep = {r["size"]: r["highest-weight"] for r in weyl.orbit_report(weyl.orbits(A1_TUPLES, weyl.D5_EXTENDED),
                                                                     weyl.a1_labels)}
    assert rep[40] == [[0, 1, 0, 0, 0]]
    assert rep[10] == [[1, 0, 0, 0, 0]]
    assert rep[32] == [[0, 0, 0, 0, 1], [0, 0, 0, 1, 0]]
    assert rep[1] == [[0, 0, 0, 0, 0]]


def test_a1_characters():
    # the 40-orbit is the adjoint minus its five zero weights
    dec = {len(o): weyl.character_decompose([weyl.a1_labels(t) for t in o], weyl.D5)
           for o in weyl.orbits(A1_TUPLES, weyl.D5_EXTENDED)}
    assert dec[40] == {(0, 1, 0, 0, 0): 1, (0, 0, 0, 0, 0): -5}
    assert dec[32] == {(0, 0, 0, 1, 0): 1, (0, 0, 0, 0, 1): 1}
    assert dec[10] == {(1, 0, 0, 0, 0): 1}
    assert [weyl.D5.dimension(w) for w in ((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 0, 1, 0))] == [10, 45, 16]


def test_d5_tables():
    assert weyl.cartan_from_tables(weyl.D5_OMEGA, weyl.D5_ALPHA) == weyl.D5_CARTAN
    assert weyl.lattice_quotient(weyl.D5_OMEGA, weyl.D5_ALPHA) == (4,)
    assert weyl.braid_check(weyl.D5_SIMPLE, weyl.D5_CARTAN, 5)
    assert weyl.reflection_check(weyl.D5_SIMPLE, weyl.D5_ALPHA, 5)


def test_a5_tables():
    assert weyl.cartan_from_tables(weyl.A5_OMEGA, weyl.A5_ALPHA) == weyl.A5_CARTAN
    assert weyl.lattice_quotient(weyl.A5_OMEGA, weyl.A5_ALPHA) == (6,)
    assert weyl.braid_check(weyl.A5_SIMPLE, weyl.A5_CARTAN, 7)


def test_to_labels_rejects_non_weights():
    with pytest.raises(ValueError):
        weyl.to_labels((1, 0, 0, 0, 0), ((2, 0, 0, 0, 0),) + weyl.D5_OMEGA[1:])


def test_d5_group_orders():
    assert weyl.group_order(weyl.D5_SIMPLE, 5) == 1920
    assert weyl.group_order(weyl.D5_EXTENDED, 5) == 3840


@pytest.mark.slow
def test_a2_group_orders():
    assert weyl.group_order(weyl.A5_SIMPLE, 7) == 720
    assert weyl.group_order(weyl.A2_EXTENDED, 7) == 11520


# ---------------------------------------------------------------- A2 structure

def test_a2_orbits():
    omega = weyl.a2_omega_set(A2_REPS)
    assert len(omega) == 580
    assert sorted(len(o) for o in weyl.orbits(omega, weyl.A2_EXTENDED)) == [4, 8, 12, 20, 48, 48, 80, 120, 120, 120]
    a5 = Counter(len(o) for o in weyl.orbits(omega, weyl.A5_SIMPLE))
    assert a5 == {1: 12, 6: 18, 15: 8, 20: 5, 30: 4, 60: 2}


def test_a2_character_is_integral():
    omega = weyl.a2_omega_set(A2_REPS)
    dec = weyl.character_decompose([weyl.a2_labels(t) for t in omega], weyl.A2_SYMMETRY)
    # check by re-expanding: the signed sum of characters reproduces the multiset
    total = Counter()
    for hw, m in dec.items():
        for w, k in weyl.A2_SYMMETRY.character(hw).items():
            total[w] += m * k
    assert +total == Counter(weyl.a2_labels(t) for t in omega)
    assert not -total
    # (chi_(1,0) + chi_(0,1)) (chi_{w1+w5} - 5) in (sl2, sl2, sl6) labels
    for a, b in ((1, 0), (0, 1)):
        assert dec[(a, b, 1, 0, 0, 0, 1)] == 1
        assert dec[(a, b, 0, 0, 0, 0, 0)] == -5


# ---------------------------------------------------------------- f-transformation

@pytest.mark.parametrize("gen", weyl.D5_SIMPLE)
def test_f_transform_over_catalog(gen):
    pt = make_param_point(0)
    bad = [r for r in (weyl.f_transform_check(rec, gen, pt, catalog=A1) for rec in A1) if r["status"] != "PASS"]
    assert not bad, bad[:3]
