"""The ten acceptance criteria, each at its stated tolerance.

Every test prints a single PASS/FAIL line (also collected in the terminal
summary) and then asserts.
"""

import random
import time
from collections import Counter
from fractions import Fraction as Fr

import mpmath as mp

from qblowup import qspecial as qs
from qblowup import weyl
from qblowup.blowup import DEFAULT_ORDERS, hypergeom_limit_check, load_catalog, verify_relation
from qblowup.cli import main
from qblowup.coeffs import c4_limit_check, c_n_limit_check
from qblowup.exact import make_param_point
from qblowup.nekrasov import higgs_check
from qblowup.tauqp6 import bilinear_check, select_shift_convention, y_consistency_check
from test_coeffs import run_reductions
from test_qspecial import double_pochhammer_split

SEEDS = (0, 1, 2)


def _verify(families, order=None):
    recs = load_catalog(families)
    reps = [verify_relation(r, make_param_point(s), order or DEFAULT_ORDERS[r.family]) for s in SEEDS for r in recs]
    bad = [r.to_json() for r in reps if not r.passed]
    return recs, reps, bad


def test_criterion_01_a1_catalog(report_criterion):
    t0 = time.time()
    recs, reps, bad = _verify(["A1"], (3,))
    ok = len(recs) == 83 and not bad
    report_criterion(1, ok, f"A1 {len(reps) - len(bad)}/{len(reps)} exact through t^3 at 3 points "
                            f"({time.time() - t0:.1f}s)")
    assert ok, bad[:3]


def test_criterion_02_orbits(report_criterion):
    a1 = {tuple(r.j) + (r.d,) for r in load_catalog(["A1"])}
    sizes = sorted(len(o) for o in weyl.orbits(a1, weyl.D5_EXTENDED))
    reps = {tuple(r.j) + (r.d, r.r) for r in load_catalog(["A2-general"])}
    omega = weyl.a2_omega_set(reps)
    a5 = Counter(len(o) for o in weyl.orbits(omega, weyl.A5_SIMPLE))
    quotient = weyl.lattice_quotient(weyl.D5_OMEGA, weyl.D5_ALPHA)
    ok = (sizes == [1, 10, 32, 40] and a5 == {1: 12, 6: 18, 15: 8, 20: 5, 30: 4, 60: 2}
          and sum(s * m for s, m in a5.items()) == 580 and quotient == (4,))
    report_criterion(2, ok, f"D5 orbits {sizes}, W(A5) cardinalities {sorted(a5.items())}, quotient Z/{quotient[0]}")
    assert ok


def _expected_character():
    """The displayed expansion, in (sl2, sl2, sl6 Dynkin) labels."""
    def w(*idx):
        lab = [0] * 5
        for i in idx:
            lab[i - 1] += 1
        return tuple(lab)
    out = Counter()
    out[(1, 2) + w()] += 1
    out[(2, 1) + w()] += 1
    for ab in ((0, 0), (1, 1), (2, 0), (0, 2)):
        out[ab + w(1)] += 1
        out[ab + w(5)] += 1
    out[(0, 0) + w(1)] -= 2
    out[(0, 0) + w(5)] -= 2
    for ab in ((1, 0), (0, 1)):
        out[ab + w(2)] += 1
        out[ab + w(4)] += 1
        out[ab + w(1, 5)] += 1
        out[ab + w()] -= 5
    for ab in ((0, 0), (1, 1)):
        out[ab + w(3)] += 1
    out[(0, 0) + w(1, 4)] += 1
    out[(0, 0) + w(5)] -= 4
    out[(0, 0) + w(2, 5)] += 1
    out[(0, 0) + w(1)] -= 4
    return {k: v for k, v in out.items() if v}


def test_criterion_03_character(report_criterion):
    reps = {tuple(r.j) + (r.d, r.r) for r in load_catalog(["A2-general"])}
    omega = weyl.a2_omega_set(reps)
    got = weyl.character_decompose([weyl.a2_labels(t) for t in omega], weyl.A2_SYMMETRY)
    want = _expected_character()
    ok = len(omega) == 580 and got == want
    report_criterion(3, ok, f"{len(got)} character terms, exact match with the displayed expansion: {got == want}")
    assert ok, (set(got.items()) ^ set(want.items()))


def test_criterion_04_higgsed_a2(report_criterion):
    t0 = time.time()
    _, reps, bad = _verify(["A2-higgsed-t1y", "A2-higgsed-yt1", "A2-higgsed-ty1"], (2, 2))
    higgs = [higgs_check(k, make_param_point(s), 2) for s in SEEDS
             for k in ("right-identity", "left-identity", "middle-identity")]
    hbad = [h for h in higgs if h["status"] != "PASS"]
    ok = not bad and not hbad
    report_criterion(4, ok, f"Higgsed A2 {len(reps) - len(bad)}/{len(reps)} through (2,2); degenerations "
                            f"{len(higgs) - len(hbad)}/{len(higgs)} ({time.time() - t0:.1f}s)")
    assert ok, (bad[:3], hbad[:3])


def test_criterion_05_two_term(report_criterion):
    recs, reps, bad = _verify(["A1-two-term", "A2-two-term-higgsed"])
    a1 = [r for r in recs if r.family == "A1-two-term"]
    ok = not bad and [tuple(r.j) + (r.d,) for r in a1] == [(-1, -1, 1, None, -1)]
    report_criterion(5, ok, f"two-term {len(reps) - len(bad)}/{len(reps)} through order 2")
    assert ok, bad[:3]


def test_criterion_06_a3(report_criterion):
    recs, reps, bad = _verify(["A3-higgsed"], (1, 1, 1))
    ok = len(recs) == 4 and not bad
    report_criterion(6, ok, f"Higgsed A3 {len(reps) - len(bad)}/{len(reps)} through (1,1,1)")
    assert ok, bad[:3]


def _c_n_identities(g, q1, v):
    """Failures of the symmetry, recurrence and ratio identities for n in -3..3."""
    q2 = 1 / (g * g * q1)
    bad = []
    for n in range(-3, 4):
        a = (-v) ** Fr(-(n * (n - 1) // 2)) * g ** Fr(-(n * (n - 1) * (n + 1) // 3)) * qs.c_n(1 / v, n, q1, q2)
        if not (a == qs.g_n(1 / v, n, g) * qs.c_n(1 / v, n, q1, q2) == qs.c_n(g * g * v, -n + 1, q1, q2)
                == qs.c_n(v, n, 1 / q1, 1 / q2)):
            bad.append(("symmetry", n))
        rhs = g ** (n * (n + 1)) * qs.qpoch(v, q1, n + 1) * qs.qpoch(v, q2, n + 1) / (v ** (2 * n + 1) * (v - 1))
        if qs.c_n(g * g * v, n + 2, q1, q2) != rhs * qs.c_n(v, n, q1, q2):
            bad.append(("recurrence", n))
        if qs.c_n(1 / (v * q1), -n + 1, q1, q2) / qs.c_n(1 / v, -n, q1, q2) != 1 / qs.qpoch(v, q2, n):
            bad.append(("ratio", n))
    return bad


def test_criterion_07_identities(report_criterion):
    rng = random.Random(2024)
    bad = []
    for _ in range(100):
        g = Fr(rng.randint(11, 40), rng.randint(2, 10))
        g = g if g > 1 else g + 1
        q1 = Fr(rng.randint(1, 18), 19)
        v = Fr(rng.randint(1, 10 ** 6), 1000003)
        bad += _c_n_identities(g, q1, v)
    tol = mp.mpf(10) ** -35
    worst = mp.mpf(0)
    with mp.workdps(40):
        for q1, q2, u in (("0.5", "0.3", "0.37"), ("0.41", "0.62", "0.19")):
            q1, q2, u = mp.mpf(q1), mp.mpf(q2), mp.mpf(u)
            g = 1 / mp.sqrt(q1 * q2)
            for n in range(-3, 4):
                a, _ = double_pochhammer_split(u, n, q1, q2)
                worst = max(worst, abs(a / qs.c_n(1 / u, -n, q1, q2) - 1))
                for k in (-2, -1, 1, 2):
                    a, b = double_pochhammer_split(u, n, q1, q2, k)
                    worst = max(worst, abs(a / b - 1))
    red = run_reductions(50)
    ok = not bad and worst < tol and not red["failures"] and \
        all(red[k] == 50 for k in ("final-on", "final-off", "middle-on", "middle-off"))
    report_criterion(7, ok, f"c_n identities {2100 - len(bad)}/2100 exact; splitting worst {mp.nstr(worst, 3)}; "
                            f"reductions on/off support {red['final-on']}+{red['middle-on']}/"
                            f"{red['final-off']}+{red['middle-off']}")
    assert ok, (bad[:3], worst, red["failures"][:3])


def test_criterion_08_limits(report_criterion):
    t1y = load_catalog(["A2-higgsed-t1y"])
    hyp = [hypergeom_limit_check(r, make_param_point(s), 3) for s in SEEDS for r in t1y]
    hbad = [h for h in hyp if h["status"] != "PASS"]
    q = "0.3"
    cn = [c_n_limit_check(u, n, q) for u in ("0.37", "1.21", "-0.43") for n in range(-3, 4)]
    th = ("0.13", "0.21", "0.17", "0.29", "0.11")
    c4 = [c4_limit_check(th, r.j, r.nu[0] + k, r.d, q, "0.3") for r in load_catalog(["A1"]) for k in (-1, 0, 1)]
    worst_cn = max(r["rel_error"] for r in cn)
    worst_c4 = max(r["rel_error"] for r in c4)
    ok = not hbad and worst_cn <= 1e-6 and worst_c4 <= 1e-6
    report_criterion(8, ok, f"2phi1 limit {len(hyp) - len(hbad)}/{len(hyp)} through y^-3; "
                            f"c_n_limit worst {worst_cn:.2g} ({len(cn)}), c4_limit worst {worst_c4:.2g} ({len(c4)}) "
                            f"at q={q}")
    assert ok, hbad[:3]


def test_criterion_09_tau(report_criterion):
    t0 = time.time()
    pts = [make_param_point(s, "tau") for s in SEEDS]
    bil = [bilinear_check(rel, p, 3, range(-2, 3)) for p in pts for rel in ("B1", "B4")]
    bbad = [b for b in bil if b["status"] != "PASS"]
    conv = [select_shift_convention(p)["selected"] for p in pts]
    ys = [y_consistency_check(p, 3) for p in pts]
    ybad = [y for y in ys if y["status"] != "PASS" or not y["equations"]["y4"]["structural_match"]]
    ok = not bbad and conv[0] is not None and len(set(conv)) == 1 and not ybad
    report_criterion(9, ok, f"B1/B4 {len(bil) - len(bbad)}/{len(bil)} exact through t^3; convention {conv}; "
                            f"y-consistency {len(ys) - len(ybad)}/{len(ys)} ({time.time() - t0:.1f}s)")
    assert ok, (bbad[:2], conv, ybad[:1])


def test_criterion_10_determinism(tmp_path, capsys, report_criterion):
    cache = str(tmp_path / "cache")
    outs = []
    for i in range(2):
        rep = tmp_path / f"verify{i}.json"
        code = main(["verify", "--family", "a1,a3-higgsed", "--seeds", "3", "--jobs", "1", "--cache-dir", cache,
                     "--report", str(rep)])
        outs.append((code, capsys.readouterr().out, rep.read_bytes()))
    taus = []
    for i in range(2):
        rep = tmp_path / f"tau{i}.json"
        code = main(["tau", "--seeds", "2", "--cache-dir", cache, "--report", str(rep)])
        capsys.readouterr()
        taus.append((code, rep.read_bytes()))
    total = 3 * (83 + 4)
    ok = (outs[0][0] == outs[1][0] == 0 and outs[0][2] == outs[1][2]
          and f"(cache hits {total}, misses 0)" in outs[1][1] and taus[0] == taus[1] and taus[0][0] == 0)
    report_criterion(10, ok, f"identical verify and tau reports on repeat; second verify run "
                             f"{outs[1][1].strip().splitlines()[-1]}")
    assert ok
