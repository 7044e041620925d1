"""Weyl-group actions on relation tuples, orbits, weights and characters.

A_1 tuples are ``(j1, j2, j3, j4, d)``; the summation variable n is carried
alongside as a rational number where it matters (its parity fixes nu).
A_2 tuples are ``(j1, j2, j3, j4, j5, d, r)``.

All generators act linearly on the tuple coordinates, so groups are
enumerated as sets of rational matrices.  The n-shift of s2 and s3 is the
one under which the A4 prefactor transforms covariantly term by term; it is
congruent modulo integers to the opposite shift, which is all that matters
for the parity of n.
"""

from __future__ import annotations

from collections import Counter, deque
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import mpmath as mp
import sympy

from .coeffs import FloatContext, a4_coeff, c4_coeff
from .exact import ParamPoint
from .fexpr import evaluate_float

F = Fraction

# ---------------------------------------------------------------------------
# A_1: D_5 generators on (j1, j2, j3, j4, d) with n


def _d5_s1(j, d, n):
    j1, j2, j3, j4 = j
    return (-j1, j2, j3, j4), d, n


def _d5_s2(j, d, n):
    j1, j2, j3, j4 = j
    s = j1 + j2 + j3 + j4
    return ((F(j1 - j2 - j3 - j4, 2) - d, j2, j3, -F(j1 + j2 + j3 - j4, 2) - d),
            -F(s, 2), n + F(d, 2) + F(s, 4))


def _d5_s3(j, d, n):
    j1, j2, j3, j4 = j
    return (j1, j2 + d, j3 + d, j4), -d, n + F(d, 2)


def _d5_s4(j, d, n):
    j1, j2, j3, j4 = j
    return (j1, -j2, j3, j4), d + j2, n


def _d5_s5(j, d, n):
    j1, j2, j3, j4 = j
    return (j1, j2, -j3, j4), d + j3, n


def _d5_sigma(j, d, n):
    j1, j2, j3, j4 = j
    return (j1, j3, j2, j4), d, n


D5_GENERATORS = {"s1": _d5_s1, "s2": _d5_s2, "s3": _d5_s3, "s4": _d5_s4, "s5": _d5_s5, "sigmaS": _d5_sigma}
D5_SIMPLE = ("s1", "s2", "s3", "s4", "s5")
D5_EXTENDED = D5_SIMPLE + ("sigmaS",)


def _intify(x):
    x = F(x)
    if x.denominator != 1:
        raise ValueError(f"non-integral tuple entry {x}")
    return int(x)


def apply_a1(gen: str, tup: Sequence, n=None):
    """Image of an A_1 tuple ``(j1, j2, j3, j4, d)`` (and of n when given)."""
    j = tuple(tup[:4])
    d = tup[4]
    j2, d2, n2 = D5_GENERATORS[gen](j, d, F(0) if n is None else F(n))
    out = tuple(_intify(x) for x in j2) + (_intify(d2),)
    return out if n is None else (out, n2)


# ---------------------------------------------------------------------------
# A_2: A1 x A1 x A5 generators on (j1, j2, j3, j4, j5, d, r)


def _a2_map(fn):
    def g(t):
        return tuple(int(x) for x in fn(*t))
    return g


_A2_RAW = {
    "t1": (lambda j1, j2, j3, j4, j5, d, r: (-j1, j2, j3, j4, j5, d, r)),
    "t2": (lambda j1, j2, j3, j4, j5, d, r: (j1, j2, j3, j4, -j5, d, r)),
    "s1": (lambda j1, j2, j3, j4, j5, d, r: (j1, -j2, j3, j4, j5, d + j2, r)),
    "s2": (lambda j1, j2, j3, j4, j5, d, r: (j1, j2 + d, j3 + d, j4, j5, -d, r)),
    "s3": (lambda j1, j2, j3, j4, j5, d, r: (j1, j2, -j3, j4, j5, d + j3, r - j3)),
    "s4": (lambda j1, j2, j3, j4, j5, d, r: (j1, j2, j3 - r, j4 - r, j5, d, -r)),
    "s5": (lambda j1, j2, j3, j4, j5, d, r: (j1, j2, j3, -j4, j5, d, r - j4)),
    "sigma1": (lambda j1, j2, j3, j4, j5, d, r: (j1, j4, j3, j2, j5, -r, -d)),
    "sigma2": (lambda j1, j2, j3, j4, j5, d, r: (j5, j2, j3, j4, j1, d, r)),
}
A2_GENERATORS = {k: _a2_map(v) for k, v in _A2_RAW.items()}
A5_SIMPLE = ("s1", "s2", "s3", "s4", "s5")
A2_EXTENDED = ("t1", "t2") + A5_SIMPLE + ("sigma1", "sigma2")


def apply_a2(gen: str, tup: Sequence) -> Tuple[int, ...]:
    return A2_GENERATORS[gen](tuple(tup))


def apply_generator(gen: str, tup: Sequence, n=None):
    """Dispatch on the tuple length: 5 for A_1, 7 for A_2."""
    if len(tup) == 5:
        return apply_a1(gen, tup, n)
    if len(tup) == 7:
        return apply_a2(gen, tup)
    raise ValueError("tuples have 5 (A1) or 7 (A2) entries")


# ---------------------------------------------------------------------------
# orbits and group enumeration


class OrbitTooLarge(RuntimeError):
    pass


def orbit(tup: Sequence, gens: Sequence[str], bound: int = 1000) -> frozenset:
    """Breadth-first closure of a tuple under the named generators."""
    start = tuple(tup)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = apply_generator(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > bound:
                    raise OrbitTooLarge(f"orbit of {start} exceeds {bound}")
                queue.append(y)
    return frozenset(seen)


def orbits(tuples: Iterable[Sequence], gens: Sequence[str], bound: int = 1000) -> List[frozenset]:
    """Partition ``tuples`` (plus anything they generate) into orbits,
    ordered by their smallest member."""
    out = []
    covered = set()
    for t in sorted(tuple(x) for x in tuples):
        if t in covered:
            continue
        o = orbit(t, gens, bound)
        covered |= o
        out.append(o)
    return out


def _linear(gen: str, dim: int) -> Callable:
    """The generator as a map on rational coordinate tuples."""
    if dim == 5:
        fn = D5_GENERATORS[gen]

        def f(v):
            j, d, _ = fn(tuple(v[:4]), v[4], F(0))
            return tuple(F(x) for x in j) + (F(d),)
        return f
    if dim == 7:
        raw = _A2_RAW[gen]
        return lambda v: tuple(raw(*v))
    raise ValueError("dimension must be 5 or 7")


def _matrix_of(gen: str, dim: int):
    """Rational matrix of a linear generator (columns = images of unit vectors)."""
    f = _linear(gen, dim)
    cols = [f(tuple(F(int(i == k)) for i in range(dim))) for k in range(dim)]
    return tuple(tuple(cols[c][r] for c in range(dim)) for r in range(dim))


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _identity(n):
    return tuple(tuple(F(int(i == j)) for j in range(n)) for i in range(n))


def group_order(gens: Sequence[str], dim: int, bound: int = 100000) -> int:
    """Order of the matrix group generated by the named generators.

    Elements are stored as the tuple of images of the basis vectors, so a
    left multiplication by a generator is one application per column.
    """
    fs = [_linear(g, dim) for g in gens]
    e = tuple(tuple(F(int(i == k)) for i in range(dim)) for k in range(dim))
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for f in fs:
            y = tuple(f(col) for col in x)
            if y not in seen:
                seen.add(y)
                if len(seen) > bound:
                    raise OrbitTooLarge("group exceeds the safety bound")
                queue.append(y)
    return len(seen)


def braid_check(gens: Sequence[str], cartan, dim: int) -> bool:
    """s_i^2 = 1 and (s_i s_j)^{m_ij} = 1 with m = 2, 3 for C_ij = 0, -1."""
    mats = [_matrix_of(g, dim) for g in gens]
    e = _identity(dim)
    for i, a in enumerate(mats):
        if _matmul(a, a) != e:
            return False
        for j, b in enumerate(mats):
            if i >= j:
                continue
            m = {0: 2, -1: 3}[cartan[i][j]]
            p = e
            ab = _matmul(a, b)
            for _ in range(m):
                p = _matmul(p, ab)
            if p != e:
                return False
            # and no smaller power
            if m == 3 and _matmul(ab, ab) == e and ab != e:
                return False
    return True


# ---------------------------------------------------------------------------
# weights and roots in tuple coordinates

D5_OMEGA = ((1, 0, 0, -1, 0), (0, 0, 0, -2, 0), (0, 0, 0, -2, 1), (0, 1, 0, -1, 0), (0, 0, 1, -1, 0))
D5_ALPHA = ((2, 0, 0, 0, 0), (-1, 0, 0, -1, -1), (0, -1, -1, 0, 2), (0, 2, 0, 0, -1), (0, 0, 2, 0, -1))
D5_CARTAN = ((2, -1, 0, 0, 0), (-1, 2, -1, 0, 0), (0, -1, 2, -1, -1), (0, 0, -1, 2, 0), (0, 0, -1, 0, 2))

# sl6 in coordinates (j2, j3, j4, d, r); sl2 + sl2 in (j1, j5)
A5_OMEGA = ((1, 0, 0, 0, 0), (0, 0, 0, 1, 0), (0, 1, 0, 0, 0), (0, 0, 0, 0, -1), (0, 0, 1, 0, 0))
A5_ALPHA = ((2, 0, 0, -1, 0), (-1, -1, 0, 2, 0), (0, 2, 0, -1, 1), (0, -1, -1, 0, -2), (0, 0, 2, 0, 1))
A5_CARTAN = tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(5)) for i in range(5))
A1_CARTAN = ((2,),)


def to_labels(w: Sequence, omega: Sequence[Sequence]) -> Tuple[int, ...]:
    """Dynkin labels of a weight given in tuple coordinates."""
    M = sympy.Matrix(omega)  # rows = omega_i
    a = sympy.Matrix([list(w)]) * M.inv()
    out = []
    for x in a:
        x = sympy.Rational(x)
        if x.q != 1:
            raise ValueError(f"weight {tuple(w)} is not in the weight lattice")
        out.append(int(x))
    return tuple(out)


def cartan_from_tables(omega, alpha) -> Tuple[Tuple[int, ...], ...]:
    """Express each alpha_i in the omega basis: rows of the Cartan matrix."""
    return tuple(to_labels(a, omega) for a in alpha)


def lattice_quotient(omega, alpha) -> Tuple[int, ...]:
    """Invariant factors of (sum Z omega_i) / (sum Z alpha_i) (Smith form)."""
    from sympy.matrices.normalforms import smith_normal_form
    C = sympy.Matrix(cartan_from_tables(omega, alpha))
    S = smith_normal_form(C, domain=sympy.ZZ)
    return tuple(abs(int(S[i, i])) for i in range(S.rows) if abs(int(S[i, i])) != 1)


def reflection_check(gens: Sequence[str], alpha, dim: int) -> bool:
    """Each simple reflection negates its own root (tuple coordinates)."""
    for g, a in zip(gens, alpha):
        m = _matrix_of(g, dim)
        img = tuple(sum(m[i][k] * a[k] for k in range(dim)) for i in range(dim))
        if img != tuple(-x for x in a):
            return False
    return True


# ---------------------------------------------------------------------------
# characters (Freudenthal)


class SimpleLie:
    """A simply-laced simple Lie algebra given by its Cartan matrix."""

    def __init__(self, cartan):
        self.cartan = tuple(tuple(r) for r in cartan)
        self.rank = len(self.cartan)
        A = sympy.Matrix(self.cartan)
        inv = A.inv()
        self._inv = [[F(int(sympy.fraction(inv[i, j])[0]), int(sympy.fraction(inv[i, j])[1]))
                      for j in range(self.rank)] for i in range(self.rank)]
        self.positive_roots = self._positive_roots()

    def to_root_coords(self, lab):
        return tuple(sum(F(lab[i]) * self._inv[i][j] for i in range(self.rank)) for j in range(self.rank))

    def level(self, lab) -> Fraction:
        return sum(self.to_root_coords(lab), F(0))

    def ip(self, a, b) -> Fraction:
        return sum(F(a[i]) * self._inv[i][j] * b[j] for i in range(self.rank) for j in range(self.rank))

    def _positive_roots(self):
        simple = [tuple(r) for r in self.cartan]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            b = queue.popleft()
            for i in range(self.rank):
                c = tuple(b[k] - b[i] * self.cartan[i][k] for k in range(self.rank))
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        return [r for r in seen if all(x >= 0 for x in self.to_root_coords(r))]

    @lru_cache(maxsize=None)
    def character(self, hw: Tuple[int, ...]) -> Dict[Tuple[int, ...], int]:
        """Weight multiplicities of the irreducible module of highest weight hw."""
        hw = tuple(hw)
        rho = (1,) * self.rank
        lr = tuple(a + b for a, b in zip(hw, rho))
        top = self.ip(lr, lr)
        mult = {hw: 1}
        layer = [hw]
        while layer:
            cand = set()
            for mu in layer:
                for i in range(self.rank):
                    cand.add(tuple(mu[k] - self.cartan[i][k] for k in range(self.rank)))
            nxt = []
            for mu in sorted(cand):
                mr = tuple(a + b for a, b in zip(mu, rho))
                den = top - self.ip(mr, mr)
                if den == 0:
                    continue
                s = F(0)
                for a in self.positive_roots:
                    k = 1
                    while True:
                        nu = tuple(mu[x] + k * a[x] for x in range(self.rank))
                        m = mult.get(nu)
                        if not m:
                            break
                        s += m * self.ip(nu, a)
                        k += 1
                m = 2 * s / den
                if m:
                    if m.denominator != 1:
                        raise ArithmeticError("non-integral multiplicity")
                    mult[mu] = int(m)
                    nxt.append(mu)
            layer = nxt
        return mult

    def dominant(self, w) -> bool:
        return all(x >= 0 for x in w)

    def dimension(self, hw) -> int:
        """Weyl dimension formula."""
        rho = (1,) * self.rank
        num = F(1)
        for a in self.positive_roots:
            num *= self.ip(tuple(x + y for x, y in zip(hw, rho)), a) / self.ip(rho, a)
        return int(num)


class ProductLie:
    """Direct sum of simple factors; weights are concatenated label tuples."""

    def __init__(self, factors: Sequence[SimpleLie]):
        self.factors = list(factors)
        self.splits = []
        k = 0
        for f in self.factors:
            self.splits.append((k, k + f.rank))
            k += f.rank

    def parts(self, w):
        return [tuple(w[a:b]) for a, b in self.splits]

    def level(self, w) -> Fraction:
        return sum((f.level(p) for f, p in zip(self.factors, self.parts(w))), F(0))

    def dominant(self, w) -> bool:
        return all(x >= 0 for x in w)

    def character(self, hw) -> Dict[Tuple[int, ...], int]:
        out = {(): 1}
        for f, p in zip(self.factors, self.parts(hw)):
            ch = f.character(p)
            out = {a + b: m * n for a, m in out.items() for b, n in ch.items()}
        return out


class DecompositionError(ValueError):
    pass


def character_decompose(weights: Iterable[Sequence[int]], lie) -> Dict[Tuple[int, ...], int]:
    """Integer combination of irreducible characters equal to the multiset.

    Repeatedly removes the full character of a highest remaining weight.
    """
    rest = Counter(tuple(w) for w in weights)
    out: Dict[Tuple[int, ...], int] = {}
    guard = 0
    while True:
        rest = Counter({k: v for k, v in rest.items() if v})
        if not rest:
            return out
        guard += 1
        if guard > 10000:
            raise DecompositionError("decomposition does not terminate")
        top = max(rest, key=lambda w: (lie.level(w), w))
        if not lie.dominant(top):
            raise DecompositionError(f"highest remaining weight {top} is not dominant; residual {dict(rest)}")
        c = rest[top]
        out[top] = out.get(top, 0) + c
        for w, m in lie.character(top).items():
            rest[w] -= c * m


D5 = SimpleLie(D5_CARTAN)
A5 = SimpleLie(A5_CARTAN)
SL2 = SimpleLie(A1_CARTAN)
A2_SYMMETRY = ProductLie([SL2, SL2, A5])


def a1_labels(tup) -> Tuple[int, ...]:
    return to_labels(tup, D5_OMEGA)


def a2_labels(tup) -> Tuple[int, ...]:
    """(sl2, sl2, sl6) labels: (j1, j5, j2, d, j3, -r, j4)."""
    j1, j2, j3, j4, j5, d, r = tup
    return (j1, j5) + to_labels((j2, j3, j4, d, r), A5_OMEGA)


def a2_omega_set(representatives: Iterable[Sequence[int]]) -> frozenset:
    """The full A_2 tuple set generated from orbit representatives."""
    out = set()
    for t in representatives:
        out |= orbit(t, A2_EXTENDED)
    return frozenset(out)


def orbit_report(orbs: Sequence[frozenset], labels: Callable) -> List[dict]:
    out = []
    for i, o in enumerate(sorted(orbs, key=lambda o: (-len(o), min(o)))):
        dom = sorted(labels(t) for t in o if all(x >= 0 for x in labels(t)))
        out.append({"orbit-id": i, "size": len(o), "highest-weight": [list(x) for x in dom],
                    "member-tuples": [list(t) for t in sorted(o)]})
    return out


# ---------------------------------------------------------------------------
# f-factor transformation (float mode, A_1)


def _s_action(gen: str, Q: Dict[str, mp.mpf], t):
    """Parameter action S_i on (q1^theta values, t)."""
    Q = dict(Q)
    Q0, Qt, Qs, Q1, Qi = (Q[k] for k in ("theta0", "thetat", "sigma", "theta1", "thetainf"))
    if gen == "s1":
        Q["theta0"] = 1 / Q0
    elif gen == "s2":
        P = mp.sqrt(Q0 * Qt * Q1 * Qi)
        Q["theta0"] = mp.sqrt(Q0 / (Qt * Q1 * Qi)) / t
        Q["sigma"] = t * Qs * P
        Q["thetainf"] = mp.sqrt(Qi / (Q0 * Qt * Q1)) / t
        t = 1 / P
    elif gen == "s3":
        Q["thetat"], Q["sigma"], Q["theta1"] = t * Qt, t * Qs, t * Q1
        t = 1 / t
    elif gen == "s4":
        Q["thetat"] = 1 / Qt
        t = t * Qt
    elif gen == "s5":
        Q["theta1"] = 1 / Q1
        t = t * Q1
    else:
        raise ValueError(f"no parameter action for {gen!r}")
    return Q, t


_A1_NAMES = ("theta0", "thetat", "sigma", "theta1", "thetainf")


def _f_value(rec, Q, t, values_base, prec):
    """f of an A_1 record at multiplicative parameters Q (q1^theta) and t."""
    vals = dict(values_base)
    for k in _A1_NAMES:
        vals[k] = mp.root(Q[k], 4)
    ctx = FloatContext(vals, prec=prec)
    U = tuple(Q[k] ** mp.mpf(0.5) for k in _A1_NAMES)
    j = rec.j

    def resolve(par):
        return c4_coeff(ctx, U, j, par[0], rec.d, t)

    return evaluate_float(rec.f, vals, {"t": t}, {}, resolve), ctx, U


def f_transform_check(rec, gen: str, point: ParamPoint, prec: int = 40, t=None, catalog=None, n=None) -> dict:
    """Compare the catalog f at the image tuple with the transformed f.

    Predicted image f = S_i(f / A4) * A4(image tuple), evaluated in floats.
    """
    from .blowup import load_catalog

    with mp.workdps(prec):
        catalog = catalog if catalog is not None else load_catalog(["A1"])
        by_tuple = {tuple(r.j) + (r.d,): r for r in catalog}
        src = tuple(rec.j) + (rec.d,)
        n = F(rec.nu[0]) if n is None else F(n)
        (img, n_img) = apply_a1(gen, src, n)
        rep = {"record-id": rec.record_id, "generator": gen, "tuple": list(src), "image": list(img),
               "n": str(n), "n_image": str(n_img)}
        if img not in by_tuple:
            rep.update(status="FAIL", reason="image tuple absent from catalog")
            return rep
        target = by_tuple[img]
        base = {k: mp.mpf(int(v.numerator)) / int(v.denominator) for k, v in point.values.items()}
        t = mp.mpf("0.0731") if t is None else mp.mpf(t)
        Q = {k: base[k] ** 4 for k in _A1_NAMES}
        # predicted: S_i(f / A4(j, n, d)) * A4(j', n', d')
        Qs, ts = _s_action(gen, Q, t)
        f_src, ctx_s, U_s = _f_value(rec, Qs, ts, base, prec)
        a_src = a4_coeff(ctx_s, U_s, rec.j, n, rec.d, ts)
        f_img, ctx, U = _f_value(target, Q, t, base, prec)
        a_img = a4_coeff(ctx, U, img[:4], n_img, img[4], t)
        predicted = f_src / a_src * a_img
        tol = mp.mpf(10) ** (-(prec - 10))
        if abs(f_img) < tol:
            # zero-f row: compare absolutely, f itself is a cancelling sum
            err = abs(predicted - f_img)
        else:
            err = abs(predicted - f_img) / max(abs(f_img), abs(predicted))
        rep.update(predicted=mp.nstr(predicted, 20), catalog=mp.nstr(f_img, 20), rel_error=mp.nstr(err, 5),
                   status="PASS" if err < tol else "FAIL")
        return rep
