"""Exact arithmetic substrate.

Rationals are ``gmpy2.mpq``.  Every multiplicative parameter of the theory
(q1, q2, q1^theta, q1^sigma, ...) is written as an integer monomial in a fixed
set of *units*, each unit being a fourth root: ``q1`` stands for q1^{1/4},
``theta0`` for q1^{theta0/4} and so on.  A ``ParamPoint`` assigns an exact
rational to every unit, and a ``Monomial`` evaluates to a rational there.

Truncated series (``QSeries``) carry exponents on the quarter lattice, stored
as integers counting quarters.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from gmpy2 import mpq

Rat = mpq
ZERO = mpq(0)
ONE = mpq(1)


class FractionalExponentError(ValueError):
    """A unit exponent (in quarter units) came out non-integral."""


class NonGenericPoint(ArithmeticError):
    """A denominator vanished at the chosen parameter point."""


def rat(x) -> mpq:
    """Coerce ints, Fractions, strings like '3/7' and mpq to ``mpq``."""
    if isinstance(x, str):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def frac(x) -> Fraction:
    """Coerce ints, strings, Fractions and mpq to ``Fraction``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


def quarters(x) -> int:
    """Return 4*x as an int, raising if 4*x is not integral."""
    f = frac(x) * 4
    if f.denominator != 1:
        raise FractionalExponentError(f"exponent {x} is not on the quarter lattice")
    return int(f)


def rat_str(x) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# units and monomials

THETA_NAMES = ("theta0", "thetat", "theta1", "thetay", "thetax", "thetainf",
               "sigma", "sigma0", "sigma1", "sigma2")
BLOWUP_UNITS = ("q1", "q2") + THETA_NAMES
TAU_UNITS = ("q",) + THETA_NAMES + ("s",)


class Monomial:
    """Integer monomial in the fourth-root units.

    Stored as a sorted tuple of ``(unit, exponent)`` pairs with nonzero
    exponents.  Instances are immutable and hashable.
    """

    __slots__ = ("items", "_hash")

    def __init__(self, items: Iterable[Tuple[str, int]] = ()):
        acc: Dict[str, int] = {}
        for u, e in items:
            if not isinstance(e, int):
                if isinstance(e, Fraction) and e.denominator == 1:
                    e = int(e)
                else:
                    raise FractionalExponentError(f"non-integer exponent {e} on unit {u}")
            acc[u] = acc.get(u, 0) + e
        self.items = tuple(sorted((u, e) for u, e in acc.items() if e))
        self._hash = hash(self.items)

    @classmethod
    def unit(cls, name: str, exp: int = 1) -> "Monomial":
        return cls(((name, exp),))

    @classmethod
    def qpow(cls, base: str = "q1", power=0, **thetas) -> "Monomial":
        """``base^power * prod base^(c*theta)`` with rational power/c.

        ``qpow('q1', 1/2, theta0=1)`` is q1^{1/2 + theta0}.
        """
        items = [(base, quarters(power))] if power else []
        for name, c in thetas.items():
            items.append((name, quarters(c)))
        return cls(items)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.items + other.items)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.items + tuple((u, -e) for u, e in other.items))

    def __pow__(self, k) -> "Monomial":
        if isinstance(k, int):
            return Monomial((u, e * k) for u, e in self.items)
        k = frac(k)
        out = []
        for u, e in self.items:
            v = e * k
            if v.denominator != 1:
                raise FractionalExponentError(f"{self}^{k} leaves unit {u} with exponent {v}")
            out.append((u, int(v)))
        return Monomial(out)

    def inv(self) -> "Monomial":
        return self ** -1

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self.items:
            return "Monomial(1)"
        return "Monomial(" + "*".join(f"{u}^{e}" for u, e in self.items) + ")"

    def exponent(self, unit: str) -> int:
        for u, e in self.items:
            if u == unit:
                return e
        return 0

    def units(self) -> Tuple[str, ...]:
        return tuple(u for u, _ in self.items)

    def evaluate(self, point: "ParamPoint") -> mpq:
        return point.eval(self)


MONO_ONE = Monomial()


def gamma_mono(k: int = 1, w1: Optional[Monomial] = None, w2: Optional[Monomial] = None) -> Monomial:
    """gamma^k = (W1*W2)^{-k}, where W1, W2 are the square roots of the
    Omega-background parameters (default q1^{1/2}, q2^{1/2})."""
    if w1 is None:
        w1 = Monomial.unit("q1", 2)
    if w2 is None:
        w2 = Monomial.unit("q2", 2)
    return (w1 * w2) ** (-k)


class ParamPoint:
    """Exact rational values for the fourth-root units."""

    def __init__(self, values: Mapping[str, object], mode: str = "blowup", seed: Optional[int] = None):
        vals = {}
        for k, v in values.items():
            v = rat(v)
            if v == 0:
                raise ValueError(f"unit {k} must be nonzero")
            vals[k] = v
        self.values = vals
        self.mode = mode
        self.seed = seed

    def __getitem__(self, name: str) -> mpq:
        return self.values[name]

    def eval(self, mono: Monomial) -> mpq:
        r = ONE
        for u, e in mono.items:
            try:
                r *= self.values[u] ** e
            except KeyError:
                raise KeyError(f"unit {u!r} is not assigned at this point") from None
        return r

    def with_values(self, **kw) -> "ParamPoint":
        v = dict(self.values)
        v.update(kw)
        return ParamPoint(v, self.mode, self.seed)

    def fingerprint(self) -> str:
        return ";".join(f"{k}={rat_str(v)}" for k, v in sorted(self.values.items()))

    def __repr__(self) -> str:
        return f"ParamPoint(mode={self.mode!r}, seed={self.seed!r}, {self.fingerprint()})"


# bands (lo, hi) and candidate denominators per unit; disjoint bands keep the
# values generic and small denominators keep the rationals short.
_BANDS = {
    "q1": ((0.55, 0.70), (13, 17, 19)),
    "q2": ((0.72, 0.88), (23, 29)),
    "q": ((0.55, 0.75), (13, 17, 19)),
    "theta0": ((1.10, 1.30), (7, 9, 11, 13)),
    "thetat": ((1.32, 1.55), (11, 13, 17)),
    "theta1": ((1.57, 1.80), (13, 17)),
    "thetay": ((1.82, 2.05), (17, 19)),
    "thetax": ((2.07, 2.30), (19, 23)),
    "thetainf": ((2.32, 2.60), (23, 29)),
    "sigma": ((2.62, 2.90), (29, 31)),
    "sigma0": ((2.92, 3.20), (31, 37)),
    "sigma1": ((3.22, 3.50), (37, 41)),
    "sigma2": ((3.52, 3.80), (41, 43)),
    "s": ((0.30, 0.90), (5, 7, 9)),
}


def _candidates(unit: str, mode: str) -> List[mpq]:
    """The unit's admissible values in a fixed pseudo-random order."""
    (lo, hi), dens = _BANDS[unit]
    vals = sorted({mpq(n, d) for d in dens for n in range(int(lo * d), int(hi * d) + 2) if lo < n / d < hi})
    random.Random(f"qblowup-point-{mode}-{unit}").shuffle(vals)
    return vals


def make_param_point(seed: int, mode: str = "blowup") -> ParamPoint:
    """Deterministic pseudo-random exact point.

    ``mode='blowup'`` assigns q1, q2 and every theta/sigma unit;
    ``mode='tau'`` assigns the single base ``q``, the theta/sigma units and
    the Fourier parameter ``s``.  Each unit walks through a fixed shuffle of
    its candidate values, so two seeds that differ by less than the smallest
    candidate count (7) differ in every unit.
    """
    if mode not in ("blowup", "tau"):
        raise ValueError(f"unknown mode {mode!r}")
    units = BLOWUP_UNITS if mode == "blowup" else TAU_UNITS
    vals = {}
    for u in units:
        cands = _candidates(u, mode)
        k = seed
        v = cands[k % len(cands)]
        while v in (1, -1) or v in vals.values():
            k += 1
            v = cands[k % len(cands)]
        vals[u] = v
    return ParamPoint(vals, mode, seed)


# ---------------------------------------------------------------------------
# truncated series on the quarter lattice


class QSeries:
    """Truncated multivariate power series with exact coefficients.

    ``vars`` names the expansion variables, ``trunc[i]`` is the exclusive
    bound on the exponent of ``vars[i]`` measured in quarters, and ``coeffs``
    maps exponent tuples (in quarters, all >= 0) to nonzero rationals.
    """

    __slots__ = ("vars", "trunc", "coeffs")

    def __init__(self, vars: Sequence[str], trunc: Sequence[int], coeffs: Optional[Mapping] = None):
        self.vars = tuple(vars)
        self.trunc = tuple(int(t) for t in trunc)
        if len(self.vars) != len(self.trunc):
            raise ValueError("vars and trunc length differ")
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                k = tuple(k)
                if len(k) != len(self.vars):
                    raise ValueError("exponent tuple has wrong length")
                if any(e < 0 for e in k):
                    raise ValueError(f"negative exponent {k} in a power series")
                if v and all(e < t for e, t in zip(k, self.trunc)):
                    c[k] = rat(v)
        self.coeffs = c

    # constructors --------------------------------------------------------
    @classmethod
    def const(cls, vars, trunc, value=1) -> "QSeries":
        return cls(vars, trunc, {(0,) * len(tuple(vars)): value})

    @classmethod
    def monomial(cls, vars, trunc, exps: Sequence[int], value=1) -> "QSeries":
        return cls(vars, trunc, {tuple(exps): value})

    @classmethod
    def from_orders(cls, vars: Sequence[str], orders: Sequence, coeffs=None) -> "QSeries":
        """Series keeping every exponent e with e < order + 1 (orders in
        ordinary units, quarter-integers allowed)."""
        return cls(vars, [quarters(o) + 4 for o in orders], coeffs)

    def zero_like(self) -> "QSeries":
        return QSeries(self.vars, self.trunc)

    def one_like(self) -> "QSeries":
        return QSeries.const(self.vars, self.trunc, 1)

    # helpers ---------------------------------------------------------------
    def _check(self, other: "QSeries"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")

    def _common_trunc(self, other: "QSeries"):
        return tuple(min(a, b) for a, b in zip(self.trunc, other.trunc))

    def _lift(self, x) -> "QSeries":
        if isinstance(x, QSeries):
            return x
        return QSeries.const(self.vars, self.trunc, x)

    # arithmetic ------------------------------------------------------------
    def __add__(self, other) -> "QSeries":
        other = self._lift(other)
        self._check(other)
        tr = self._common_trunc(other)
        c = dict(self.coeffs)
        for k, v in other.coeffs.items():
            c[k] = c.get(k, ZERO) + v
        return QSeries(self.vars, tr, c)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(self.vars, self.trunc, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other) -> "QSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "QSeries":
        return self._lift(other) - self

    def scale(self, a) -> "QSeries":
        a = rat(a)
        if a == 0:
            return QSeries(self.vars, self.trunc)
        return QSeries(self.vars, self.trunc, {k: v * a for k, v in self.coeffs.items()})

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return self.scale(other)
        self._check(other)
        tr = self._common_trunc(other)
        n = len(tr)
        c: Dict[tuple, mpq] = {}
        bitems = [(k, v) for k, v in other.coeffs.items() if all(k[i] < tr[i] for i in range(n))]
        for ka, va in self.coeffs.items():
            if any(ka[i] >= tr[i] for i in range(n)):
                continue
            for kb, vb in bitems:
                k = tuple(ka[i] + kb[i] for i in range(n))
                if any(k[i] >= tr[i] for i in range(n)):
                    continue
                c[k] = c.get(k, ZERO) + va * vb
        return QSeries(self.vars, tr, c)

    def __rmul__(self, other) -> "QSeries":
        return self.scale(other)

    def constant_term(self) -> mpq:
        return self.coeffs.get((0,) * len(self.vars), ZERO)

    def invert(self) -> "QSeries":
        c0 = self.constant_term()
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / c0
        r = -(self.scale(inv0) - 1)  # self = c0 (1 - r)
        out = self.one_like()
        power = self.one_like()
        while True:
            power = power * r
            if not power.coeffs:
                break
            out = out + power
        return out.scale(inv0)

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return self * other.invert()
        return self.scale(1 / rat(other))

    def __pow__(self, k: int) -> "QSeries":
        if not isinstance(k, int):
            raise TypeError("series powers must be integers")
        if k < 0:
            return self.invert() ** (-k)
        out = self.one_like()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def truncate(self, trunc: Sequence[int]) -> "QSeries":
        tr = tuple(min(a, b) for a, b in zip(self.trunc, trunc))
        return QSeries(self.vars, tr, self.coeffs)

    def shift(self, exps: Sequence[int]) -> "QSeries":
        """Multiply by the monomial with the given quarter exponents."""
        c = {tuple(a + b for a, b in zip(k, exps)): v for k, v in self.coeffs.items()}
        return QSeries(self.vars, self.trunc, c)

    # comparison / output -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            other = self._lift(other)
        if self.vars != other.vars:
            return False
        tr = self._common_trunc(other)
        return self.truncate(tr).coeffs == other.truncate(tr).coeffs

    __hash__ = None

    def sorted_items(self):
        return sorted(self.coeffs.items())

    def dump(self) -> str:
        """One line per coefficient: ``exponent-tuple<TAB>num/den``."""
        lines = []
        for k, v in self.sorted_items():
            ex = ",".join(rat_str(mpq(e, 4)) for e in k)
            lines.append(f"({ex})\t{rat_str(v)}")
        return "\n".join(lines) + ("\n" if lines else "")

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {rat_str(v)}" for k, v in self.sorted_items()[:6])
        more = "" if len(self.coeffs) <= 6 else ", ..."
        return f"QSeries({self.vars}, trunc={self.trunc}, {{{body}{more}}})"


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def series_invert(a: QSeries) -> QSeries:
    return a.invert()


# ---------------------------------------------------------------------------
# sigma-graded series for tau functions


class SigmaSeries:
    """Finite sum of c * t^{grade + e}.

    ``grade`` is any hashable structural tag for the non-rational part of the
    exponent (for tau functions: the symbolic linear form in sigma and the
    thetas); ``e`` is a rational offset.  Coefficients are exact rationals and
    entries with ``e > emax`` are discarded.
    """

    __slots__ = ("coeffs", "emax")

    def __init__(self, coeffs: Optional[Mapping] = None, emax=None):
        self.emax = None if emax is None else Fraction(emax)
        c = {}
        if coeffs:
            for (g, e), v in coeffs.items():
                e = Fraction(e)
                if v and (self.emax is None or e <= self.emax):
                    c[(g, e)] = rat(v)
        self.coeffs = c

    def _emax(self, other):
        if self.emax is None:
            return other.emax
        if other.emax is None:
            return self.emax
        return min(self.emax, other.emax)

    def __add__(self, other: "SigmaSeries") -> "SigmaSeries":
        c = dict(self.coeffs)
        for k, v in other.coeffs.items():
            c[k] = c.get(k, ZERO) + v
        return SigmaSeries(c, self._emax(other))

    def __neg__(self) -> "SigmaSeries":
        return SigmaSeries({k: -v for k, v in self.coeffs.items()}, self.emax)

    def __sub__(self, other: "SigmaSeries") -> "SigmaSeries":
        return self + (-other)

    def scale(self, a) -> "SigmaSeries":
        a = rat(a)
        return SigmaSeries({k: v * a for k, v in self.coeffs.items()}, self.emax)

    def shift(self, de) -> "SigmaSeries":
        de = Fraction(de)
        return SigmaSeries({(g, e + de): v for (g, e), v in self.coeffs.items()},
                           None if self.emax is None else self.emax)

    def mul(self, other: "SigmaSeries", combine) -> "SigmaSeries":
        """Product; ``combine(g1, g2)`` adds two grades."""
        emax = self._emax(other)
        c: Dict = {}
        for (g1, e1), v1 in self.coeffs.items():
            for (g2, e2), v2 in other.coeffs.items():
                e = e1 + e2
                if emax is not None and e > emax:
                    continue
                k = (combine(g1, g2), e)
                c[k] = c.get(k, ZERO) + v1 * v2
        return SigmaSeries(c, emax)

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (repr(kv[0][0]), kv[0][1]))
