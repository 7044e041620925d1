"""Instanton partition functions of the A1, A2 and A3 linear quivers.

A ``Theory`` fixes the Omega background, the mass/Coulomb slots and the
instanton parameters.  Parameters are ``Monomial``s in the fourth-root units,
so shifted backgrounds such as (q1, q1^{-1} q2) and Higgsed masses such as
q1^{-2} q2^{-1} are handled uniformly.

Slot conventions (each slot stores U = Q1^{theta/2}, Q1 = W1^2 being the
first Omega parameter of the theory):

* F4: (theta0, thetat, sigma, theta1, thetainf)
* F5: (theta0, thetat, sigma1, theta1, sigma2, thetay, thetainf)
* F6: (theta0, thetax, sigma0, thetat, sigma1, theta1, sigma2, thetay, thetainf)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import mpmath as mp

from .exact import (MONO_ONE, Monomial, ParamPoint, QSeries, quarters, rat)
from . import kernel
from . import qspecial

N_SLOTS = {1: 5, 2: 7, 3: 9}
SLOT_NAMES = {
    1: ("theta0", "thetat", "sigma", "theta1", "thetainf"),
    2: ("theta0", "thetat", "sigma1", "theta1", "sigma2", "thetay", "thetainf"),
    3: ("theta0", "thetax", "sigma0", "thetat", "sigma1", "theta1", "sigma2", "thetay", "thetainf"),
}

W1_DEFAULT = Monomial.unit("q1", 2)
W2_DEFAULT = Monomial.unit("q2", 2)


def half_unit(name: str, shift=0, base: str = "q1") -> Monomial:
    """q1^{(theta_name + shift)/2} as a monomial."""
    return Monomial(((name, 2),)) * Monomial.qpow(base, rat(shift) / 2)


@dataclass(frozen=True)
class Theory:
    """Quiver data: rank, background, slot values and instanton parameters.

    ``nodes[k] = (grading, mono)`` means the k-th instanton parameter equals
    ``mono`` times the product of expansion variables raised to ``grading``
    (quarter units, one entry per expansion variable).
    """

    rank: int
    slots: Tuple[Monomial, ...]
    nodes: Tuple[Tuple[Tuple[int, ...], Monomial], ...]
    W1: Monomial = W1_DEFAULT
    W2: Monomial = W2_DEFAULT

    def __post_init__(self):
        if self.rank not in N_SLOTS:
            raise ValueError("rank must be 1, 2 or 3")
        if len(self.slots) != N_SLOTS[self.rank]:
            raise ValueError(f"rank {self.rank} needs {N_SLOTS[self.rank]} slots")
        if len(self.nodes) != self.rank:
            raise ValueError("one instanton parameter per gauge node")

    @property
    def gamma(self) -> Monomial:
        return (self.W1 * self.W2) ** -1

    def with_slots(self, **kw) -> "Theory":
        names = SLOT_NAMES[self.rank]
        s = list(self.slots)
        for k, v in kw.items():
            s[names.index(k)] = v
        return Theory(self.rank, tuple(s), self.nodes, self.W1, self.W2)

    # kernel inputs ------------------------------------------------------
    def kernel_data(self):
        g = self.gamma
        S = self.slots
        sg = (1, -1)
        if self.rank == 1:
            U0, Ut, Us, U1, Ui = S
            L = [[g * U0 ** b * Ut * Us ** a for b in sg] for a in sg]
            R = [[g * U1 * Us ** (-a) * Ui ** b for b in sg] for a in sg]
            B = []
            V = [[[Us ** (b - a) for b in sg] for a in sg]]
        elif self.rank == 2:
            U0, Ut, S1, U1, S2, Uy, Ui = S
            L = [[g * U0 ** b * Ut * S1 ** a for b in sg] for a in sg]
            B = [[[g * S1 ** (-a) * U1 * S2 ** b for b in sg] for a in sg]]
            R = [[g * S2 ** (-c) * Uy * Ui ** (-e) for e in sg] for c in sg]
            V = [[[S1 ** (b - a) for b in sg] for a in sg],
                 [[S2 ** (b - a) for b in sg] for a in sg]]
        else:
            U0, Ux, S0, Ut, S1, U1, S2, Uy, Ui = S
            L = [[g * U0 ** (-b) * Ux * S0 ** a for b in sg] for a in sg]
            B = [[[g * S0 ** (-a) * Ut * S1 ** b for b in sg] for a in sg],
                 [[g * S1 ** (-c) * U1 * S2 ** e for e in sg] for c in sg]]
            R = [[g * S2 ** (-a) * Uy * Ui ** b for b in sg] for a in sg]
            V = [[[Sk ** (b - a) for b in sg] for a in sg] for Sk in (S0, S1, S2)]
        return L, B, R, V


def _node_orders(nodes, trunc):
    orders = []
    for grading, _ in nodes:
        best = None
        for g, tr in zip(grading, trunc):
            if g < 0:
                raise ValueError("instanton parameters must carry non-negative gradings")
            if g > 0:
                m = (tr - 1) // g
                best = m if best is None else min(best, m)
        if best is None:
            raise ValueError("an instanton parameter has no expansion variable")
        orders.append(max(best, 0))
    return orders


def instanton_series(th: Theory, point: ParamPoint, vars: Sequence[str], trunc: Sequence[int],
                     backend: Optional[str] = None) -> QSeries:
    """The instanton partition function as an exact truncated series."""
    ev = point.eval
    L, B, R, V = th.kernel_data()
    evm = lambda m: [[ev(x) for x in row] for row in m]
    q1 = ev(th.W1 ** 2)
    q2 = ev(th.W2 ** 2)
    orders = _node_orders(th.nodes, trunc)
    sums = kernel.quiver_sum(q1, q2, orders, evm(L), [evm(b) for b in B], evm(R), [evm(v) for v in V],
                             backend=backend)
    g2 = th.gamma ** -2
    weights = [ev(g2 * mono) for _, mono in th.nodes]
    n = len(vars)
    coeffs = {}
    for sizes, val in sums.items():
        exps = [0] * n
        for (grading, _), k in zip(th.nodes, sizes):
            for i in range(n):
                exps[i] += grading[i] * k
        if any(exps[i] >= trunc[i] for i in range(n)):
            continue
        w = val
        for wk, k in zip(weights, sizes):
            w *= wk ** k
        key = tuple(exps)
        coeffs[key] = coeffs.get(key, 0) + w
    return QSeries(vars, trunc, coeffs)


# ---------------------------------------------------------------------------
# convenience constructors with the standard expansion variables


def default_slots(rank: int) -> Tuple[Monomial, ...]:
    return tuple(half_unit(n) for n in SLOT_NAMES[rank])


def standard_theory(rank: int, slots=None, W1=W1_DEFAULT, W2=W2_DEFAULT) -> Theory:
    slots = tuple(slots) if slots is not None else default_slots(rank)
    nodes = tuple((tuple(4 if i == k else 0 for i in range(rank)), MONO_ONE) for k in range(rank))
    return Theory(rank, slots, nodes, W1, W2)


STANDARD_VARS = {1: ("t",), 2: ("t", "1/y"), 3: ("x/t", "t", "1/y")}


def f4_inst(theory: Optional[Theory], point: ParamPoint, order) -> QSeries:
    theory = theory or standard_theory(1)
    return instanton_series(theory, point, STANDARD_VARS[1], [quarters(order) + 4])


def f5_inst(theory: Optional[Theory], point: ParamPoint, order_t, order_y) -> QSeries:
    theory = theory or standard_theory(2)
    return instanton_series(theory, point, STANDARD_VARS[2], [quarters(order_t) + 4, quarters(order_y) + 4])


def f6_inst(theory: Optional[Theory], point: ParamPoint, order_x, order_t, order_y) -> QSeries:
    theory = theory or standard_theory(3)
    return instanton_series(theory, point, STANDARD_VARS[3],
                            [quarters(order_x) + 4, quarters(order_t) + 4, quarters(order_y) + 4])


# ---------------------------------------------------------------------------
# Higgsing identities


def _report(kind, residual: QSeries, extra=None):
    rep = {"kind": kind, "status": "PASS" if residual.is_zero() else "FAIL"}
    if not residual.is_zero():
        k, v = residual.sorted_items()[0]
        rep["first_failure"] = {"exponent": [str(rat(e) / 4) for e in k], "residual": str(v)}
    if extra:
        rep.update(extra)
    return rep


def higgs_check(kind: str, point: ParamPoint, order=2) -> dict:
    """Check one of the three F5 -> F4 degenerations through the given order."""
    order = int(order)
    tr = quarters(order) + 4
    q1 = lambda p: Monomial.qpow("q1", p)
    q2 = lambda p: Monomial.qpow("q2", p)
    U0, Ut, Us, U1, Ui = default_slots(1)
    f4 = standard_theory(1)
    if kind == "right-identity":
        # F5(th0, tht, sig, th1, thinf, [q1^-1 q2^-1], thinf; t, 1, y) = F4(t)
        th = standard_theory(2, (U0, Ut, Us, U1, Ui, (q1(-1) * q2(-1)) ** Fraction(1, 2), Ui))
        vars = ("t", "1/y")
        lhs = instanton_series(th, point, vars, (tr, tr))
        rhs4 = instanton_series(f4, point, ("t",), (tr,))
        rhs = QSeries(vars, (tr, tr), {(k[0], 0): v for k, v in rhs4.coeffs.items()})
        return _report(kind, lhs - rhs)
    if kind == "left-identity":
        # F5(th0, [q1 q2], th0, tht, sig, th1, thinf; y, t, 1) = F4(t)
        vars = ("y/t", "t")
        th = Theory(2, (U0, (q1(1) * q2(1)) ** Fraction(1, 2), U0, Ut, Us, U1, Ui),
                    (((4, 0), MONO_ONE), ((0, 4), MONO_ONE)))
        lhs = instanton_series(th, point, vars, (tr, tr))
        rhs4 = instanton_series(f4, point, ("t",), (tr,))
        rhs = QSeries(vars, (tr, tr), {(0, k[0]): v for k, v in rhs4.coeffs.items()})
        return _report(kind, lhs - rhs)
    if kind == "middle-identity":
        # F5(th0, tht, sig, [q1 q2], sig, th1, thinf; t, y, 1)
        #   = prefactor(t/y) * F4(th0, tht, sig, th1, thinf; q1 q2 t)
        vars = ("t/y", "y")
        th = Theory(2, (U0, Ut, Us, (q1(1) * q2(1)) ** Fraction(1, 2), Us, U1, Ui),
                    (((4, 0), MONO_ONE), ((0, 4), MONO_ONE)))
        lhs = instanton_series(th, point, vars, (tr, tr))
        f4s = Theory(1, default_slots(1), (((4, 4), q1(1) * q2(1)),))
        rhs = instanton_series(f4s, point, vars, (tr, tr))
        ev = point.eval
        g = ev(f4.gamma)
        qt = ev(Monomial.unit("thetat", 4))
        z = QSeries.monomial(vars, (tr, tr), (4, 0))
        pref = qspecial.dpoch_ratio_series([qt, g ** -4], [g ** -2, g ** -2 * qt],
                                           ev(q1(1)), ev(q2(1)), z)
        return _report(kind, lhs - pref * rhs)
    raise ValueError(f"unknown Higgs identity {kind!r}")


# ---------------------------------------------------------------------------
# numeric extra and one-loop factors


def _fpoint(point: ParamPoint):
    return {k: mp.mpf(v.numerator) / v.denominator for k, v in point.values.items()}


def mono_float(mono: Monomial, fpoint) -> mp.mpf:
    r = mp.mpf(1)
    for u, e in mono.items:
        r *= fpoint[u] ** e
    return r


def f4_extra_numeric(t, qt, q1t, g, q1, q2, prec=40):
    """F4^extra = 1/[(t q1^{thetat}; q1,q2)(gamma^{-2} t q1^{theta1}; q1,q2)].

    ``qt`` and ``q1t`` are q1^{thetat} and q1^{theta1}; ``g`` is gamma.
    """
    with mp.workdps(prec + 10):
        r = 1 / (qspecial.dpoch(t * qt, q1, q2, prec) * qspecial.dpoch(g ** -2 * t * q1t, q1, q2, prec))
    return +r


def f4_one_loop_numeric(U, g, q1, q2, prec=40):
    """F4^{1-loop} from the half-unit values U = (q1^{theta/2}, ...) in slot order."""
    U0, Ut, Us, U1, Ui = U
    with mp.workdps(prec + 10):
        num = qspecial.dpoch(Us ** 2, q1, q2, prec) * qspecial.dpoch(g ** -2 * Us ** 2, q1, q2, prec)
        den = mp.mpf(1)
        for e in (1, -1):
            for ep in (1, -1):
                den *= qspecial.dpoch(g ** -1 * U0 ** e * Ut ** ep * Us, q1, q2, prec)
                den *= qspecial.dpoch(g ** -1 * U1 ** ep * Ui ** e * Us, q1, q2, prec)
        r = num / den
    return +r


def f5_extra_numeric(t, y, U, g, q1, q2, prec=40):
    """F5^extra for half-unit slot values U = (theta0, thetat, sigma1,
    theta1, sigma2, thetay, thetainf); t and y are the instanton variables."""
    U0, Ut, S1, U1, S2, Uy, Ui = U
    D = lambda u: qspecial.dpoch(u, q1, q2, prec)
    with mp.workdps(prec + 10):
        m = S1 * U1 / S2
        r = D(t * m / g) * D(t * Ut ** 2 * m / g)
        r /= D(t * Ut ** 2) * D(t * U1 ** 2 / g ** 2) * D(t / y * U1 ** 2 * Ut ** 2) \
            * D(t / y * U1 ** 2 * Uy ** 2 / g ** 2)
        mm = U1 * S2 / S1
        r *= D(mm / (g * y)) * D(Uy ** 2 * mm / (g * y))
        r /= D(U1 ** 2 / y) * D(Uy ** 2 / (g ** 2 * y))
    return +r


def f4_full_numeric(point: ParamPoint, order, prec=40, t=None):
    """Coefficients of F4^inst as floats together with the extra and one-loop
    factors at the float image of ``point``.  Returns (extra, one_loop, series)
    where ``series`` maps t-exponents to floats."""
    fp = _fpoint(point)
    with mp.workdps(prec + 10):
        q1 = fp["q1"] ** 4
        q2 = fp["q2"] ** 4
        g = 1 / (fp["q1"] ** 2 * fp["q2"] ** 2)
        U = [fp[n] ** 2 for n in SLOT_NAMES[1]]
        if not (abs(q1) < 1 and abs(q2) < 1):
            raise ValueError("f4_full_numeric needs |q1|, |q2| < 1")
        ser = f4_inst(None, point, order)
        series = {rat(k[0]) / 4: mp.mpf(v.numerator) / v.denominator for k, v in ser.coeffs.items()}
        t = mp.mpf(t) if t is not None else mp.mpf("0.01")
        extra = f4_extra_numeric(t, U[1] ** 2, U[3] ** 2, g, q1, q2, prec)
        one = f4_one_loop_numeric(U, g, q1, q2, prec)
    return extra, one, series
