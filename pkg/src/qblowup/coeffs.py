"""Blowup coefficients C4, C5, A4, A5, the C5 -> C4 Higgsing reductions and
the q2 -> 1 limit of C4.

Every formula is written once against an arithmetic *context*:

* ``ExactContext`` works with ``Monomial`` elements and evaluates them at an
  exact ``ParamPoint``; fractional powers must land on the unit lattice.
* ``FloatContext`` works with mpmath reals; fractional powers are principal
  real powers of positive bases.

Slots hold half-unit values U = Q1^{theta/2} where Q1 is the first Omega
parameter of the theory (see ``nekrasov``).  C-type coefficients return the
scalar part and, separately, the exponents of the instanton variables
(n^2, or (n1^2, n2^2)); pass explicit ``t`` elements to fold them in.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .exact import MONO_ONE, Monomial, ParamPoint, frac, rat
from .qspecial import _as_index, c_n, g_n, qpoch, gamma_q, barnes_gq

W1_DEFAULT = Monomial.unit("q1", 2)
W2_DEFAULT = Monomial.unit("q2", 2)

SIGNS = (1, -1)


class ExactContext:
    """Monomial elements evaluated exactly at a point."""

    exact = True

    def __init__(self, point: ParamPoint, W1: Monomial = W1_DEFAULT, W2: Monomial = W2_DEFAULT):
        self.point = point
        self.W1, self.W2 = W1, W2
        self.q1 = W1 ** 2
        self.q2 = W2 ** 2
        self.gamma = (W1 * W2) ** -1
        self.one = MONO_ONE
        self._q1v = point.eval(self.q1)
        self._q2v = point.eval(self.q2)
        self._gv = point.eval(self.gamma)

    def elem(self, mono: Monomial):
        return mono

    def half(self, name: str, shift=0) -> Monomial:
        """q1^{(theta_name + shift)/2} in this background."""
        return Monomial.unit(name, 2) * self.q1 ** (frac(shift) / 2)

    def val(self, x):
        return self.point.eval(x)

    def pow(self, x, e):
        e = frac(e)
        return x ** (int(e) if e.denominator == 1 else e)

    def c(self, n, x):
        return _c_exact(_as_index(n), self.val(x), self._q1v, self._q2v)

    def g(self, n, x):
        return g_n(self.val(x), _as_index(n), self._gv)

    def qpoch(self, x, base, n):
        return qpoch(self.val(x), self.val(base), _as_index(n))

    def number(self, r):
        return rat(r)


@lru_cache(maxsize=1 << 16)
def _c_exact(n, v, q1, q2):
    return c_n(v, n, q1, q2)


class FloatContext:
    """mpmath real elements.  ``values`` maps unit names to their values as
    fourth roots, exactly like a ``ParamPoint``."""

    exact = False

    def __init__(self, values, W1=None, W2=None, prec: int = 40):
        self.prec = prec
        self.values = {k: mp.mpf(v) if not hasattr(v, "denominator") else mp.mpf(int(v.numerator)) / int(v.denominator)
                       for k, v in dict(values).items()}
        self.W1 = mp.mpf(W1) if W1 is not None else self.values["q1"] ** 2
        self.W2 = mp.mpf(W2) if W2 is not None else self.values["q2"] ** 2
        self.q1 = self.W1 ** 2
        self.q2 = self.W2 ** 2
        self.gamma = 1 / (self.W1 * self.W2)
        self.one = mp.mpf(1)

    @classmethod
    def from_point(cls, point: ParamPoint, prec: int = 40) -> "FloatContext":
        return cls(point.values, prec=prec)

    def elem(self, mono: Monomial):
        r = mp.mpf(1)
        for u, e in mono.items:
            r *= self.values[u] ** e
        return r

    def half(self, name: str, shift=0):
        return self.values[name] ** 2 * mp.power(self.q1, mp.mpf(frac(shift).numerator) / frac(shift).denominator / 2)

    def val(self, x):
        return x

    def pow(self, x, e):
        e = frac(e)
        if e.denominator == 1:
            return x ** int(e)
        return mp.power(x, mp.mpf(e.numerator) / e.denominator)

    def c(self, n, x):
        return c_n(x, _as_index(n), self.q1, self.q2)

    def g(self, n, x):
        n = frac(n)
        if n.denominator == 1:
            return g_n(x, int(n), self.gamma)
        e1 = n * (n - 1) / 2
        e2 = n * (n - 1) * (n + 1) / 3
        return mp.power(-x, mp.mpf(e1.numerator) / e1.denominator) * \
            mp.power(self.gamma, -mp.mpf(e2.numerator) / e2.denominator)

    def qpoch(self, x, base, n):
        return qpoch(x, base, _as_index(n))

    def number(self, r):
        if hasattr(r, "denominator"):
            return mp.mpf(int(r.numerator)) / int(r.denominator)
        return mp.mpf(r)


def _h(x) -> Fraction:
    return frac(x)


# ---------------------------------------------------------------------------
# C4 and C5


def c4_parts(ctx, U, jj, n, d):
    """Scalar part of C4 and the exponent n^2 of t.

    ``U = (U0, Ut, Us, U1, Ui)`` are half units; ``jj = (j1, j2, j3, j4)``.
    """
    U0, Ut, Us, U1, Ui = U
    j1, j2, j3, j4 = jj
    n = _h(n)
    g = ctx.gamma
    k = j2 + j3 + d
    val = ctx.val
    r = ctx.number(1)
    r *= val(ctx.pow(Us, 2 * n * (1 + k)))
    r *= val(ctx.pow(U1 ** 2 * Ut ** 2 * g ** (-2 * k), n * n))
    for e in SIGNS:
        for ep in SIGNS:
            r *= ctx.c(n * ep + Fraction(1 + e * j1 + j2, 2), g * U0 ** e * Ut * Us ** ep)
            r *= ctx.c(n * ep + Fraction(1 + j3 + e * j4, 2), g * U1 * Ui ** e * Us ** ep)
    r /= ctx.c(2 * n, Us ** 2) * ctx.c(-2 * n, Us ** -2)
    return r, n * n


def c4_coeff(ctx, U, jj, n, d, t=None):
    """C4; with ``t`` given (a context element) the t^{n^2} factor is folded
    in and a plain value is returned, otherwise ``(scalar, n^2)``."""
    r, e = c4_parts(ctx, U, jj, n, d)
    if t is None:
        return r, e
    return r * ctx.val(ctx.pow(t, e))


def c5_parts(ctx, U, jj, n, d):
    """Scalar part of C5 and the exponents (n1^2, n2^2) of (t1, t2).

    ``U = (U0, Ut, S1, U1, S2, Uy, Ui)``, ``jj = (j1..j5)``, ``n = (n1, n2)``,
    ``d = (d1, d2)``.
    """
    U0, Ut, S1, U1, S2, Uy, Ui = U
    j1, j2, j3, j4, j5 = jj
    n1, n2 = _h(n[0]), _h(n[1])
    d1, d2 = d
    g = ctx.gamma
    val = ctx.val
    k1 = j2 + j3 + d1
    k2 = j3 + j4 + d2
    r = ctx.number(1)
    r *= val(ctx.pow(S1, 2 * n1 * (1 + k1)) * ctx.pow(S2, 2 * n2 * (1 + k2)))
    r *= val(ctx.pow(Ut ** 2 * U1 ** 2 * g ** (-2 * k1), n1 * n1))
    r *= val(ctx.pow(U1 ** 2 * Uy ** 2 * g ** (-2 * k2), n2 * n2))
    for e in SIGNS:
        for ep in SIGNS:
            r *= ctx.c(n1 * ep + Fraction(1 + e * j1 + j2, 2), g * U0 ** e * Ut * S1 ** ep)
            r *= ctx.c(n1 * ep + n2 * e + Fraction(1 + j3, 2), g * S1 ** ep * U1 * S2 ** e)
            r *= ctx.c(n2 * e + Fraction(1 + j4 + ep * j5, 2), g * S2 ** e * Uy * Ui ** ep)
    r /= ctx.c(2 * n1, S1 ** 2) * ctx.c(-2 * n1, S1 ** -2)
    r /= ctx.c(2 * n2, S2 ** 2) * ctx.c(-2 * n2, S2 ** -2)
    return r, (n1 * n1, n2 * n2)


def c5_coeff(ctx, U, jj, n, d, t=None):
    r, e = c5_parts(ctx, U, jj, n, d)
    if t is None:
        return r, e
    t1, t2 = t
    return r * ctx.val(ctx.pow(t1, e[0]) * ctx.pow(t2, e[1]))


def c_indices_c4(jj, n):
    """All c-indices generated by C4 (for parity scans)."""
    j1, j2, j3, j4 = jj
    n = _h(n)
    out = []
    for e in SIGNS:
        for ep in SIGNS:
            out.append(n * ep + Fraction(1 + e * j1 + j2, 2))
            out.append(n * ep + Fraction(1 + j3 + e * j4, 2))
    out += [2 * n, -2 * n]
    return out


def c_indices_c5(jj, n):
    j1, j2, j3, j4, j5 = jj
    n1, n2 = _h(n[0]), _h(n[1])
    out = []
    for e in SIGNS:
        for ep in SIGNS:
            out.append(n1 * ep + Fraction(1 + e * j1 + j2, 2))
            out.append(n1 * ep + n2 * e + Fraction(1 + j3, 2))
            out.append(n2 * e + Fraction(1 + j4 + ep * j5, 2))
    out += [2 * n1, -2 * n1, 2 * n2, -2 * n2]
    return out


# ---------------------------------------------------------------------------
# A4 and A5 (coefficients of the Weyl-invariant relations)


def a4_coeff(ctx, U, jj, n, d, t):
    """A4 including its t-dependence; ``t`` is a context element."""
    U0, Ut, Us, U1, Ui = U
    j1, j2, j3, j4 = jj
    n = _h(n)
    g = ctx.gamma
    val = ctx.val
    k = j2 + j3 + d
    r = val(ctx.pow(Us, 2 * n * (1 + k)))
    r *= val(ctx.pow(t * U1 ** 2 * Ut ** 2 * g ** (-2 * k), n * n))
    r /= ctx.c(-j2 - d, t ** -1 * Ut ** -2)
    r /= ctx.c(1 - j3 - d, g ** 2 * t ** -1 * U1 ** -2)
    r *= ctx.g(2 * n, Us ** 2)
    for e in SIGNS:
        r /= ctx.g(n + Fraction(e * j1 + j2 + 1, 2), g * U0 ** e * Ut * Us)
        r /= ctx.g(n + Fraction(j3 + e * j4 + 1, 2), g * U1 * Ui ** e * Us)
    return r


def a5_coeff(ctx, U, jj, n, d, t):
    """A5 including its (t1, t2)-dependence.

    The displayed formula carries q2^{n2 sigma2 (...)} in the prefactor; we
    use q1 there, which is what the C5 prefactor and the A4 analogy require.
    """
    U0, Ut, S1, U1, S2, Uy, Ui = U
    j1, j2, j3, j4, j5 = jj
    n1, n2 = _h(n[0]), _h(n[1])
    d1, d2 = d
    t1, t2 = t
    g = ctx.gamma
    val = ctx.val
    h = Fraction(1, 2)
    r = val(ctx.pow(S1, 2 * n1 * (1 + d1 + j2 + j3)) * ctx.pow(S2, 2 * n2 * (1 + d2 + j3 + j4)))
    r *= val(ctx.pow(t1 * Ut ** 2 * U1 ** 2 * g ** (-2 * (d1 + j2 + j3)), n1 * n1))
    r *= val(ctx.pow(t2 * U1 ** 2 * Uy ** 2 * g ** (-2 * (d2 + j3 + j4)), n2 * n2))
    mid = S1 ** -1 * U1 ** -1 * S2        # q1^{(-s1 - th1 + s2)/2}
    r *= ctx.c(h - d1 - Fraction(j3, 2) - n1 + n2, g * t1 ** -1 * mid)
    r *= ctx.c(h - d1 - j2 - n1 - Fraction(j3, 2) + n2, g * t1 ** -1 * Ut ** -2 * mid)
    r /= ctx.c(-d1 - j2, t1 ** -1 * Ut ** -2)
    r /= ctx.c(1 - d1 - j3, g ** 2 * t1 ** -1 * U1 ** -2)
    r /= ctx.c(-d1 - d2 - j2 - j3, (t1 * t2) ** -1 * U1 ** -2 * Ut ** -2)
    mid2 = S1 * U1 ** -1 * S2 ** -1       # q1^{(s1 - th1 - s2)/2}
    r *= ctx.c(h - d2 + n1 - Fraction(j3, 2) - n2, g * t2 ** -1 * mid2)
    r *= ctx.c(h - d2 - j4 + n1 - Fraction(j3, 2) - n2, g * t2 ** -1 * Uy ** -2 * mid2)
    r /= ctx.c(1 - d1 - d2 - j3 - j4, g ** 2 * (t1 * t2) ** -1 * U1 ** -2 * Uy ** -2)
    r /= ctx.c(-d2 - j3, t2 ** -1 * U1 ** -2)
    r /= ctx.c(1 - d2 - j4, g ** 2 * t2 ** -1 * Uy ** -2)
    r *= ctx.c(h - n1 + Fraction(j3, 2) + n2, g * S1 ** -1 * U1 * S2)
    r *= ctx.c(h + n1 + Fraction(j3, 2) - n2, g * S2 ** -1 * U1 * S1)
    r *= ctx.g(2 * n1, S1 ** 2) * ctx.g(2 * n2, S2 ** 2)
    r /= ctx.g(n1 + n2 + Fraction(1 + j3, 2), g * S1 * U1 * S2)
    for e in SIGNS:
        r /= ctx.g(n1 + Fraction(1 + e * j1 + j2, 2), g * U0 ** e * Ut * S1)
        r /= ctx.g(n2 + Fraction(1 + j4 + e * j5, 2), g * S2 * Uy * Ui ** e)
    return r


def a4_index_integrality(jj, n, d) -> bool:
    """True when every c and g index of A4 is an integer."""
    j1, j2, j3, j4 = jj
    n = _h(n)
    idx = [2 * n] + [n + Fraction(e * j1 + j2 + 1, 2) for e in SIGNS] + \
        [n + Fraction(j3 + e * j4 + 1, 2) for e in SIGNS]
    return all(Fraction(i).denominator == 1 for i in idx)


def a5_index_integrality(jj, n, d) -> bool:
    j1, j2, j3, j4, j5 = jj
    n1, n2 = _h(n[0]), _h(n[1])
    h = Fraction(1, 2)
    idx = [h - Fraction(j3, 2) - n1 + n2, h + n1 - Fraction(j3, 2) - n2, n1 + n2 + Fraction(1 + j3, 2),
           2 * n1, 2 * n2] + [n1 + Fraction(1 + e * j1 + j2, 2) for e in SIGNS] + \
        [n2 + Fraction(1 + j4 + e * j5, 2) for e in SIGNS]
    return all(Fraction(i).denominator == 1 for i in idx)


# ---------------------------------------------------------------------------
# C5 -> C4 reductions


class OffSupport(ValueError):
    """A reduction was evaluated off its Kronecker-delta support in strict mode."""


def reduction_final_node(ctx, thetas, jj, n, d, r, h, t, y, strict=False):
    """Both sides of the final-node reduction.

    ``thetas`` are the half units (U0, Ut, Us, U1, Ui) of the un-Higgsed
    parameters; the theta_inf slot of C5 is Ui * q1^{-1/2}, the sigma2 slot
    Ui * q1^{-(1+h)/2} and the theta_y slot q1^{-1} q2^{-1/2}.  ``jj`` is
    (j1, j2, j3, j4), ``n = (n1, n2)``; ``t`` and ``y`` are elements.
    Returns (lhs, rhs).
    """
    U0, Ut, Us, U1, Ui = thetas
    j1, j2, j3, j4 = jj
    n1, n2 = _h(n[0]), _h(n[1])
    q1, q2 = ctx.q1, ctx.q2
    half = lambda x, e: ctx.pow(x, Fraction(e))
    Uinf = Ui * half(q1, Fraction(-1, 2))
    Us2 = Ui * half(q1, Fraction(-(1 + h), 2))
    Uy = q1 ** -1 * half(q2, Fraction(-1, 2))
    U5 = (U0, Ut, Us, U1, Us2, Uy, Uinf)
    on = Fraction(j4) == 2 * n2
    if not on and strict:
        raise OffSupport("j4 != 2 n2")
    lhs = c5_coeff(ctx, U5, (j1, j2, j3, 2, j4 - h), (n1, n2), (d, -r), (t, y ** -1))
    if not on:
        return lhs, ctx.number(0)
    val = ctx.val
    # q1^{theta_inf - 1 - h} as a half unit squared
    Q_ih = Us2 ** 2
    rhs = (1 - val(q1))
    rhs *= val(ctx.pow(Us2, j4 * (3 + j3 - r)))
    rhs *= val(ctx.pow(y ** -1 * (q1 * q2) ** (j3 + 2 - r) * U1 ** 2 * q1 ** -2 * q2 ** -1, Fraction(j4 * j4, 4)))
    for e in SIGNS:
        num = ctx.c(Fraction(3, 2) + e * (Fraction(h, 2) - j4),
                    ctx.pow(q1, e * (1 + Fraction(h, 2)) - Fraction(3, 2)) * q2 ** -1 * Ui ** (-2 * e))
        den = ctx.c(e * j4, Q_ih ** e)
        rhs *= num / den
    rhs *= c4_coeff(ctx, (U0, Ut, Us, U1, Us2), (j1, j2, j3, j4), n1, d, t)
    return lhs, rhs


def reduction_middle_node(ctx, thetas, jj, n, d, h, t, strict=False):
    """Both sides of the middle-node reduction.

    ``thetas = (U0, Ut, Us, U1, Ui)``; the C5 slots are (U0, Ut, Us,
    q1^{-1} q2^{-1/2}, Us q1^{h/2}, U1, Ui); ``jj = (j1, j2, j3, j4)``,
    ``n = (n1, n2)``, ``d = (d1, d2)``, ``t = (t1, t2)``.  Returns (lhs, rhs).
    """
    U0, Ut, Us, U1, Ui = thetas
    j1, j2, j3, j4 = jj
    n1, n2 = _h(n[0]), _h(n[1])
    d1, d2 = d
    t1, t2 = t
    q1, q2 = ctx.q1, ctx.q2
    g = ctx.gamma
    val = ctx.val
    S2 = Us * ctx.pow(q1, Fraction(h, 2))
    U1y = q1 ** -1 * ctx.pow(q2, Fraction(-1, 2))
    U5 = (U0, Ut, Us, U1y, S2, U1, Ui)
    on = n1 == n2 + Fraction(h, 2)
    if not on and strict:
        raise OffSupport("n1 != n2 + h/2")
    lhs = c5_coeff(ctx, U5, (j1, j2, 2, j3, j4), (n1, n2), (d1, d2), (t1, t2))
    if not on:
        return lhs, ctx.number(0)
    rhs = val(ctx.pow(U1 ** 2 * t2, Fraction(1, 4) - h * n1))
    rhs *= val(ctx.pow(Us, -h * (1 + d2 + j3) + 4 * n1))
    rhs *= val(ctx.pow(q1, Fraction(-2 - d2 - j3, 4) + h * n1))
    rhs *= val(ctx.pow(q2, Fraction(1 + d2 + j3, 4) - h * (d2 + j3) * n1))
    rhs *= val(q1) - 1
    rhs *= ctx.qpoch(Us ** (2 * h), q2, 2 * h * n1)
    for e in SIGNS:
        arg = g ** -1 * Us ** h * U1 ** -1 * ctx.pow(q1, Fraction(-1, 2)) * Ui ** (-e)
        rhs /= ctx.qpoch(arg, q2, h * n1 - Fraction(j3 + e * j4, 2))
    U4 = (U0, Ut, Us, U1 * ctx.pow(q1, Fraction(1, 2)), Ui)
    rhs *= c4_coeff(ctx, U4, (j1, j2, j3 - 1, j4), n1, d1 + d2, q2 * t1 * t2)
    return lhs, rhs


# ---------------------------------------------------------------------------
# q2 -> 1 limit of C4


def c_tau(th0, tht, sig, th1, thi, q, prec: int = 40):
    """The C-coefficient of the tau function (product of q-Barnes G values)."""
    with mp.workdps(prec + 10):
        r = mp.mpf(1)
        for e in SIGNS:
            for ep in SIGNS:
                r *= barnes_gq(1 + e * th0 / 2 + tht / 2 + ep * sig / 2, q, prec)
                r *= barnes_gq(1 + th1 / 2 + e * thi / 2 + ep * sig / 2, q, prec)
        r /= barnes_gq(1 + sig, q, prec) * barnes_gq(1 - sig, q, prec)
    return +r


def c4_limit_coeff(thetas, jj, n, d, q, t, prec: int = 40):
    """Closed form of lim_{q2 -> 1} C4 with q1 = q (float regime).

    ``thetas = (theta0, thetat, sigma, theta1, thetainf)`` are reals.  Powers
    of each q-Gamma value and of (q - 1) are accumulated before evaluation so
    that half-integer exponents combine to integers where the formula
    requires it.
    """
    th0, tht, sig, th1, thi = [mp.mpf(x) for x in thetas]
    j1, j2, j3, j4 = jj
    n = _h(n)
    with mp.workdps(prec + 10):
        q = mp.mpf(q)
        t = mp.mpf(t)
        nn = mp.mpf(n.numerator) / n.denominator
        r = mp.power(t * q ** d, nn * nn)
        r *= c_tau(th0 + j1, tht + j2, sig + 2 * nn, th1 + j3, thi + j4, q, prec)
        r /= c_tau(th0, tht - 1, sig, th1 - 1, thi, q, prec)
        gam = lambda u: gamma_q(u, q, prec)
        brace = q ** ((d - 1) * sig) * gam(1 + sig) ** 2 / gam(1 - sig) ** 2
        expo = {}
        for e in SIGNS:
            for ep in SIGNS:
                a = (1 + e * th0 + tht + ep * sig) / 2
                b = (1 + th1 + e * thi + ep * sig) / 2
                brace *= gam(a) ** (-ep) * gam(b) ** (-ep)
                expo[a] = expo.get(a, 0) + Fraction(-1, 2) - Fraction(e * j1, 2) - Fraction(j2, 2)
                expo[b] = expo.get(b, 0) + Fraction(-1, 2) - Fraction(j3, 2) - Fraction(e * j4, 2)
        r *= mp.power(brace, nn)
        for a, k in expo.items():
            r *= mp.power(gam(a), mp.mpf(k.numerator) / k.denominator)
        k_qm1 = Fraction(j1 * j1 + j2 * j2 + j3 * j3 + j4 * j4, 2) - 1
        if k_qm1.denominator != 1:
            raise ValueError("odd total of squared shifts: (q-1) power is not an integer")
        r *= (q - 1) ** int(k_qm1)
        qe = mp.mpf(j2 - 3 * j1 * j1 * j2 - j2 ** 3 + j3 - 3 * j3 * j4 * j4 - j3 ** 3) / 12 \
            - j1 * j2 * th0 / 2 + (1 - j3 * j3 - j4 * j4) * th1 / 4 + (1 - j1 * j1 - j2 * j2) * tht / 4 \
            - j3 * j4 * thi / 2
        r *= q ** qe
    return +r


def c4_at_q2(thetas, jj, n, d, q, q2, t, prec: int = 40):
    """C4 at real (q1, q2) = (q, q2) with real thetas (for limit checks)."""
    th0, tht, sig, th1, thi = [mp.mpf(x) for x in thetas]
    with mp.workdps(prec + 10):
        q, q2 = mp.mpf(q), mp.mpf(q2)
        ctx = FloatContext({"q1": mp.root(q, 4), "q2": mp.root(q2, 4)}, prec=prec)
        U = tuple(q ** (x / 2) for x in (th0, tht, sig, th1, thi))
        r = c4_coeff(ctx, U, jj, n, d, mp.mpf(t))
    return +r


LIMIT_DELTAS = ("1e-2", "1e-3", "1e-4")


def extrapolate_log(values, deltas):
    """delta -> 0 extrapolation of positive-or-negative samples.

    The samples are extrapolated in log|.|, which removes the O(delta)
    drift of products with many nearly-cancelling factors far better than
    extrapolating the values themselves; the sign is taken from the sample
    closest to the limit.
    """
    from .qspecial import richardson
    with mp.workdps(mp.mp.dps + 10):
        lg = richardson([mp.log(abs(v)) for v in values], deltas)
        sign = 1 if values[-1] > 0 else -1
    return sign * mp.exp(lg)


def c_n_limit_check(u, n: int, q, deltas=LIMIT_DELTAS, prec: int = 40) -> dict:
    """Compare ``c_n_limit`` with the extrapolated c_n(q^u) at q2 = 1 - delta."""
    from .qspecial import c_n_limit
    with mp.workdps(prec + 10):
        q, u = mp.mpf(q), mp.mpf(u)
        ds = [mp.mpf(x) for x in deltas]
        vals = [c_n(q ** u, n, q, 1 - dd) for dd in ds]
        ex = extrapolate_log(vals, ds)
        lim = c_n_limit(u, n, q, prec)
        err = abs(ex / lim - 1)
    return {"n": n, "extrapolated": mp.nstr(ex, 15), "closed_form": mp.nstr(lim, 15),
            "rel_error": float(err)}


def c4_limit_check(thetas, jj, n, d, q, t, deltas=LIMIT_DELTAS, prec: int = 40) -> dict:
    """Compare ``c4_limit_coeff`` with the extrapolated C4 at q2 = 1 - delta."""
    with mp.workdps(prec + 10):
        ds = [mp.mpf(x) for x in deltas]
        vals = [c4_at_q2(thetas, jj, n, d, q, 1 - dd, t, prec) for dd in ds]
        ex = extrapolate_log(vals, ds)
        lim = c4_limit_coeff(thetas, jj, n, d, q, t, prec)
        err = abs(ex / lim - 1)
    return {"j": list(jj), "n": str(n), "d": d, "extrapolated": mp.nstr(ex, 15),
            "closed_form": mp.nstr(lim, 15), "rel_error": float(err)}


# ---------------------------------------------------------------------------
# one-loop and extra-factor ratio identities (float regime)


def one_loop_ratio(ctx: FloatContext, U, jj, n, d, prec: int = 40):
    """Both sides of the one-loop ratio identity: (lhs, rhs)."""
    from .nekrasov import f4_one_loop_numeric
    U0, Ut, Us, U1, Ui = U
    j1, j2, j3, j4 = jj
    n = _h(n)
    q1, q2 = ctx.q1, ctx.q2
    P = lambda x, e: ctx.pow(x, e)
    with mp.workdps(prec + 10):
        base = f4_one_loop_numeric(U, ctx.gamma, q1, q2, prec)
        # leg 1: (q1, q2/q1), slots q1^{(theta+j)/2}
        s1 = (U0 * P(q1, Fraction(j1, 2)), Ut * P(q1, Fraction(j2, 2)), Us * P(q1, n),
              U1 * P(q1, Fraction(j3, 2)), Ui * P(q1, Fraction(j4, 2)))
        g1 = 1 / mp.sqrt(q1 * q2 / q1)
        leg1 = f4_one_loop_numeric(s1, g1, q1, q2 / q1, prec)
        # leg 2: (q1/q2, q2); slot values q1^{theta} q2^{j} are rewritten as
        # half units of Q1 = q1/q2 by taking square roots of the full values
        full = lambda Ux, j: mp.sqrt(Ux ** 2 * P(q2, j))
        s2 = (full(U0, j1), full(Ut, j2), full(Us, 2 * n), full(U1, j3), full(Ui, j4))
        g2 = 1 / mp.sqrt(q1 / q2 * q2)
        leg2 = f4_one_loop_numeric(s2, g2, q1 / q2, q2, prec)
        lhs = base / (leg1 * leg2)
        g = ctx.gamma
        rhs = ctx.g(2 * n, Us ** 2)
        for e in SIGNS:
            rhs /= ctx.g(n + Fraction(-e * j1 + j2 + 1, 2), g * U0 ** (-e) * Ut * Us)
            rhs /= ctx.g(n + Fraction(j3 - e * j4 + 1, 2), g * U1 * Ui ** (-e) * Us)
        c4, _ = c4_parts(ctx, U, jj, n, d)
        k = j2 + j3 + d
        pre = ctx.pow(Us, 2 * n * (1 + k)) * ctx.pow(U1 ** 2 * Ut ** 2 * g ** (-2 * k), n * n)
        rhs *= pre / c4
    return +lhs, +rhs


def extra_ratio(ctx: FloatContext, U, jj, d, t, prec: int = 40):
    """Both sides of the extra-factor ratio identity: (lhs, rhs)."""
    from .nekrasov import f4_extra_numeric
    U0, Ut, Us, U1, Ui = U
    j1, j2, j3, j4 = jj
    q1, q2 = ctx.q1, ctx.q2
    with mp.workdps(prec + 10):
        t = mp.mpf(t)
        qt, q1t = Ut ** 2, U1 ** 2
        base = f4_extra_numeric(t, qt, q1t, ctx.gamma, q1, q2, prec)
        leg1 = f4_extra_numeric(t * q1 ** d, qt * q1 ** j2, q1t * q1 ** j3, 1 / mp.sqrt(q2), q1, q2 / q1, prec)
        leg2 = f4_extra_numeric(t * q2 ** d, qt * q2 ** j2, q1t * q2 ** j3, 1 / mp.sqrt(q1), q1 / q2, q2, prec)
        lhs = base / (leg1 * leg2)
        g = ctx.gamma
        rhs = 1 / (ctx.c(-j2 - d, 1 / (t * qt)) * ctx.c(1 - j3 - d, g ** 2 / (t * q1t)))
    return +lhs, +rhs
