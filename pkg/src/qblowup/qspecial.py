"""q-special functions.

Finite products (``qpoch``, ``c_n``, ``g_n``) work on any field elements that
support ``+ - * / **`` with integer exponents, so they are used both with
exact ``mpq`` values and with ``mpmath`` floats.  Infinite products live in the
float regime and are computed with ``mpmath`` at an explicit precision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import mpmath as mp

from .exact import QSeries, rat, ZERO, ONE


class IndexError_(ValueError):
    """Non-integer index passed to c_n or g_n."""


def _as_index(n) -> int:
    if isinstance(n, int):
        return n
    f = Fraction(n)
    if f.denominator != 1:
        raise IndexError_(f"index {n} is not an integer")
    return int(f)


def qpoch(v, q, n: int):
    """Finite q-Pochhammer (v;q)_n for any integer n."""
    n = _as_index(n)
    one = v ** 0
    r = one
    if n >= 0:
        qi = one
        for _ in range(n):
            r = r * (one - v * qi)
            qi = qi * q
        return r
    qi = one
    for _ in range(-n):
        qi = qi / q
        r = r * (one - v * qi)
    if r == 0:
        raise ZeroDivisionError("(v;q)_n with n<0 has a vanishing factor")
    return one / r


def c_n(v, n, q1, q2):
    """The finite double product c_n(v) built over the (q1, q2) triangle."""
    n = _as_index(n)
    if v == 0:
        raise ZeroDivisionError("c_n(v) needs v != 0")
    one = v ** 0
    vi = one / v
    r = one
    if n >= 2:
        a = one / q1
        b = one / q2
        ai = a
        for i in range(n - 1):
            bj = b
            for j in range(n - 1 - i):
                r = r * (one - ai * bj * vi)
                bj = bj * b
            ai = ai * a
    elif n <= -1:
        ai = one
        for i in range(-n):
            bj = one
            for j in range(-n - i):
                r = r * (one - ai * bj * vi)
                bj = bj * q2
            ai = ai * q1
    return r


def g_n(v, n, gamma):
    """g_n(v) = (-v)^{n(n-1)/2} gamma^{-n(n-1)(n+1)/3}."""
    n = _as_index(n)
    e1 = n * (n - 1) // 2
    e2 = n * (n - 1) * (n + 1) // 3
    return (-v) ** e1 * gamma ** (-e2)


# ---------------------------------------------------------------------------
# float regime

def _tol():
    return mp.mpf(10) ** (-mp.mp.dps - 5)


def qpoch_inf(u, q):
    """(u;q)_infinity for |q| < 1."""
    if not abs(q) < 1:
        raise ValueError("need |q| < 1")
    tol = _tol()
    r = mp.mpf(1)
    term = mp.mpf(u)
    while abs(term) > tol:
        r *= 1 - term
        term *= q
    return r


def gamma_q(u, q, prec: int = 40):
    """q-Gamma function for 0 < q < 1."""
    with mp.workdps(prec + 10):
        u, q = mp.mpf(u), mp.mpf(q)
        if not 0 < q < 1:
            raise ValueError("q must lie in (0, 1)")
        r = qpoch_inf(q, q) / qpoch_inf(q ** u, q) * (1 - q) ** (1 - u)
    return +r


def barnes_gq(u, q, prec: int = 40):
    """q-Barnes G function for 0 < q < 1."""
    with mp.workdps(prec + 10):
        u, q = mp.mpf(u), mp.mpf(q)
        if not 0 < q < 1:
            raise ValueError("q must lie in (0, 1)")
        r = _dpoch_equal(q ** u, q) / _dpoch_equal(q, q) * qpoch_inf(q, q) ** (u - 1) \
            * (1 - q) ** (-(u - 1) * (u - 2) / 2)
    return +r


def _dpoch_equal(x, q):
    """(x;q,q)_infinity = prod_{m>=0} (1 - x q^m)^{m+1}."""
    tol = _tol()
    r = mp.mpf(1)
    term = mp.mpf(x)
    m = 0
    while abs(term) * (m + 1) > tol:
        r *= (1 - term) ** (m + 1)
        term *= q
        m += 1
    return r


def q_number(u, q):
    return (1 - q ** u) / (1 - q)


def theta(z, q, prec: int = 40):
    """theta(z;q) = (z;q)_inf (q/z;q)_inf."""
    with mp.workdps(prec + 10):
        r = qpoch_inf(z, q) * qpoch_inf(q / z, q)
    return +r


def theta_sum(z, q, prec: int = 40):
    """Triple-product sum form of theta, used as an independent check."""
    with mp.workdps(prec + 10):
        z, q = mp.mpf(z), mp.mpf(q)
        tol = _tol()
        s = mp.mpf(0)
        k = 0
        while True:
            t1 = (-1) ** k * q ** (k * (k - 1) // 2) * z ** k
            t2 = (-1) ** (-k - 1) * q ** ((-k - 1) * (-k - 2) // 2) * z ** (-k - 1)
            s += t1 + t2
            if abs(t1) < tol and abs(t2) < tol and k > 2:
                break
            k += 1
        r = s / qpoch_inf(q, q)
    return +r


def _dpoch_conv(u, a, b):
    tol = _tol()
    r = mp.mpf(1)
    ai = mp.mpf(1)
    while abs(u * ai) > tol:
        term = u * ai
        while abs(term) > tol:
            r *= 1 - term
            term *= b
        ai *= a
    return r


def dpoch(u, q1, q2, prec: int = 40):
    """Double Pochhammer (u;q1,q2)_infinity.

    For |q_i| > 1 the value is the one selected by the exponential-sum
    representation, i.e. (u;q1,q2) = 1/(u q2^{-1}; q1, q2^{-1}) when
    |q2| > 1, and symmetrically.
    """
    with mp.workdps(prec + 10):
        u, q1, q2 = mp.mpf(u), mp.mpf(q1), mp.mpf(q2)
        if abs(q1) == 1 or abs(q2) == 1:
            raise ValueError("bases of modulus one are not supported")
        if abs(q1) < 1 and abs(q2) < 1:
            r = _dpoch_conv(u, q1, q2)
        elif abs(q1) < 1:
            r = 1 / _dpoch_conv(u / q2, q1, 1 / q2)
        elif abs(q2) < 1:
            r = 1 / _dpoch_conv(u / q1, 1 / q1, q2)
        else:
            r = _dpoch_conv(u / (q1 * q2), 1 / q1, 1 / q2)
    return +r


def dpoch_exp(u, q1, q2, prec: int = 40):
    """Double Pochhammer via exp(-sum u^k / (k (1-q1^k)(1-q2^k)))."""
    with mp.workdps(prec + 10):
        u, q1, q2 = mp.mpf(u), mp.mpf(q1), mp.mpf(q2)
        s = mp.nsum(lambda k: u ** k / (k * (1 - q1 ** k) * (1 - q2 ** k)), [1, mp.inf])
        r = mp.exp(-s)
    return +r


def ell_gamma(u, q1, q2, prec: int = 40):
    """Elliptic gamma function (q1 q2/u; q1,q2)/(u; q1,q2)."""
    with mp.workdps(prec + 10):
        r = dpoch(q1 * q2 / u, q1, q2, prec) / dpoch(u, q1, q2, prec)
    return +r


def c_n_limit(u, n: int, q, prec: int = 40):
    """Closed form of lim_{q2 -> 1} c_n(q^u) with q1 = q."""
    n = _as_index(n)
    with mp.workdps(prec + 10):
        u, q = mp.mpf(u), mp.mpf(q)
        r = q ** (-mp.mpf(n * (n - 1)) * (1 + n + 3 * u) / 6) * (q - 1) ** (n * (n - 1) // 2) \
            * barnes_gq(u + n + 1, q, prec) / barnes_gq(u + 1, q, prec) * gamma_q(u + 1, q, prec) ** (-n)
    return +r


def richardson(values: Sequence, deltas: Sequence):
    """Polynomial extrapolation to delta = 0 through the given samples."""
    with mp.workdps(mp.mp.dps + 10):
        xs = [mp.mpf(d) for d in deltas]
        ys = list(values)
        total = mp.mpf(0)
        for i, (xi, yi) in enumerate(zip(xs, ys)):
            w = mp.mpf(1)
            for j, xj in enumerate(xs):
                if j != i:
                    w *= (0 - xj) / (xi - xj)
            total += w * yi
    return +total


# ---------------------------------------------------------------------------
# exact series helpers

def series_exp(L: QSeries) -> QSeries:
    """exp of a series without constant term, exact."""
    if L.constant_term() != 0:
        raise ValueError("series_exp needs a vanishing constant term")
    out = L.one_like()
    term = L.one_like()
    m = 0
    while True:
        m += 1
        term = (term * L).scale(rat(1) / m)
        if term.is_zero():
            break
        out = out + term
    return out


def dpoch_ratio_series(nums: Sequence, dens: Sequence, a, b, z: QSeries) -> QSeries:
    """prod (c z; a, b)_inf / prod (d z; a, b)_inf as an exact series.

    ``z`` is a monomial series (one term, no constant).  Uses the
    exponential-sum representation of the double Pochhammer symbol, so only
    1 - a^k and 1 - b^k need to be nonzero.
    """
    if z.constant_term() != 0:
        raise ValueError("the argument must vanish at the origin")
    L = z.zero_like()
    zk = z.one_like()
    k = 0
    while True:
        k += 1
        zk = zk * z
        if zk.is_zero():
            break
        num = sum((rat(c) ** k for c in nums), ZERO) - sum((rat(d) ** k for d in dens), ZERO)
        den = (1 - rat(a) ** k) * (1 - rat(b) ** k) * k
        if den == 0:
            raise ZeroDivisionError("base power equal to one in the exponential sum")
        L = L + zk.scale(-num / den)
    return series_exp(L)


def hypergeom_2phi1(a, b, c, q, z: QSeries) -> QSeries:
    """Basic hypergeometric series 2phi1(a, b; c; q; z) with exact coefficients.

    ``z`` is a series without constant term (typically scalar times a
    monomial); the sum stops when powers of ``z`` leave the truncation box.
    """
    a, b, c, q = rat(a), rat(b), rat(c), rat(q)
    out = z.one_like()
    coef = ONE
    zn = z.one_like()
    n = 0
    while True:
        zn = zn * z
        if zn.is_zero():
            break
        qn = q ** n
        den = (1 - c * qn) * (1 - q * qn)
        if den == 0:
            raise ZeroDivisionError("vanishing denominator Pochhammer in 2phi1")
        coef = coef * (1 - a * qn) * (1 - b * qn) / den
        out = out + zn.scale(coef)
        n += 1
    return out
