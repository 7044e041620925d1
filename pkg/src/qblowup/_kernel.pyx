# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled localization kernel.

Same contract as ``_kernel_py.quiver_sum``.  The Nekrasov products are
accumulated as unreduced numerator/denominator pairs of GMP integers and
reduced once per node factor, which avoids a gcd per elementary factor.
"""

from libc.stdlib cimport malloc, free

import gmpy2

from .exact import NonGenericPoint
from .partitions import Partition, n_exponents, pairs_up_to


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    void mpz_init(mpz_t)
    void mpz_clear(mpz_t)
    void mpz_set(mpz_t, const mpz_t)
    void mpz_set_ui(mpz_t, unsigned long)
    int mpz_set_str(mpz_t, const char *, int)
    char *mpz_get_str(char *, int, const mpz_t)
    size_t mpz_sizeinbase(const mpz_t, int)
    void mpz_mul(mpz_t, const mpz_t, const mpz_t)
    void mpz_sub(mpz_t, const mpz_t, const mpz_t)
    int mpz_sgn(const mpz_t)


cdef int _load(mpz_t z, object x) except -1:
    s = hex(int(x)).encode()
    if mpz_set_str(z, s, 0) != 0:
        raise ValueError("bad integer")
    return 0


cdef object _store(mpz_t z):
    cdef size_t n = mpz_sizeinbase(z, 16) + 2
    cdef char *buf = <char *> malloc(n)
    if buf == NULL:
        raise MemoryError()
    try:
        mpz_get_str(buf, 16, z)
        return int(buf.decode(), 16)
    finally:
        free(buf)


cdef class _Rat:
    """A rational held as numerator and denominator (not necessarily reduced)."""
    cdef mpz_t num
    cdef mpz_t den

    def __cinit__(self):
        mpz_init(self.num)
        mpz_init(self.den)

    def __dealloc__(self):
        mpz_clear(self.num)
        mpz_clear(self.den)

    cdef set_value(self, object x):
        x = gmpy2.mpq(x)
        _load(self.num, x.numerator)
        _load(self.den, x.denominator)

    cdef object value(self):
        return gmpy2.mpq(_store(self.num), _store(self.den))


cdef class _Powers:
    """q^k for |k| <= bound as unreduced pairs."""
    cdef int bound
    cdef list tab

    def __init__(self, q, int bound):
        self.bound = bound
        q = gmpy2.mpq(q)
        self.tab = []
        cdef int k
        for k in range(-bound, bound + 1):
            r = _Rat()
            r.set_value(q ** k)
            self.tab.append(r)

    cdef _Rat get(self, int k):
        return <_Rat> self.tab[k + self.bound]


cdef class _Accum:
    """Running product of factors (1 - v q1^a q2^b)."""
    cdef mpz_t num
    cdef mpz_t den
    cdef mpz_t t1
    cdef mpz_t t2

    def __cinit__(self):
        mpz_init(self.num)
        mpz_init(self.den)
        mpz_init(self.t1)
        mpz_init(self.t2)
        mpz_set_ui(self.num, 1)
        mpz_set_ui(self.den, 1)

    def __dealloc__(self):
        mpz_clear(self.num)
        mpz_clear(self.den)
        mpz_clear(self.t1)
        mpz_clear(self.t2)

    cdef void reset(self):
        mpz_set_ui(self.num, 1)
        mpz_set_ui(self.den, 1)

    cdef void factor(self, _Rat v, _Rat p1, _Rat p2):
        # 1 - vn p1n p2n / (vd p1d p2d) = (D - N) / D
        mpz_mul(self.t1, v.num, p1.num)
        mpz_mul(self.t1, self.t1, p2.num)
        mpz_mul(self.t2, v.den, p1.den)
        mpz_mul(self.t2, self.t2, p2.den)
        mpz_mul(self.den, self.den, self.t2)
        mpz_sub(self.t2, self.t2, self.t1)
        mpz_mul(self.num, self.num, self.t2)

    cdef void times(self, _Accum other):
        mpz_mul(self.num, self.num, other.num)
        mpz_mul(self.den, self.den, other.den)

    cdef void over(self, _Accum other):
        mpz_mul(self.num, self.num, other.den)
        mpz_mul(self.den, self.den, other.num)

    cdef bint is_zero(self):
        return mpz_sgn(self.num) == 0

    cdef object value(self):
        return gmpy2.mpq(_store(self.num), _store(self.den))


cdef void _nprod(_Accum acc, tuple exps, _Rat v, _Powers P1, _Powers P2):
    cdef int a, b
    for a, b in exps:
        acc.factor(v, P1.get(a), P2.get(b))


cdef list _rats(m):
    out = []
    for row in m:
        r = []
        for x in row:
            y = _Rat()
            y.set_value(x)
            r.append(y)
        out.append(r)
    return out


EMPTY = Partition(())


def quiver_sum(q1, q2, orders, left, bifund, right, vector):
    cdef int K = len(orders)
    cdef int k, c, e
    if K < 1 or len(vector) != K or len(bifund) != K - 1:
        raise ValueError("inconsistent quiver data")
    cdef int bound = max(orders) + 2
    cdef _Powers P1 = _Powers(q1, bound)
    cdef _Powers P2 = _Powers(q2, bound)
    L = _rats(left)
    R = _rats(right)
    B = [_rats(m) for m in bifund]
    V = [_rats(m) for m in vector]
    node_pairs = [pairs_up_to(o) for o in orders]
    cdef _Accum num = _Accum()
    cdef _Accum den = _Accum()

    def node_factor(int k, P):
        num.reset()
        den.reset()
        cdef int c, e
        if k == 0:
            for c in range(2):
                for e in range(2):
                    _nprod(num, n_exponents(EMPTY, P[c]), <_Rat> L[c][e], P1, P2)
        if k == K - 1:
            for c in range(2):
                for e in range(2):
                    _nprod(num, n_exponents(P[c], EMPTY), <_Rat> R[c][e], P1, P2)
        for c in range(2):
            for e in range(2):
                _nprod(den, n_exponents(P[c], P[e]), <_Rat> V[k][c][e], P1, P2)
        if den.is_zero():
            raise NonGenericPoint(f"vanishing vector-multiplet factor at node {k}")
        num.over(den)
        return num.value()

    state = {}
    for P in node_pairs[0]:
        f = node_factor(0, P)
        if f:
            state[P] = {(P[0].size + P[1].size,): f}
    cdef _Accum bacc = _Accum()
    for k in range(1, K):
        Bk = B[k - 1]
        new = {}
        for Q in node_pairs[k]:
            fq = node_factor(k, Q)
            if not fq:
                continue
            acc = {}
            sq = Q[0].size + Q[1].size
            for P, partial in state.items():
                bacc.reset()
                for c in range(2):
                    for e in range(2):
                        _nprod(bacc, n_exponents(P[c], Q[e]), <_Rat> Bk[c][e], P1, P2)
                if bacc.is_zero():
                    continue
                b = bacc.value()
                for sz, val in partial.items():
                    key = sz + (sq,)
                    acc[key] = acc.get(key, 0) + val * b
            if acc:
                new[Q] = {sz: v * fq for sz, v in acc.items()}
        state = new
    out = {}
    for partial in state.values():
        for sz, v in partial.items():
            out[sz] = out.get(sz, 0) + v
    return {sz: gmpy2.mpq(v) for sz, v in out.items() if v}
