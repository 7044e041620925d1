"""Pure-Python localization kernel (reference implementation and fallback).

A linear quiver with K gauge nodes, each carrying a pair of Young diagrams
(lambda^k_+, lambda^k_-), contributes the summand

    prod_{c,e}  N_{0, l^1_c}(L[c][e])  N_{l^K_c, 0}(R[c][e])
              * prod_k prod_{c,e} N_{l^k_c, l^{k+1}_e}(B_k[c][e])
              / prod_k prod_{c,e} N_{l^k_c, l^k_e}(V_k[c][e])

with c, e in {0, 1} standing for the signs +, -.  ``quiver_sum`` returns the
sum of summands grouped by the tuple of node sizes (|l^k_+| + |l^k_-|).
"""

from __future__ import annotations

from typing import Dict, Sequence, Tuple

from .exact import ONE, NonGenericPoint, rat
from .partitions import Partition, n_exponents, pairs_up_to

EMPTY = Partition(())


class _Powers:
    def __init__(self, q, bound):
        self.tab = {0: ONE}
        p = ONE
        for k in range(1, bound + 1):
            p = p * q
            self.tab[k] = p
        p = ONE
        qi = 1 / q
        for k in range(1, bound + 1):
            p = p * qi
            self.tab[-k] = p


def _nprod(lam, mu, v, P1, P2):
    r = ONE
    for a, b in n_exponents(lam, mu):
        r *= 1 - v * P1[a] * P2[b]
    return r


def quiver_sum(q1, q2, orders: Sequence[int], left, bifund, right, vector) -> Dict[Tuple[int, ...], object]:
    q1, q2 = rat(q1), rat(q2)
    K = len(orders)
    if K < 1 or len(vector) != K or len(bifund) != K - 1:
        raise ValueError("inconsistent quiver data")
    bound = max(orders) + 2
    P1 = _Powers(q1, bound).tab
    P2 = _Powers(q2, bound).tab
    L = [[rat(x) for x in row] for row in left]
    R = [[rat(x) for x in row] for row in right]
    B = [[[rat(x) for x in row] for row in m] for m in bifund]
    V = [[[rat(x) for x in row] for row in m] for m in vector]

    node_pairs = [pairs_up_to(o) for o in orders]

    def node_factor(k, P):
        num = ONE
        if k == 0:
            for c in (0, 1):
                for e in (0, 1):
                    num *= _nprod(EMPTY, P[c], L[c][e], P1, P2)
        if k == K - 1:
            for c in (0, 1):
                for e in (0, 1):
                    num *= _nprod(P[c], EMPTY, R[c][e], P1, P2)
        den = ONE
        for c in (0, 1):
            for e in (0, 1):
                den *= _nprod(P[c], P[e], V[k][c][e], P1, P2)
        if den == 0:
            raise NonGenericPoint(f"vanishing vector-multiplet factor at node {k}")
        return num / den

    # state: for each pair at the current node, {size-prefix: partial sum}
    state = {}
    for P in node_pairs[0]:
        f = node_factor(0, P)
        if f:
            state[P] = {(P[0].size + P[1].size,): f}
    for k in range(1, K):
        Bk = B[k - 1]
        new = {}
        for Q in node_pairs[k]:
            fq = node_factor(k, Q)
            if not fq:
                continue
            acc: Dict[Tuple[int, ...], object] = {}
            sq = Q[0].size + Q[1].size
            for P, partial in state.items():
                b = ONE
                for c in (0, 1):
                    for e in (0, 1):
                        b *= _nprod(P[c], Q[e], Bk[c][e], P1, P2)
                if not b:
                    continue
                for sz, val in partial.items():
                    key = sz + (sq,)
                    acc[key] = acc.get(key, 0) + val * b
            if acc:
                new[Q] = {sz: v * fq for sz, v in acc.items()}
        state = new
    out: Dict[Tuple[int, ...], object] = {}
    for partial in state.values():
        for sz, v in partial.items():
            out[sz] = out.get(sz, 0) + v
    return {sz: rat(v) for sz, v in out.items() if v}
