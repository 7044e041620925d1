"""Young diagrams and the factor N_{lambda,mu}(v)."""

from __future__ import annotations

from functools import lru_cache
from typing import List, Tuple


class Partition(tuple):
    """A Young diagram as a weakly decreasing tuple of positive row lengths."""

    def __new__(cls, rows=()):
        rows = tuple(int(r) for r in rows)
        if any(r <= 0 for r in rows):
            raise ValueError(f"rows must be positive: {rows}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise ValueError(f"rows must be weakly decreasing: {rows}")
        return super().__new__(cls, rows)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def transpose(self) -> "Partition":
        return _transpose(self)

    def row(self, i: int) -> int:
        """lambda_i with 1-based index, zero past the last row."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def boxes(self):
        """Boxes (i, j), 1-based, row by row."""
        for i, r in enumerate(self, 1):
            for j in range(1, r + 1):
                yield i, j

    def __repr__(self) -> str:
        return "Partition(" + ",".join(map(str, self)) + ")"


@lru_cache(maxsize=None)
def _transpose(lam: Partition) -> Partition:
    if not lam:
        return Partition(())
    return Partition(tuple(sum(1 for r in lam if r >= j) for j in range(1, lam[0] + 1)))


def _partitions_of(n: int, maxpart: int) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partitions_of(n - first, first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def partitions_of(n: int) -> Tuple[Partition, ...]:
    """All partitions of n, lexicographically increasing."""
    return tuple(sorted(Partition(p) for p in _partitions_of(n, n)))


@lru_cache(maxsize=None)
def enumerate_partitions(max_boxes: int) -> Tuple[Partition, ...]:
    """All partitions with at most ``max_boxes`` boxes, by size then lexicographically."""
    if max_boxes < 0:
        raise ValueError("max_boxes must be >= 0")
    out = []
    for n in range(max_boxes + 1):
        out.extend(partitions_of(n))
    return tuple(out)


@lru_cache(maxsize=None)
def pairs_up_to(max_boxes: int) -> Tuple[Tuple[Partition, Partition], ...]:
    """Ordered pairs (lambda_+, lambda_-) with total size <= max_boxes, by total size."""
    out = []
    for n in range(max_boxes + 1):
        for a in range(n + 1):
            for lp in partitions_of(a):
                for lm in partitions_of(n - a):
                    out.append((lp, lm))
    return tuple(out)


@lru_cache(maxsize=None)
def n_exponents(lam: Partition, mu: Partition) -> Tuple[Tuple[int, int], ...]:
    """Exponent pairs (a, b) with N_{lam,mu}(v) = prod (1 - v q1^a q2^b).

    This is the closed product form: boxes of lam contribute
    (i - mu'_j, lam_i - j + 1), boxes of mu contribute
    (lam'_l - k + 1, -mu_k + l).
    """
    lt = _transpose(lam)
    mt = _transpose(mu)
    out = []
    for i, j in lam.boxes():
        out.append((i - (mt[j - 1] if j <= len(mt) else 0), lam[i - 1] - j + 1))
    for k, l in mu.boxes():
        out.append(((lt[l - 1] if l <= len(lt) else 0) - k + 1, -mu[k - 1] + l))
    return tuple(out)


def n_factor(lam: Partition, mu: Partition, v, q1, q2):
    """N_{lam,mu}(v) from the closed product form."""
    one = v ** 0
    r = one
    for a, b in n_exponents(lam, mu):
        r = r * (one - v * q1 ** a * q2 ** b)
    return r


def n_factor_character(lam: Partition, mu: Partition, v, q1, q2):
    """N_{lam,mu}(v) from the box-content form with cross ratios.

    Boxes of lam carry weight v * chi_x, boxes of mu carry chi_y, where
    chi_(i,j) = q1^{i-1} q2^{j-1}.  Only used as an independent oracle; the
    cross-ratio denominators are nonzero for generic v.
    """
    one = v ** 0
    chi = lambda i, j: q1 ** (i - 1) * q2 ** (j - 1)
    num = one
    den = one
    for i, j in lam.boxes():
        num = num * (one - q1 * q2 * chi(i, j) * v)
    for k, l in mu.boxes():
        num = num * (one - v / chi(k, l))
    for i, j in lam.boxes():
        for k, l in mu.boxes():
            z = v * chi(i, j) / chi(k, l)
            num = num * (one - q1 * z) * (one - q2 * z)
            den = den * (one - z) * (one - q1 * q2 * z)
    return num / den
