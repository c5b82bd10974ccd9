"""Exact linear algebra on sparse vectors (dicts label -> Fraction)."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Sequence

Vec = Dict[Hashable, Fraction]


def add_into(acc: Vec, vec: Mapping, scale=1) -> Vec:
    for key, c in vec.items():
        value = acc.get(key, 0) + scale * c
        if value:
            acc[key] = value
        else:
            acc.pop(key, None)
    return acc


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    n_cols = len(m[0])
    rank, prev = 0, 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(rank + 1, len(m)):
            for c in range(col + 1, n_cols):
                m[r][c] = (m[r][c] * m[rank][col] - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = m[rank][col]
        rank += 1
    return rank


def sparse_rank(vectors: Sequence[Mapping]) -> int:
    labels = sorted({k for v in vectors for k in v}, key=repr)
    index = {k: i for i, k in enumerate(labels)}
    dens = [_common_denominator(v.values()) for v in vectors]
    rows = []
    for v, den in zip(vectors, dens):
        row = [0] * len(labels)
        for k, c in v.items():
            row[index[k]] = int(Fraction(c) * den)
        rows.append(row)
    return integer_rank(rows)


def _common_denominator(values) -> int:
    den = 1
    for c in values:
        d = Fraction(c).denominator
        den = den * d // _gcd(den, d)
    return den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class Quotient:
    """V / S with coordinates on chosen complement representatives.

    ``sub`` spans S and ``reps`` are vectors whose classes form a basis of
    V / S; together they must be a basis of V.
    """

    def __init__(self, sub: Sequence[Mapping], reps: Sequence[Mapping]):
        self.n_sub = len(sub)
        self.n_rep = len(reps)
        columns = list(sub) + list(reps)
        labels = sorted({k for v in columns for k in v}, key=repr)
        if len(labels) != len(columns):
            raise ValueError("sub and reps do not form a square system")
        self.labels = labels
        index = {k: i for i, k in enumerate(labels)}
        n = len(labels)
        # augmented [B | I] where the columns of B are the given vectors
        mat = [[Fraction(0)] * (2 * n) for _ in range(n)]
        for c, vec in enumerate(columns):
            for k, x in vec.items():
                mat[index[k]][c] = Fraction(x)
        for r in range(n):
            mat[r][n + r] = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
            if pivot is None:
                raise ValueError("sub and reps are linearly dependent")
            mat[col], mat[pivot] = mat[pivot], mat[col]
            inv = 1 / mat[col][col]
            mat[col] = [x * inv for x in mat[col]]
            for r in range(n):
                if r != col and mat[r][col] != 0:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
        self._inverse = [row[n:] for row in mat]
        self._index = index

    def coordinates(self, vec: Mapping) -> List[Fraction]:
        """Coefficients of the class of ``vec`` on the representatives."""
        out = []
        for r in range(self.n_sub, self.n_sub + self.n_rep):
            row = self._inverse[r]
            out.append(sum((row[self._index[k]] * x for k, x in vec.items()), Fraction(0)))
        return out

    def contains(self, vec: Mapping) -> bool:
        return not any(self.coordinates(vec))
