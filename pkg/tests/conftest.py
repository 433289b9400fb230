"""Shared helpers: independent brute-force oracles and value strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from bihomcheck.exactlin import GF, QQ, DenseMap


def naive_matmul(a_rows, b_rows):
    """Triple-loop matrix product on nested lists (oracle for compose)."""
    n, k = len(a_rows), len(b_rows)
    m = len(b_rows[0]) if b_rows else 0
    assert all(len(r) == k for r in a_rows)
    return [[sum(a_rows[i][t] * b_rows[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def naive_kron(a_rows, b_rows, a_shape, b_shape):
    """Explicit index-convention Kronecker product (oracle for kron)."""
    (ad, asrc), (bd, bsrc) = a_shape, b_shape
    out = [[0] * (asrc * bsrc) for _ in range(ad * bd)]
    for i in range(ad):
        for j in range(asrc):
            for r in range(bd):
                for c in range(bsrc):
                    out[i * bd + r][j * bsrc + c] = a_rows[i][j] * b_rows[r][c]
    return out


def as_rational_map(rows):
    return DenseMap.from_rows(QQ, [[Fraction(v) for v in row] for row in rows])


small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def rational_matrix(dst, src):
    return st.lists(st.lists(small_fracs, min_size=src, max_size=src),
                    min_size=dst, max_size=dst).map(as_rational_map)


def mod7_matrix(dst, src):
    entries = st.integers(min_value=0, max_value=6)
    return st.lists(st.lists(entries, min_size=src, max_size=src),
                    min_size=dst, max_size=dst).map(
        lambda rows: DenseMap.from_rows(GF(7), rows))
