"""Integer bookkeeping behind the coherence formulas.

The kernel drives everything off (ragged) sequences of non-negative integers:
row sums and zero counts, the derived tilde/hat double sequences, the tensor
flip permutations tau_{n,p}, and unit-padding of grouped object lists.
Positions are 0-based internally; row/slot numbering in docstrings is 1-based
to match the usual mathematical convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, TypeVar

from .errors import LengthMismatch, ShapeMismatch
from .exactlin import DenseMap, FieldTag, _coerce, _dtype_for, _normalize

import numpy as np

T = TypeVar("T")

IndexSeq = Sequence[int]
DoubleSeq = Sequence[Sequence[int]]


def z_of(m: int) -> int:
    """1 on zero, 0 on positive integers."""
    if m < 0:
        raise ValueError("negative index")
    return 1 if m == 0 else 0


def bar(m: int) -> int:
    """m + z_of(m): bumps zero up to one, fixes positives."""
    return m + z_of(m)


def validate_index_seq(k: IndexSeq) -> tuple:
    items = tuple(int(v) for v in k)
    if any(v < 0 for v in items):
        raise ValueError(f"negative entry in {items}")
    return items


def validate_double_seq(rows: DoubleSeq) -> tuple:
    return tuple(validate_index_seq(r) for r in rows)


@dataclass(frozen=True)
class Totals:
    """Row and grand totals of a double sequence.

    row_sums[i] = K_i, row_zeros[i] = Z_i, total = K, zeros = Z,
    row_lengths[i] = m_i, length_sum = M, and
    tilde_zeros = Z + sum_i z_of(m_i) = Z + sum_i z_of(K_i + Z_i).
    """

    row_sums: tuple
    row_zeros: tuple
    total: int
    zeros: int
    row_lengths: tuple
    length_sum: int
    tilde_zeros: int


def totals(rows: DoubleSeq) -> Totals:
    rows = validate_double_seq(rows)
    row_sums = tuple(sum(r) for r in rows)
    row_zeros = tuple(sum(z_of(v) for v in r) for r in rows)
    row_lengths = tuple(len(r) for r in rows)
    zeros = sum(row_zeros)
    return Totals(
        row_sums=row_sums,
        row_zeros=row_zeros,
        total=sum(row_sums),
        zeros=zeros,
        row_lengths=row_lengths,
        length_sum=sum(row_lengths),
        tilde_zeros=zeros + sum(z_of(m) for m in row_lengths),
    )


def tilde_of(rows: DoubleSeq) -> tuple:
    """Row i of length bar(m_i): copies of row i, or the single entry 0."""
    rows = validate_double_seq(rows)
    return tuple(r if len(r) > 0 else (0,) for r in rows)


def hat_of(rows: DoubleSeq) -> tuple:
    """Row i of length bar(m_i): copies when K_i > 0, else (1, 0, ..., 0)."""
    rows = validate_double_seq(rows)
    out = []
    for r in rows:
        if len(r) == 0:
            out.append((1,))
        elif sum(r) > 0:
            out.append(r)
        else:
            out.append((1,) + (0,) * (len(r) - 1))
    return tuple(out)


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0, ..., size-1}: slot s is sent to position images[s]."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ShapeMismatch(f"not a bijection: {self.images}")

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, s: int) -> int:
        return self.images[s]

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(s) = self(other(s))."""
        if self.size != other.size:
            raise ShapeMismatch("composing permutations of different sizes")
        return Permutation(tuple(self.images[other.images[s]]
                                 for s in range(self.size)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for s, t in enumerate(self.images):
            inv[t] = s
        return Permutation(tuple(inv))

    @staticmethod
    def direct_sum(perms: Sequence["Permutation"]) -> "Permutation":
        images = []
        offset = 0
        for p in perms:
            images.extend(offset + t for t in p.images)
            offset += p.size
        return Permutation(tuple(images))

    def blown_up(self, block_sizes: Sequence[int]) -> "Permutation":
        """Permutation of flat slots induced by permuting contiguous blocks.

        block_sizes lists the input blocks in input order; block b (occupying
        a contiguous run of slots) moves, as a whole, to block position
        images[b].
        """
        if len(block_sizes) != self.size:
            raise LengthMismatch(
                f"{len(block_sizes)} block sizes for a permutation of {self.size}"
            )
        in_off = [0] * self.size
        for b in range(1, self.size):
            in_off[b] = in_off[b - 1] + block_sizes[b - 1]
        inv = self.inverse()
        out_sizes = [block_sizes[inv(t)] for t in range(self.size)]
        out_off = [0] * self.size
        for t in range(1, self.size):
            out_off[t] = out_off[t - 1] + out_sizes[t - 1]
        images = [0] * sum(block_sizes)
        for b in range(self.size):
            t = self.images[b]
            for r in range(block_sizes[b]):
                images[in_off[b] + r] = out_off[t] + r
        return Permutation(tuple(images))

    def matrix(self, dims: Sequence[int], field: FieldTag) -> DenseMap:
        """0/1 matrix permuting the tensor factors of slots with these dims.

        dims lists the carrier dimension of each input slot; basis vectors are
        flattened big-endian, and the output slot at position images[s] has
        dimension dims[s].
        """
        if len(dims) != self.size:
            raise LengthMismatch(f"{len(dims)} dims for a permutation of {self.size}")
        total = 1
        for d in dims:
            total *= d
        inv = self.inverse()
        out_dims = [dims[inv(t)] for t in range(self.size)]
        out_strides = [0] * self.size
        acc = 1
        for t in range(self.size - 1, -1, -1):
            out_strides[t] = acc
            acc *= out_dims[t]
        arr = np.zeros((total, total), dtype=_dtype_for(field))
        if arr.dtype == object:
            arr[:] = _coerce(field, 0)
        one = _coerce(field, 1)
        for src, multi in enumerate(np.ndindex(*dims) if dims else [()]):
            dst = sum(multi[s] * out_strides[self.images[s]]
                      for s in range(self.size))
            arr[dst, src] = one
        return DenseMap(field, total, total, _normalize(field, arr))


def flip_perm(n: int, p: int, block_dims: Optional[Sequence[int]] = None,
              field: Optional[FieldTag] = None):
    """The transposition tau_{n,p}: p groups of n slots -> n groups of p.

    Input slot (i, j) (group i < p, position j < n, flat i*n + j) is sent to
    output position (j, i) (flat j*p + i).  With block_dims (a flat list of
    n*p slot dimensions in input order) and a field, the permutation is
    returned as the corresponding DenseMap on the tensor product.
    """
    images = [0] * (n * p)
    for i in range(p):
        for j in range(n):
            images[i * n + j] = j * p + i
    perm = Permutation(tuple(images))
    if block_dims is None:
        return perm
    if field is None:
        raise ValueError("field required for the DenseMap form")
    return perm.matrix(list(block_dims), field)


def pad(objects_per_slot: Sequence[Sequence[T]], k: IndexSeq, unit: T) -> list:
    """Concatenate the slot groups, replacing each empty slot by one unit.

    Slot i must hold exactly k_i objects; slots with k_i = 0 contribute a
    single copy of the unit object.
    """
    k = validate_index_seq(k)
    if len(objects_per_slot) != len(k):
        raise LengthMismatch(
            f"{len(objects_per_slot)} slots for a sequence of length {len(k)}"
        )
    out: list = []
    for i, (group, size) in enumerate(zip(objects_per_slot, k)):
        if len(group) != size:
            raise LengthMismatch(f"slot {i} holds {len(group)} objects, wants {size}")
        if size > 0:
            out.extend(group)
        else:
            out.append(unit)
    return out


def group_by(items: Sequence[T], sizes: IndexSeq) -> list:
    """Split a flat list into consecutive groups of the given sizes."""
    sizes = validate_index_seq(sizes)
    if sum(sizes) != len(items):
        raise LengthMismatch(f"{len(items)} items grouped as {sizes}")
    out = []
    pos = 0
    for s in sizes:
        out.append(list(items[pos:pos + s]))
        pos += s
    return out
