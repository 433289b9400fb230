"""Exact scalar fields and dense linear algebra.

Every morphism handled by the kernel is a dense matrix over an exact field:
arbitrary-precision rationals or a prime field F_p.  Matrices are stored with
explicit source/target dimensions; a map f: V_src -> V_dst has shape
dst_dim x src_dim and composes on the left (compose(f, g) = f.g applies g
first).  Kronecker products follow the big-endian flattening convention

    index of slot (i_f, i_g) in f (x) g  =  i_f * dim_g + i_g,

fixed once and for all so that tensoring with a 1-dimensional identity is a
literal no-op on indices.  All values are immutable after construction and
every operation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    NotSquare,
    ParseError,
    RowLengthMismatch,
)

RATIONALS = "rationals"
PRIME_FIELD = "prime_field"

# int64 matmul is safe as long as src_dim * (p-1)^2 stays below 2^63.
_INT64_MODULUS_LIMIT = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldTag:
    """Base field of a matrix: the rationals or F_p for a prime p."""

    kind: str
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.modulus is not None:
                raise ParseError("rationals carry no modulus")
        elif self.kind == PRIME_FIELD:
            if self.modulus is None or not _is_prime(self.modulus):
                raise ParseError(f"modulus {self.modulus!r} is not prime")
        else:
            raise ParseError(f"unknown field kind {self.kind!r}")

    def __str__(self):
        return "Q" if self.kind == RATIONALS else f"F_{self.modulus}"


QQ = FieldTag(RATIONALS)


def GF(p: int) -> FieldTag:
    return FieldTag(PRIME_FIELD, p)


RawScalar = Union[int, Fraction, str, "Scalar"]


def _coerce(field: FieldTag, value: RawScalar):
    """Normalize a raw value into the field's internal representation."""
    if isinstance(value, Scalar):
        if value.field != field:
            raise FieldMismatch(f"scalar over {value.field}, expected {field}")
        return value.value
    if isinstance(value, str):
        return _parse(field, value)
    if field.kind == RATIONALS:
        return Fraction(value)
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise FieldMismatch(f"non-integral value {value} in {field}")
        value = value.numerator
    return int(value) % field.modulus


def _parse(field: FieldTag, text: str):
    text = text.strip()
    if field.kind == RATIONALS:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}: {exc}") from exc
    try:
        return int(text, 10) % field.modulus
    except ValueError as exc:
        raise ParseError(f"bad residue {text!r}: {exc}") from exc


def _format(field: FieldTag, value) -> str:
    if field.kind == RATIONALS:
        return str(value)  # Fraction prints p/q in lowest terms, or plain p
    return str(value)


def _inv_value(field: FieldTag, value):
    if field.kind == RATIONALS:
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / value
    return pow(int(value), -1, field.modulus)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field."""

    field: FieldTag
    value: Union[Fraction, int]

    @staticmethod
    def of(field: FieldTag, value: RawScalar) -> "Scalar":
        return Scalar(field, _coerce(field, value))

    def _lift(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} vs {self.field}")
            return other
        return Scalar.of(self.field, other)

    def __add__(self, other):
        o = self._lift(other)
        return Scalar.of(self.field, self.value + o.value)

    __radd__ = __add__

    def __neg__(self):
        return Scalar.of(self.field, -self.value)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        return Scalar.of(self.field, self.value * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return self * Scalar(self.field, _inv_value(self.field, o.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, _inv_value(self.field, self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return _format(self.field, self.value)


def _dtype_for(field: FieldTag):
    if field.kind == PRIME_FIELD and field.modulus < _INT64_MODULUS_LIMIT:
        return np.int64
    return object


def _normalize(field: FieldTag, arr: np.ndarray) -> np.ndarray:
    if field.kind == PRIME_FIELD:
        arr = arr % field.modulus
    arr.flags.writeable = False
    return arr


class DenseMap:
    """A linear map as a dense dst_dim x src_dim matrix over an exact field."""

    __slots__ = ("field", "dst_dim", "src_dim", "_a")

    def __init__(self, field: FieldTag, dst_dim: int, src_dim: int, array: np.ndarray):
        if array.shape != (dst_dim, src_dim):
            raise DimensionMismatch(
                f"array shape {array.shape} != ({dst_dim}, {src_dim})"
            )
        self.field = field
        self.dst_dim = dst_dim
        self.src_dim = src_dim
        self._a = array

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rows(field: FieldTag, rows: Sequence[Sequence[RawScalar]],
                  src_dim: Optional[int] = None) -> "DenseMap":
        dst = len(rows)
        if dst == 0:
            if src_dim is None:
                src_dim = 0
            arr = np.empty((0, src_dim), dtype=_dtype_for(field))
            return DenseMap(field, 0, src_dim, _normalize(field, arr))
        src = len(rows[0])
        if src_dim is not None and src_dim != src:
            raise DimensionMismatch(f"row length {src} != src_dim {src_dim}")
        arr = np.empty((dst, src), dtype=_dtype_for(field))
        for i, row in enumerate(rows):
            if len(row) != src:
                raise RowLengthMismatch(f"row {i} has length {len(row)}, expected {src}")
            for j, v in enumerate(row):
                arr[i, j] = _coerce(field, v)
        return DenseMap(field, dst, src, _normalize(field, arr))

    @staticmethod
    def from_flat(field: FieldTag, dst_dim: int, src_dim: int,
                  entries: Sequence[RawScalar]) -> "DenseMap":
        if len(entries) != dst_dim * src_dim:
            raise DimensionMismatch(
                f"{len(entries)} entries for a {dst_dim}x{src_dim} map"
            )
        arr = np.empty((dst_dim, src_dim), dtype=_dtype_for(field))
        flat = arr.reshape(-1)
        for i, v in enumerate(entries):
            flat[i] = _coerce(field, v)
        return DenseMap(field, dst_dim, src_dim, _normalize(field, arr))

    @staticmethod
    def identity(field: FieldTag, n: int) -> "DenseMap":
        arr = np.zeros((n, n), dtype=_dtype_for(field))
        if arr.dtype == object:
            arr[:] = _coerce(field, 0)
        for i in range(n):
            arr[i, i] = _coerce(field, 1)
        return DenseMap(field, n, n, _normalize(field, arr))

    @staticmethod
    def zero(field: FieldTag, dst_dim: int, src_dim: int) -> "DenseMap":
        arr = np.zeros((dst_dim, src_dim), dtype=_dtype_for(field))
        if arr.dtype == object:
            arr[:] = _coerce(field, 0)
        return DenseMap(field, dst_dim, src_dim, _normalize(field, arr))

    # -- views -------------------------------------------------------------

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar.of(self.field, self._a[i, j])

    def rows(self):
        """Entries as nested lists of canonical raw values (row-major)."""
        return [[self._a[i, j] for j in range(self.src_dim)]
                for i in range(self.dst_dim)]

    def flat_strings(self):
        return [_format(self.field, v) for v in self._a.reshape(-1)]

    @property
    def entries(self):
        return tuple(Scalar.of(self.field, v) for v in self._a.reshape(-1))

    def is_square(self) -> bool:
        return self.dst_dim == self.src_dim

    def is_identity(self) -> bool:
        return self.is_square() and self == DenseMap.identity(self.field, self.dst_dim)

    def __repr__(self):
        return f"DenseMap({self.field}, {self.dst_dim}x{self.src_dim})"

    def __eq__(self, other):
        if not isinstance(other, DenseMap):
            return NotImplemented
        return (self.field == other.field
                and self.dst_dim == other.dst_dim
                and self.src_dim == other.src_dim
                and bool(np.array_equal(self._a, other._a)))

    def __hash__(self):
        return hash((self.field, self.dst_dim, self.src_dim,
                     tuple(self._a.reshape(-1))))

    def first_difference(self, other: "DenseMap"):
        """First (row, col, lhs, rhs) where the two maps differ, else None."""
        if self.dst_dim != other.dst_dim or self.src_dim != other.src_dim:
            raise DimensionMismatch("comparing maps of different shapes")
        for i in range(self.dst_dim):
            for j in range(self.src_dim):
                if self._a[i, j] != other._a[i, j]:
                    return (i, j,
                            _format(self.field, self._a[i, j]),
                            _format(other.field, other._a[i, j]))
        return None

    # -- algebra -----------------------------------------------------------

    def _check_field(self, other: "DenseMap"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "DenseMap") -> "DenseMap":
        return compose(self, other)

    def __add__(self, other: "DenseMap") -> "DenseMap":
        self._check_field(other)
        if (self.dst_dim, self.src_dim) != (other.dst_dim, other.src_dim):
            raise DimensionMismatch("adding maps of different shapes")
        return DenseMap(self.field, self.dst_dim, self.src_dim,
                        _normalize(self.field, self._a + other._a))

    def __sub__(self, other: "DenseMap") -> "DenseMap":
        self._check_field(other)
        if (self.dst_dim, self.src_dim) != (other.dst_dim, other.src_dim):
            raise DimensionMismatch("subtracting maps of different shapes")
        return DenseMap(self.field, self.dst_dim, self.src_dim,
                        _normalize(self.field, self._a - other._a))

    def scale(self, value: RawScalar) -> "DenseMap":
        v = _coerce(self.field, value)
        return DenseMap(self.field, self.dst_dim, self.src_dim,
                        _normalize(self.field, self._a * v))

    def with_entry(self, i: int, j: int, value: RawScalar) -> "DenseMap":
        arr = self._a.copy()
        arr[i, j] = _coerce(self.field, value)
        return DenseMap(self.field, self.dst_dim, self.src_dim,
                        _normalize(self.field, arr))

    def transpose(self) -> "DenseMap":
        return DenseMap(self.field, self.src_dim, self.dst_dim,
                        _normalize(self.field, self._a.T.copy()))

    def power(self, k: int) -> "DenseMap":
        """k-th composition power by repeated squaring (k >= 0, square map)."""
        if not self.is_square():
            raise NotSquare("powering a non-square map")
        if k < 0:
            raise ValueError("negative power")
        result = DenseMap.identity(self.field, self.dst_dim)
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def column(self, j: int):
        return [self._a[i, j] for i in range(self.dst_dim)]


def _object_matmul(field: FieldTag, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product for object-dtype arrays, skipping zero entries.

    Coherence morphisms are Kronecker products of tiny permutation- and
    diagonal-shaped blocks, so treating every zero as work makes rational
    chains quadratically slower than they need to be.
    """
    zero = _coerce(field, 0)
    rows, inner = a.shape
    cols = b.shape[1]
    out = np.empty((rows, cols), dtype=object)
    out[:] = zero
    b_rows = [[(j, b[t, j]) for j in range(cols) if b[t, j] != 0]
              for t in range(inner)]
    for i in range(rows):
        acc = out[i]
        for t in range(inner):
            v = a[i, t]
            if v == 0:
                continue
            for j, w in b_rows[t]:
                acc[j] = acc[j] + v * w
    return out


def compose(f: DenseMap, g: DenseMap) -> DenseMap:
    """Matrix product f.g (g applied first)."""
    f._check_field(g)
    if f.src_dim != g.dst_dim:
        raise DimensionMismatch(
            f"compose: f is {f.dst_dim}x{f.src_dim}, g is {g.dst_dim}x{g.src_dim}"
        )
    if f._a.dtype == object:
        arr = _object_matmul(f.field, f._a, g._a)
    else:
        arr = np.dot(f._a, g._a).reshape(f.dst_dim, g.src_dim)
    return DenseMap(f.field, f.dst_dim, g.src_dim, _normalize(f.field, arr))


def compose_all(maps: Sequence[DenseMap]) -> DenseMap:
    """Compose a chain left to right: compose_all([f, g, h]) = f.g.h.

    The association order is chosen by the classical matrix-chain dynamic
    program; with exact entries the result is identical either way, but the
    work is not, and coherence chains mix very tall and very wide maps.
    """
    if not maps:
        raise ValueError("empty composition chain")
    n = len(maps)
    if n == 1:
        return maps[0]
    dims = [m.dst_dim for m in maps] + [maps[-1].src_dim]
    cost = [[0] * n for _ in range(n)]
    split = [[0] * n for _ in range(n)]
    for span in range(1, n):
        for i in range(n - span):
            j = i + span
            best = None
            for s in range(i, j):
                c = (cost[i][s] + cost[s + 1][j]
                     + dims[i] * dims[s + 1] * dims[j + 1])
                if best is None or c < best:
                    best, split[i][j] = c, s
            cost[i][j] = best

    def build(i, j):
        if i == j:
            return maps[i]
        s = split[i][j]
        return compose(build(i, s), build(s + 1, j))

    return build(0, n - 1)


def kron(f: DenseMap, g: DenseMap) -> DenseMap:
    """Kronecker product under the global big-endian index flattening."""
    f._check_field(g)
    if f._a.dtype == object:
        zero = _coerce(f.field, 0)
        arr = np.empty((f.dst_dim * g.dst_dim, f.src_dim * g.src_dim),
                       dtype=object)
        arr[:] = zero
        g_entries = [(r, c, g._a[r, c]) for r in range(g.dst_dim)
                     for c in range(g.src_dim) if g._a[r, c] != 0]
        for i in range(f.dst_dim):
            for j in range(f.src_dim):
                v = f._a[i, j]
                if v == 0:
                    continue
                base_r, base_c = i * g.dst_dim, j * g.src_dim
                for r, c, w in g_entries:
                    arr[base_r + r, base_c + c] = v * w
    else:
        arr = np.kron(f._a, g._a)
        arr = arr.reshape(f.dst_dim * g.dst_dim, f.src_dim * g.src_dim)
    return DenseMap(f.field, f.dst_dim * g.dst_dim, f.src_dim * g.src_dim,
                    _normalize(f.field, arr))


def kron_all(field: FieldTag, maps: Iterable[DenseMap]) -> DenseMap:
    """Kronecker product of a sequence; empty product is the 1x1 identity."""
    out = DenseMap.identity(field, 1)
    for m in maps:
        out = kron(out, m)
    return out


def invert(f: DenseMap) -> Optional[DenseMap]:
    """Exact inverse by Gauss-Jordan elimination, or None if singular."""
    if not f.is_square():
        raise NotSquare(f"inverting a {f.dst_dim}x{f.src_dim} map")
    n = f.dst_dim
    field = f.field
    a = [[f._a[i, j] for j in range(n)] for i in range(n)]
    inv = [[_coerce(field, 1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        pinv = _inv_value(field, a[col][col])
        a[col] = [_coerce(field, v * pinv) for v in a[col]]
        inv[col] = [_coerce(field, v * pinv) for v in inv[col]]
        for r in range(n):
            if r == col or a[r][col] == 0:
                continue
            factor = a[r][col]
            a[r] = [_coerce(field, x - factor * y) for x, y in zip(a[r], a[col])]
            inv[r] = [_coerce(field, x - factor * y) for x, y in zip(inv[r], inv[col])]
    return DenseMap.from_rows(field, inv)


UNIQUE = "unique"
NO_SOLUTION = "none"
UNDERDETERMINED = "underdetermined"


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact linear solve.

    status is one of 'unique', 'none', 'underdetermined'; solution carries the
    unique solution, or one particular witness in the underdetermined case.
    """

    status: str
    solution: Optional[tuple] = None


def solve_linear(system: Sequence[tuple], unknowns: int,
                 field: FieldTag) -> SolveResult:
    """Classify and solve a linear system given as (coefficient-row, rhs) pairs."""
    rows = []
    for idx, (coeffs, rhs) in enumerate(system):
        if len(coeffs) != unknowns:
            raise RowLengthMismatch(
                f"row {idx} has {len(coeffs)} coefficients, expected {unknowns}"
            )
        rows.append([_coerce(field, c) for c in coeffs] + [_coerce(field, rhs)])

    pivots = []
    r = 0
    for col in range(unknowns):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pinv = _inv_value(field, rows[r][col])
        rows[r] = [_coerce(field, v * pinv) for v in rows[r]]
        for i in range(len(rows)):
            if i == r or rows[i][col] == 0:
                continue
            factor = rows[i][col]
            rows[i] = [_coerce(field, x - factor * y)
                       for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1

    for i in range(r, len(rows)):
        if rows[i][unknowns] != 0:
            return SolveResult(NO_SOLUTION)

    # particular solution: free unknowns set to zero
    solution = [_coerce(field, 0)] * unknowns
    for row_idx, col in enumerate(pivots):
        solution[col] = rows[row_idx][unknowns]

    status = UNIQUE if len(pivots) == unknowns else UNDERDETERMINED
    return SolveResult(status, tuple(Scalar.of(field, v) for v in solution))
