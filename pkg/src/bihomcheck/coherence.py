"""Coherence data of the concrete unbiased monoidal categories.

Objects are finite-dimensional carriers with two (or four) pairwise commuting
endomorphisms.  The n-fold product is the Kronecker product of carriers and
endomorphisms; the coherence morphisms relating nested products to flat ones
are per-slot powers of those endomorphisms with combinatorially determined
exponents, and the interchange morphisms are tensor-factor flips.  This module
builds all of them as concrete matrices, evaluates the pure-integer exponent
identities that make the pentagon-style axioms commute, and verifies the axiom
figures region by region on explicit instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .combinat import (
    IndexSeq,
    Permutation,
    bar,
    hat_of,
    tilde_of,
    totals,
    validate_index_seq,
    z_of,
)
from .errors import (
    FieldMismatch,
    GroupShapeMismatch,
    InvariantViolation,
    MissingEndomorphism,
    ShapeMismatch,
    SlotOutOfRange,
)
from .exactlin import DenseMap, FieldTag, compose, compose_all, kron_all
from .report import CheckReport, compare_entry, make_report

BIG_PHI = "BigPhi"
SMALL_PHI = "SmallPhi"
BIG_PSI = "BigPsi"
SMALL_PSI = "SmallPsi"

_LAX_KINDS = (BIG_PHI, SMALL_PHI)
_BIG_KINDS = (BIG_PHI, BIG_PSI)


@dataclass(frozen=True)
class BiHomObject:
    """A carrier with two or four pairwise commuting endomorphisms.

    alpha and beta govern the lax coherence morphisms; kappa and nu, when
    present, govern the oplax ones.  All present endomorphisms must be square
    of the carrier dimension and commute with each other.
    """

    dim: int
    field: FieldTag
    alpha: DenseMap
    beta: DenseMap
    kappa: Optional[DenseMap] = None
    nu: Optional[DenseMap] = None

    def __post_init__(self):
        endos = self.endos()
        for name, e in endos.items():
            if e.field != self.field:
                raise FieldMismatch(f"{name} over {e.field}, object over {self.field}")
            if e.dst_dim != self.dim or e.src_dim != self.dim:
                raise ShapeMismatch(
                    f"{name} is {e.dst_dim}x{e.src_dim} on a dim-{self.dim} carrier"
                )
        names = list(endos)
        for a in range(len(names)):
            for b in range(a + 1, len(names)):
                x, y = endos[names[a]], endos[names[b]]
                if compose(x, y) != compose(y, x):
                    raise InvariantViolation(
                        f"endomorphisms {names[a]} and {names[b]} do not commute"
                    )

    def endos(self) -> dict:
        out = {"alpha": self.alpha, "beta": self.beta}
        if self.kappa is not None:
            out["kappa"] = self.kappa
        if self.nu is not None:
            out["nu"] = self.nu
        return out

    def has_oplax_pair(self) -> bool:
        return self.kappa is not None and self.nu is not None

    def lax_pair(self):
        return self.alpha, self.beta

    def oplax_pair(self):
        if not self.has_oplax_pair():
            raise MissingEndomorphism("object has no kappa/nu endomorphisms")
        return self.kappa, self.nu

    def pair_for(self, which: str):
        return self.lax_pair() if which in _LAX_KINDS else self.oplax_pair()


def unit_object(field: FieldTag) -> BiHomObject:
    """The monoidal unit: 1-dimensional carrier, all endomorphisms identity."""
    one = DenseMap.identity(field, 1)
    return BiHomObject(1, field, one, one, one, one)


def is_unit_object(obj: BiHomObject) -> bool:
    one = DenseMap.identity(obj.field, 1)
    return obj.dim == 1 and all(e == one for e in obj.endos().values())


def nprod(objs: Sequence[BiHomObject], field: Optional[FieldTag] = None) -> BiHomObject:
    """n-fold monoidal product: Kronecker everything; empty product is the unit."""
    objs = list(objs)
    if not objs:
        if field is None:
            raise ValueError("field required for the empty product")
        return unit_object(field)
    if field is not None and any(o.field != field for o in objs):
        raise FieldMismatch("mixed fields in product")
    f = objs[0].field
    if any(o.field != f for o in objs):
        raise FieldMismatch("mixed fields in product")
    if len(objs) == 1:
        return objs[0]
    dim = math.prod(o.dim for o in objs)
    alpha = kron_all(f, [o.alpha for o in objs])
    beta = kron_all(f, [o.beta for o in objs])
    kappa = nu = None
    if all(o.has_oplax_pair() for o in objs):
        kappa = kron_all(f, [o.kappa for o in objs])
        nu = kron_all(f, [o.nu for o in objs])
    return BiHomObject(dim, f, alpha, beta, kappa, nu)


def phi_exponents(k: IndexSeq, which: str = BIG_PHI):
    """Per-slot exponent table of the coherence morphism for the sequence k.

    Returns one list per group; entry (i, j) is the pair (a, b) such that the
    morphism acts on slot (i, j) as first^a . second^b of the governing
    endomorphism pair.  The big morphisms weigh the neighbouring groups by
    bar(k_p) - 1, the small ones by z_of(k_p); the oplax variants use the same
    exponents on the kappa/nu pair.
    """
    k = validate_index_seq(k)
    if which not in (BIG_PHI, SMALL_PHI, BIG_PSI, SMALL_PSI):
        raise ValueError(f"unknown coherence kind {which!r}")
    weight = (lambda v: bar(v) - 1) if which in _BIG_KINDS else z_of
    n = len(k)
    out = []
    for i in range(n):
        a_exp = sum(weight(k[p]) for p in range(i + 1, n))
        b_exp = sum(weight(k[p]) for p in range(i))
        out.append([(a_exp, b_exp)] * k[i])
    return out


def coherence_map(k: IndexSeq, which: str,
                  groups: Sequence[Sequence[BiHomObject]],
                  field: Optional[FieldTag] = None) -> DenseMap:
    """The coherence morphism for sequence k at the given grouped objects.

    Group i must hold k_i objects.  The result is the Kronecker product over
    all slots of the per-slot endomorphism powers from phi_exponents; for the
    empty collection it is the 1x1 identity.
    """
    k = validate_index_seq(k)
    if len(groups) != len(k):
        raise GroupShapeMismatch(f"{len(groups)} groups for sequence of {len(k)}")
    for i, g in enumerate(groups):
        if len(g) != k[i]:
            raise GroupShapeMismatch(f"group {i} holds {len(g)}, wants {k[i]}")
    flat = [o for g in groups for o in g]
    if field is None:
        if flat:
            field = flat[0].field
        else:
            raise ValueError("field required for an empty coherence morphism")
    exps = phi_exponents(k, which)
    factors = []
    for i, g in enumerate(groups):
        for j, obj in enumerate(g):
            first, second = obj.pair_for(which)
            a, b = exps[i][j]
            factors.append(compose(first.power(a), second.power(b)))
    return kron_all(field, factors)


def xi_map(n: int, p: int, grid: Sequence[Sequence[BiHomObject]],
           field: Optional[FieldTag] = None) -> DenseMap:
    """Interchange morphism on an n x p grid of objects.

    Sends the source order (tensor over rows i < n of tensors over columns
    j < p) to the transposed order (tensor over columns of tensors over rows);
    it is the 0/1 matrix of the slot flip (i, j) -> (j, i) under the global
    flattening.  Degenerate grids (n*p = 0) give the 1x1 identity.
    """
    if len(grid) != n or any(len(row) != p for row in grid):
        raise ShapeMismatch(f"grid is not {n}x{p}")
    flat = [obj for row in grid for obj in row]
    if field is None:
        if not flat:
            raise ValueError("field required for an empty grid")
        field = flat[0].field
    if any(o.field != field for o in flat):
        raise FieldMismatch("mixed fields in grid")
    if n * p == 0:
        return DenseMap.identity(field, 1)
    images = [0] * (n * p)
    for i in range(n):
        for j in range(p):
            images[i * p + j] = j * n + i
    perm = Permutation(tuple(images))
    return perm.matrix([o.dim for o in flat], field)


# ---------------------------------------------------------------------------
# Exponent identities
# ---------------------------------------------------------------------------

def _identity_sides(m, k, i, j, ident: int, mirrored: bool):
    """Both sides of one exponent identity at slot (i, j), 0-based.

    mirrored=False gives the second-endomorphism form (sums over earlier
    slots); mirrored=True reflects every summation range to later slots,
    which is the first-endomorphism form.
    """
    n = len(m)
    tl = tilde_of(k)
    ht = hat_of(k)
    tot = totals(k)
    Ks, Zs = tot.row_sums, tot.row_zeros
    if not mirrored:
        Ps = range(i)
        Qs = range(j)
    else:
        Ps = range(i + 1, n)
        Qs = range(j + 1, m[i])

    def full(rows, f):
        return sum(f(v) for p in Ps for v in rows[p])

    w = lambda v: bar(v) - 1
    if ident == 1:
        lhs = (sum(w(m[p]) for p in Ps) + full(tl, w)
               + sum(w(tl[i][q]) for q in Qs))
        rhs = (sum(w(k[i][q]) for q in Qs)
               + sum(w(Ks[p] + Zs[p]) for p in Ps))
    elif ident == 2:
        lhs = (sum(z_of(k[i][q]) for q in Qs)
               + sum(w(Ks[p] + Zs[p]) for p in Ps))
        rhs = (sum(w(Ks[p]) for p in Ps) + full(ht, z_of)
               + sum(z_of(ht[i][q]) for q in Qs))
    elif ident == 3:
        lhs = (sum(z_of(m[p]) for p in Ps) + full(tl, w)
               + sum(w(tl[i][q]) for q in Qs))
        rhs = (full(k, w) + sum(w(k[i][q]) for q in Qs)
               + sum(z_of(Ks[p] + Zs[p]) for p in Ps))
    elif ident == 4:
        lhs = (sum(Zs[p] for p in Ps) + sum(z_of(k[i][q]) for q in Qs)
               + sum(z_of(Ks[p] + Zs[p]) for p in Ps))
        rhs = (sum(z_of(Ks[p]) for p in Ps) + full(ht, z_of)
               + sum(z_of(ht[i][q]) for q in Qs))
    else:
        raise ValueError(f"no identity {ident}")
    return lhs, rhs


def check_exponent_identities(n: int, m: IndexSeq, k, i: int, j: int):
    """Verify the four exponent identities at slot (i, j), both mirror forms.

    i, j are 1-based with 1 <= i <= n and 1 <= j <= m_i.  Returns a 4-tuple of
    booleans, one per identity; each is True only if both the plain and the
    mirrored form hold exactly.  The sides being compared are the accumulated
    endomorphism exponents of the objects sitting at slot (i, j), so a slot
    with k_ij = 0 carries no objects and is vacuously true.
    """
    m = validate_index_seq(m)
    if n != len(m):
        raise ShapeMismatch(f"n={n} but {len(m)} row lengths")
    k = tuple(validate_index_seq(r) for r in k)
    if len(k) != n or any(len(k[t]) != m[t] for t in range(n)):
        raise ShapeMismatch("double sequence does not match row lengths")
    if not (1 <= i <= n) or not (1 <= j <= m[i - 1]):
        raise SlotOutOfRange(f"slot ({i}, {j}) outside rows {m}")
    if k[i - 1][j - 1] == 0:
        return (True, True, True, True)
    out = []
    for ident in (1, 2, 3, 4):
        ok = True
        for mirrored in (False, True):
            lhs, rhs = _identity_sides(m, k, i - 1, j - 1, ident, mirrored)
            ok = ok and lhs == rhs
        out.append(ok)
    return tuple(out)


# ---------------------------------------------------------------------------
# Figure instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaxInstance:
    """Data for one lax-axiom figure check: rows m_i, entries k_ij, and a
    matching nested collection of objects (objects[i][j] holds k_ij of them)."""

    m: tuple
    k: tuple
    objects: tuple
    field: FieldTag


@dataclass(frozen=True)
class DuoidalInstance:
    """Data for one duoidal-axiom figure check: n oplax factors, p lax groups
    of sizes k_1..k_p, and objects[s][i][j] for s < n, i < p, j < k_i."""

    n: int
    p: int
    k: tuple
    objects: tuple
    field: FieldTag


LAX_LEVEL = "lax"
DUOIDAL_LEVEL = "duoidal"

# Region tables: (name, steps of the first path, steps of the second path),
# steps applied left to right.  Every named map below is an endomorphism of
# the full slot tensor, so paths compose without reordering for the lax
# figure; the duoidal paths carry their reorderings inside the named maps.
_LAX_REGIONS = (
    ("upper-left", ("Phi:m", "Phi:tilde"), ("Phi:rows", "Phi:KZ")),
    ("upper-right", ("phi:m", "Phi:tilde"), ("Phi:flat", "phi:KZ")),
    ("lower-left", ("phi:rows", "Phi:KZ"), ("Phi:K", "phi:hat")),
    ("lower-right", ("phi:flat", "phi:KZ"), ("phi:K", "phi:hat")),
)

_DUOIDAL_REGIONS = (
    ("upper-left", ("Phi:slotwise", "xi:flat"), ("xi:blocks", "xi:groups", "Phi:cols")),
    ("upper-right", ("phi:slotwise", "xi:flat"), ("xi:flat", "phi:cols")),
    ("lower-left", ("xi:flatT", "Psi:slotwise"), ("Psi:cols", "xi:groupsT", "xi:blocksT")),
    ("lower-right", ("xi:flatT", "psi:slotwise"), ("psi:cols", "xi:flatT")),
)


def _lax_maps(inst: LaxInstance):
    m, k, objs, field = inst.m, inst.k, inst.objects, inst.field
    n = len(m)
    tot = totals(k)
    unit = unit_object(field)

    row_flat = [[o for g in objs[i] for o in g] for i in range(n)]
    b = [[nprod(objs[i][j], field) for j in range(m[i])] for i in range(n)]

    tilde_seq, tilde_groups = [], []
    for i in range(n):
        if m[i] > 0:
            tilde_seq.extend(k[i])
            tilde_groups.extend(objs[i])
        else:
            tilde_seq.append(0)
            tilde_groups.append([])

    padded_rows = []
    for i in range(n):
        padded = []
        for j in range(m[i]):
            padded.extend(objs[i][j] if k[i][j] > 0 else [unit])
        padded_rows.append(padded)

    hat_seq, hat_groups = [], []
    for i in range(n):
        if m[i] == 0:
            hat_seq.append(1)
            hat_groups.append([unit])
        elif tot.row_sums[i] > 0:
            hat_seq.extend(k[i])
            hat_groups.extend(objs[i])
        else:
            hat_seq.extend([1] + [0] * (m[i] - 1))
            hat_groups.append([unit])
            hat_groups.extend([[]] * (m[i] - 1))

    flat_seq = [v for row in k for v in row]
    flat_groups = [g for row in objs for g in row]

    def cm(which, seq, groups):
        return coherence_map(tuple(seq), which, groups, field)

    return {
        "Phi:m": cm(BIG_PHI, m, b),
        "phi:m": cm(SMALL_PHI, m, b),
        "Phi:rows": kron_all(field, [cm(BIG_PHI, k[i], objs[i]) for i in range(n)]),
        "phi:rows": kron_all(field, [cm(SMALL_PHI, k[i], objs[i]) for i in range(n)]),
        "Phi:tilde": cm(BIG_PHI, tilde_seq, tilde_groups),
        "Phi:KZ": cm(BIG_PHI, [ks + zs for ks, zs in zip(tot.row_sums, tot.row_zeros)],
                     padded_rows),
        "phi:KZ": cm(SMALL_PHI, [ks + zs for ks, zs in zip(tot.row_sums, tot.row_zeros)],
                     padded_rows),
        "Phi:K": cm(BIG_PHI, tot.row_sums, row_flat),
        "phi:K": cm(SMALL_PHI, tot.row_sums, row_flat),
        "Phi:flat": cm(BIG_PHI, flat_seq, flat_groups),
        "phi:flat": cm(SMALL_PHI, flat_seq, flat_groups),
        "phi:hat": cm(SMALL_PHI, hat_seq, hat_groups),
    }, b


def check_lax_figure(inst: LaxInstance) -> CheckReport:
    """Verify the four regions of the lax-axiom figure plus the unit triangle."""
    maps, b = _lax_maps(inst)
    entries = []
    for name, left, right in _LAX_REGIONS:
        lhs = compose_all([maps[s] for s in reversed(left)])
        rhs = compose_all([maps[s] for s in reversed(right)])
        entries.append(compare_entry(
            f"region-{name}", "two boundary paths of the coherence figure", lhs, rhs))

    row_objs = [nprod(row, inst.field) for row in b]
    n = len(row_objs)
    singleton = coherence_map((n,), BIG_PHI, [row_objs], inst.field)
    unary = coherence_map((1,) * n, BIG_PHI, [[o] for o in row_objs], inst.field)
    ident = DenseMap.identity(inst.field, singleton.dst_dim)
    entries.append(compare_entry(
        "unit-singleton", "coherence of the full product sequence is trivial",
        singleton, ident))
    entries.append(compare_entry(
        "unit-unary", "coherence of the all-ones sequence is trivial",
        unary, ident))
    return make_report("figure-lax", entries)


def _duoidal_maps(inst: DuoidalInstance):
    n, p, k, objs, field = inst.n, inst.p, inst.k, inst.objects, inst.field
    K = sum(k)

    flat_rows = [[o for g in objs[s] for o in g] for s in range(n)]
    gridT = [[flat_rows[s][l] for s in range(n)] for l in range(K)]
    c_grid = [[nprod(objs[s][i], field) for i in range(p)] for s in range(n)]
    c_gridT = [[c_grid[s][i] for s in range(n)] for i in range(p)]
    cols = [[nprod([objs[s][i][j] for s in range(n)], field)
             for j in range(k[i])] for i in range(p)]

    def per_slot(which):
        return kron_all(field, [coherence_map(k, which, objs[s], field)
                                for s in range(n)])

    xi_groups = kron_all(field, [
        xi_map(n, k[i], [[objs[s][i][j] for j in range(k[i])] for s in range(n)], field)
        for i in range(p)])
    xi_groupsT = kron_all(field, [
        xi_map(k[i], n, [[objs[s][i][j] for s in range(n)] for j in range(k[i])], field)
        for i in range(p)])

    return {
        "Phi:slotwise": per_slot(BIG_PHI),
        "phi:slotwise": per_slot(SMALL_PHI),
        "Psi:slotwise": per_slot(BIG_PSI),
        "psi:slotwise": per_slot(SMALL_PSI),
        "Phi:cols": coherence_map(k, BIG_PHI, cols, field),
        "phi:cols": coherence_map(k, SMALL_PHI, cols, field),
        "Psi:cols": coherence_map(k, BIG_PSI, cols, field),
        "psi:cols": coherence_map(k, SMALL_PSI, cols, field),
        "xi:flat": xi_map(n, K, flat_rows, field),
        "xi:flatT": xi_map(K, n, gridT, field),
        "xi:blocks": xi_map(n, p, c_grid, field),
        "xi:blocksT": xi_map(p, n, c_gridT, field),
        "xi:groups": xi_groups,
        "xi:groupsT": xi_groupsT,
    }, flat_rows, c_grid


def check_duoidal_figure(inst: DuoidalInstance) -> CheckReport:
    """Verify the four interchange regions plus the two unit triangles."""
    maps, flat_rows, c_grid = _duoidal_maps(inst)
    field = inst.field
    entries = []
    for name, left, right in _DUOIDAL_REGIONS:
        lhs = compose_all([maps[s] for s in reversed(left)])
        rhs = compose_all([maps[s] for s in reversed(right)])
        entries.append(compare_entry(
            f"region-{name}", "two boundary paths of the interchange figure",
            lhs, rhs))

    row_objs = [nprod(row, field) for row in flat_rows]
    tri_lax = xi_map(inst.n, 1, [[o] for o in row_objs], field)
    entries.append(compare_entry(
        "triangle-unary-lax", "interchange against a single lax factor is trivial",
        tri_lax, DenseMap.identity(field, tri_lax.dst_dim)))
    col_objs = [nprod([c_grid[s][i] for s in range(inst.n)], field)
                for i in range(inst.p)]
    tri_oplax = xi_map(1, inst.p, [col_objs], field)
    entries.append(compare_entry(
        "triangle-unary-oplax", "interchange against a single oplax factor is trivial",
        tri_oplax, DenseMap.identity(field, tri_oplax.dst_dim)))
    return make_report("figure-duoidal", entries)


def check_figure_axioms(level: str, instance) -> CheckReport:
    if level == LAX_LEVEL:
        return check_lax_figure(instance)
    if level == DUOIDAL_LEVEL:
        return check_duoidal_figure(instance)
    raise ValueError(f"unknown figure level {level!r}")


# ---------------------------------------------------------------------------
# Random instances for the randomized suites
# ---------------------------------------------------------------------------

_DIM_CAP = 4096


def random_diagonal_endo(rng, field: FieldTag, dim: int) -> DenseMap:
    if field.kind == "prime_field":
        diag = [rng.randrange(field.modulus) for _ in range(dim)]
    else:
        diag = [rng.randint(-3, 3) for _ in range(dim)]
    rows = [[diag[i] if i == j else 0 for j in range(dim)] for i in range(dim)]
    return DenseMap.from_rows(field, rows)


def random_object(rng, field: FieldTag, max_dim: int, four: bool) -> BiHomObject:
    dim = rng.randint(1, max_dim)
    alpha = random_diagonal_endo(rng, field, dim)
    beta = random_diagonal_endo(rng, field, dim)
    if four:
        return BiHomObject(dim, field, alpha, beta,
                           random_diagonal_endo(rng, field, dim),
                           random_diagonal_endo(rng, field, dim))
    return BiHomObject(dim, field, alpha, beta)


def random_lax_instance(rng, field: FieldTag, max_n: int = 2, max_m: int = 2,
                        max_k: int = 2, max_dim: int = 2) -> LaxInstance:
    while True:
        n = rng.randint(0, max_n)
        m = tuple(rng.randint(0, max_m) for _ in range(n))
        k = tuple(tuple(rng.randint(0, max_k) for _ in range(m[i]))
                  for i in range(n))
        if max_dim ** sum(sum(r) for r in k) <= _DIM_CAP:
            break
    objects = tuple(
        tuple([random_object(rng, field, max_dim, four=False)
               for _ in range(k[i][j])] for j in range(m[i]))
        for i in range(n))
    return LaxInstance(m, k, objects, field)


def random_duoidal_instance(rng, field: FieldTag, max_n: int = 2, max_p: int = 2,
                            max_k: int = 2, max_dim: int = 2) -> DuoidalInstance:
    while True:
        n = rng.randint(0, max_n)
        p = rng.randint(0, max_p)
        k = tuple(rng.randint(0, max_k) for _ in range(p))
        if max_dim ** (n * sum(k)) <= _DIM_CAP:
            break
    objects = tuple(
        tuple([random_object(rng, field, max_dim, four=True)
               for _ in range(k[i])] for i in range(p))
        for _ in range(n))
    return DuoidalInstance(n, p, k, objects, field)


def random_double_seq(rng, max_n: int = 4, max_m: int = 3, max_k: int = 4):
    n = rng.randint(0, max_n)
    m = tuple(rng.randint(0, max_m) for _ in range(n))
    k = tuple(tuple(rng.randint(0, max_k) for _ in range(m[i])) for i in range(n))
    return m, k
