import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihomcheck.coherence import (
    BIG_PHI,
    BIG_PSI,
    SMALL_PHI,
    SMALL_PSI,
    BiHomObject,
    DuoidalInstance,
    LaxInstance,
    check_duoidal_figure,
    check_exponent_identities,
    check_figure_axioms,
    check_lax_figure,
    coherence_map,
    nprod,
    phi_exponents,
    random_double_seq,
    random_duoidal_instance,
    random_lax_instance,
    random_object,
    unit_object,
    xi_map,
)
from bihomcheck.combinat import Permutation
from bihomcheck.errors import (
    GroupShapeMismatch,
    InvariantViolation,
    MissingEndomorphism,
    ShapeMismatch,
    SlotOutOfRange,
)
from bihomcheck.exactlin import GF, QQ, DenseMap, compose, kron

F7 = GF(7)


def diag(field, *values):
    n = len(values)
    return DenseMap.from_rows(field, [[values[i] if i == j else 0
                                       for j in range(n)] for i in range(n)])


def obj_with(field, alpha, beta, kappa=None, nu=None):
    return BiHomObject(alpha.dst_dim, field, alpha, beta, kappa, nu)


class TestBiHomObject:
    def test_commutation_enforced_at_construction(self):
        a = DenseMap.from_rows(QQ, [[0, 1], [0, 0]])
        b = DenseMap.from_rows(QQ, [[1, 0], [0, 2]])
        with pytest.raises(InvariantViolation):
            obj_with(QQ, a, b)

    def test_four_endos_all_pairs_checked(self):
        ident = DenseMap.identity(QQ, 2)
        bad = DenseMap.from_rows(QQ, [[0, 1], [0, 0]])
        off = DenseMap.from_rows(QQ, [[1, 0], [0, 2]])
        with pytest.raises(InvariantViolation):
            obj_with(QQ, ident, ident, bad, off)

    def test_oplax_pair_required(self):
        o = obj_with(QQ, DenseMap.identity(QQ, 2), DenseMap.identity(QQ, 2))
        with pytest.raises(MissingEndomorphism):
            o.oplax_pair()


class TestNprod:
    def test_empty_is_unit(self):
        u = nprod([], QQ)
        assert u.dim == 1 and u.alpha.is_identity()

    def test_singleton_is_the_object(self):
        o = random_object(random.Random(0), F7, 3, four=True)
        assert nprod([o]) is o

    def test_identity_alphas_tensor_to_identity(self):
        o1 = obj_with(QQ, DenseMap.identity(QQ, 2), diag(QQ, 1, 2))
        o2 = obj_with(QQ, DenseMap.identity(QQ, 3), diag(QQ, 2, 3, 4))
        prod = nprod([o1, o2])
        assert prod.dim == 6
        assert prod.alpha.is_identity()


class TestPhiExponents:
    def test_two_one(self):
        exps = phi_exponents((2, 1), BIG_PHI)
        assert exps[0] == [(0, 0), (0, 0)]
        assert exps[1] == [(0, 1)]  # single beta on the last slot

    def test_one_two(self):
        exps = phi_exponents((1, 2), BIG_PHI)
        assert exps[0] == [(1, 0)]  # single alpha on the first slot
        assert exps[1] == [(0, 0), (0, 0)]

    def test_small_phi_unit_cases(self):
        assert phi_exponents((0, 1), SMALL_PHI) == [[], [(0, 1)]]
        assert phi_exponents((1, 0), SMALL_PHI) == [[(1, 0)], []]

    def test_psi_uses_same_exponents(self):
        assert phi_exponents((3, 0, 2), BIG_PSI) == phi_exponents((3, 0, 2), BIG_PHI)


class TestCoherenceMap:
    def test_all_ones_trivial(self):
        rng = random.Random(1)
        objs = [random_object(rng, F7, 2, four=False) for _ in range(3)]
        m = coherence_map((1, 1, 1), BIG_PHI, [[o] for o in objs])
        assert m.is_identity()

    def test_singleton_sequence_trivial(self):
        rng = random.Random(2)
        objs = [random_object(rng, F7, 2, four=False) for _ in range(3)]
        assert coherence_map((3,), BIG_PHI, [objs]).is_identity()

    def test_small_phi_no_zeros_trivial(self):
        rng = random.Random(3)
        groups = [[random_object(rng, F7, 2, four=False) for _ in range(3)],
                  [random_object(rng, F7, 2, four=False) for _ in range(2)]]
        assert coherence_map((3, 2), SMALL_PHI, groups).is_identity()

    def test_all_zero_sequence_trivial(self):
        assert coherence_map((0, 0), BIG_PHI, [[], []], QQ).is_identity()

    def test_derived_diagonal_example(self):
        rng = random.Random(4)
        o1 = obj_with(QQ, DenseMap.identity(QQ, 2), diag(QQ, 3, 5))
        o2 = obj_with(QQ, DenseMap.identity(QQ, 2), diag(QQ, 7, 11))
        o3 = obj_with(QQ, DenseMap.identity(QQ, 2), diag(QQ, 2, 3))
        m = coherence_map((2, 1), BIG_PHI, [[o1, o2], [o3]])
        assert m == kron(DenseMap.identity(QQ, 4), diag(QQ, 2, 3))

    def test_psi_needs_oplax_endos(self):
        o = obj_with(QQ, DenseMap.identity(QQ, 2), DenseMap.identity(QQ, 2))
        with pytest.raises(MissingEndomorphism):
            coherence_map((1, 1), BIG_PSI, [[o], [o]])

    def test_group_shape_mismatch(self):
        o = unit_object(QQ)
        with pytest.raises(GroupShapeMismatch):
            coherence_map((2,), BIG_PHI, [[o]])

    def test_matches_independent_assembly(self):
        # rebuild the map slot by slot with plain repeated composition
        rng = random.Random(5)
        for _ in range(10):
            k = tuple(rng.randint(0, 2) for _ in range(rng.randint(0, 3)))
            groups = [[random_object(rng, F7, 2, four=True) for _ in range(v)]
                      for v in k]
            for which in (BIG_PHI, SMALL_PHI, BIG_PSI, SMALL_PSI):
                exps = phi_exponents(k, which)
                assembled = DenseMap.identity(F7, 1)
                for i, g in enumerate(groups):
                    for j, o in enumerate(g):
                        first, second = o.pair_for(which)
                        a, b = exps[i][j]
                        factor = DenseMap.identity(F7, o.dim)
                        for _ in range(a):
                            factor = compose(factor, first)
                        for _ in range(b):
                            factor = compose(factor, second)
                        assembled = kron(assembled, factor)
                assert assembled == coherence_map(k, which, groups, F7)


class TestXiMap:
    def test_degenerate_grids_are_identity(self):
        rng = random.Random(6)
        objs = [random_object(rng, F7, 3, four=True) for _ in range(3)]
        assert xi_map(1, 3, [objs]).is_identity()
        assert xi_map(3, 1, [[o] for o in objs]).is_identity()
        assert xi_map(0, 0, [], F7).is_identity()

    def test_two_by_two_against_enumeration(self):
        # distinct prime dims tag the slots; exactly the transpose flip matches
        dims = [2, 3, 5, 7]
        objs = [obj_with(QQ, DenseMap.identity(QQ, d), DenseMap.identity(QQ, d))
                for d in dims]
        grid = [[objs[0], objs[1]], [objs[2], objs[3]]]
        target = xi_map(2, 2, grid)
        matches = []
        for images in itertools.permutations(range(4)):
            try:
                cand = Permutation(images).matrix(dims, QQ)
            except ShapeMismatch:
                continue
            if cand.dst_dim == target.dst_dim and cand == target:
                matches.append(images)
        assert matches == [(0, 2, 1, 3)]  # slot (i,j) -> (j,i)

    def test_inverse_composition(self):
        rng = random.Random(7)
        for _ in range(10):
            n, p = rng.randint(0, 3), rng.randint(0, 3)
            grid = [[random_object(rng, F7, 2, four=True) for _ in range(p)]
                    for _ in range(n)]
            gridT = [[grid[i][j] for i in range(n)] for j in range(p)]
            fwd = xi_map(n, p, grid, F7)
            back = xi_map(p, n, gridT, F7)
            assert compose(back, fwd).is_identity()

    def test_is_zero_one_permutation_matrix(self):
        rng = random.Random(8)
        grid = [[random_object(rng, F7, 2, four=True) for _ in range(2)]
                for _ in range(2)]
        m = xi_map(2, 2, grid)
        rows = m.rows()
        for row in rows:
            assert sorted(row) == [0] * (m.src_dim - 1) + [1]
        for j in range(m.src_dim):
            col = [rows[i][j] for i in range(m.dst_dim)]
            assert sorted(col) == [0] * (m.dst_dim - 1) + [1]

    def test_naturality(self):
        # with identity endomorphisms every matrix is a morphism
        rng = random.Random(9)
        for _ in range(10):
            n, p = rng.randint(1, 2), rng.randint(1, 2)
            xdims = [[rng.randint(1, 3) for _ in range(p)] for _ in range(n)]
            ydims = [[rng.randint(1, 3) for _ in range(p)] for _ in range(n)]
            mk = lambda d: obj_with(F7, DenseMap.identity(F7, d),
                                    DenseMap.identity(F7, d))
            xg = [[mk(d) for d in row] for row in xdims]
            yg = [[mk(d) for d in row] for row in ydims]
            f = [[DenseMap.from_rows(
                F7, [[rng.randrange(7) for _ in range(xdims[i][j])]
                     for _ in range(ydims[i][j])])
                for j in range(p)] for i in range(n)]
            row_then_col = DenseMap.identity(F7, 1)
            for i in range(n):
                for j in range(p):
                    row_then_col = kron(row_then_col, f[i][j])
            col_then_row = DenseMap.identity(F7, 1)
            for j in range(p):
                for i in range(n):
                    col_then_row = kron(col_then_row, f[i][j])
            assert compose(xi_map(n, p, yg), row_then_col) \
                == compose(col_then_row, xi_map(n, p, xg))


class TestExponentIdentities:
    def test_single_row_holds(self):
        for k in [(1,), (0, 2), (3, 0, 1)]:
            n, m = 1, (len(k),)
            for j in range(1, len(k) + 1):
                assert all(check_exponent_identities(n, m, (k,), 1, j))

    def test_hand_example_both_sides_one(self):
        from bihomcheck.coherence import _identity_sides
        lhs, rhs = _identity_sides((2, 0), ((0, 3), ()), 0, 1, 2, False)
        assert (lhs, rhs) == (1, 1)
        assert all(check_exponent_identities(2, (2, 0), ((0, 3), ()), 1, 2))

    def test_slot_out_of_range(self):
        with pytest.raises(SlotOutOfRange):
            check_exponent_identities(1, (2,), ((1, 1),), 1, 3)
        with pytest.raises(SlotOutOfRange):
            check_exponent_identities(1, (2,), ((1, 1),), 2, 1)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            check_exponent_identities(2, (1,), ((1,),), 1, 1)

    @given(st.integers(0, 4000))
    @settings(max_examples=120, deadline=None)
    def test_random_instances(self, trial):
        rng = random.Random(trial)
        m, k = random_double_seq(rng, 4, 3, 4)
        n = len(m)
        for i in range(1, n + 1):
            for j in range(1, m[i - 1] + 1):
                assert all(check_exponent_identities(n, m, k, i, j)), (m, k, i, j)


class TestFigures:
    def test_all_identity_endos_trivially_commute(self):
        mk = lambda d: obj_with(F7, DenseMap.identity(F7, d),
                                DenseMap.identity(F7, d),
                                DenseMap.identity(F7, d),
                                DenseMap.identity(F7, d))
        inst = LaxInstance((2, 0), ((2, 0), ()),
                           (([mk(2), mk(2)], []), ()), F7)
        rep = check_lax_figure(inst)
        assert rep.passed
        duo = DuoidalInstance(2, 2, (1, 0),
                              (([mk(2)], []), ([mk(2)], [])), F7)
        assert check_duoidal_figure(duo).passed

    def test_random_lax_instances(self):
        rng = random.Random(21)
        for _ in range(20):
            inst = random_lax_instance(rng, F7)
            rep = check_lax_figure(inst)
            assert rep.passed, (inst.m, inst.k, rep.failures())

    def test_random_duoidal_instances(self):
        rng = random.Random(22)
        for _ in range(15):
            inst = random_duoidal_instance(rng, F7)
            rep = check_duoidal_figure(inst)
            assert rep.passed, (inst.n, inst.p, inst.k, rep.failures())

    def test_rational_instances_too(self):
        rng = random.Random(23)
        for _ in range(5):
            inst = random_lax_instance(rng, QQ)
            assert check_lax_figure(inst).passed

    def test_dispatcher(self):
        rng = random.Random(24)
        inst = random_lax_instance(rng, F7)
        assert check_figure_axioms("lax", inst).passed
        with pytest.raises(ValueError):
            check_figure_axioms("other", inst)

    def test_region_reports_carry_names(self):
        rng = random.Random(25)
        rep = check_lax_figure(random_lax_instance(rng, F7))
        names = {e.name for e in rep.entries}
        assert {"region-upper-left", "region-upper-right", "region-lower-left",
                "region-lower-right", "unit-singleton", "unit-unary"} <= names
