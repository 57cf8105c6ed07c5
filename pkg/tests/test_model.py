import itertools

import pytest

from conftest import consistent_instance
from denserank.errors import DensityError, EmptyInstanceError, InvalidConstraintError
from denserank.model import (
    Constraint,
    Family,
    Instance,
    OrderedInstance,
    ProblemKind,
    Ranking,
    all_selected_values,
    constraint_total,
    edit_wrt,
    evaluate,
    fault_count,
    inconsistent_constraints,
    induced,
    induced_ordered,
    nth_combination,
    span,
    span_minus,
    validate_constraint,
)

B3 = ProblemKind(Family.BETWEENNESS, 3)
F2 = ProblemKind(Family.FAST, 2)
F3 = ProblemKind(Family.FAST, 3)
T3 = ProblemKind(Family.TRANSITIVE_FAST, 3)


class TestProblemKind:
    def test_fast_allows_pairs(self):
        assert ProblemKind(Family.FAST, 2).r == 2

    def test_betweenness_rejects_pairs(self):
        with pytest.raises(InvalidConstraintError):
            ProblemKind(Family.BETWEENNESS, 2)

    def test_tfast_rejects_pairs(self):
        with pytest.raises(InvalidConstraintError):
            ProblemKind(Family.TRANSITIVE_FAST, 2)


class TestRanking:
    def test_position_inverts_order(self):
        rk = Ranking((2, 0, 3, 1))
        for i, v in enumerate(rk.order):
            assert rk.pos(v) == i
        assert rk.last() == 1

    def test_rejects_non_permutations(self):
        with pytest.raises(InvalidConstraintError):
            Ranking((0, 0, 1))
        with pytest.raises(InvalidConstraintError):
            Ranking((1, 2, 3))

    def test_induced_keeps_relative_order(self):
        rk = Ranking((4, 2, 0, 3, 1))
        sub = rk.induced([0, 3, 4])
        # kept ids 0,3,4 relabel to 0,1,2; their order in rk is 4,0,3
        assert sub.order == (2, 0, 1)


class TestConstraintValidation:
    def test_members_must_increase(self):
        with pytest.raises(InvalidConstraintError):
            validate_constraint(F3, Constraint((2, 1, 3), 3))

    def test_fast_selected_is_a_member(self):
        validate_constraint(F3, Constraint((0, 1, 2), 1))
        with pytest.raises(InvalidConstraintError):
            validate_constraint(F3, Constraint((0, 1, 2), 5))
        with pytest.raises(InvalidConstraintError):
            validate_constraint(F3, Constraint((0, 1, 2), (0, 1)))

    def test_betweenness_selected_is_increasing_member_pair(self):
        validate_constraint(B3, Constraint((0, 1, 2), (0, 2)))
        with pytest.raises(InvalidConstraintError):
            validate_constraint(B3, Constraint((0, 1, 2), (2, 0)))
        with pytest.raises(InvalidConstraintError):
            validate_constraint(B3, Constraint((0, 1, 2), (0, 3)))

    def test_tfast_selected_is_member_permutation(self):
        validate_constraint(T3, Constraint((0, 1, 2), (2, 0, 1)))
        with pytest.raises(InvalidConstraintError):
            validate_constraint(T3, Constraint((0, 1, 2), (2, 0, 0)))

    def test_all_selected_value_counts(self):
        m = (0, 1, 2)
        assert len(all_selected_values(F3, m)) == 3
        assert len(all_selected_values(B3, m)) == 3
        assert len(all_selected_values(T3, m)) == 6


class TestInstance:
    def test_density_is_enforced(self):
        cs = [Constraint(m, m[-1]) for m in itertools.combinations(range(4), 2)]
        Instance(4, F2, cs)
        with pytest.raises(DensityError, match=r"missing constraint for subset \(0, 1\)"):
            Instance(4, F2, cs[1:])

    def test_duplicates_rejected(self):
        cs = [Constraint(m, m[-1]) for m in itertools.combinations(range(4), 2)]
        with pytest.raises(DensityError, match="duplicate"):
            Instance(4, F2, cs + [Constraint((0, 1), 0)])

    def test_members_within_range(self):
        cs = [Constraint(m, m[-1]) for m in itertools.combinations(range(1, 5), 2)]
        with pytest.raises(DensityError):
            Instance(4, F2, cs)

    def test_too_few_vertices(self):
        with pytest.raises(EmptyInstanceError):
            Instance(2, F3, [])

    def test_constraints_iterate_lexicographically(self):
        inst = consistent_instance(F3, 5)
        members = [c.members for c in inst.constraints()]
        assert members == sorted(members)
        assert inst.constraint_count() == constraint_total(5, 3) == 10

    def test_replace_swaps_one_subset(self):
        inst = consistent_instance(F2, 4)
        new = inst.replace({(0, 1): Constraint((0, 1), 0)})
        assert new.constraint((0, 1)).selected == 0
        assert inst.constraint((0, 1)).selected == 1
        assert new != inst

    def test_replace_rejects_foreign_members(self):
        inst = consistent_instance(F2, 4)
        with pytest.raises(InvalidConstraintError):
            inst.replace({(0, 1): Constraint((0, 2), 0)})


class TestEvaluate:
    def test_fast_needs_selected_last(self):
        c = Constraint((0, 1, 2), 0)
        assert evaluate(F3, c, Ranking((1, 2, 0, 3)))
        assert not evaluate(F3, c, Ranking.identity(4))

    def test_betweenness_accepts_both_orientations(self):
        c = Constraint((0, 1, 2), (0, 2))
        assert evaluate(B3, c, Ranking((0, 1, 2)))
        assert evaluate(B3, c, Ranking((2, 1, 0)))
        assert not evaluate(B3, c, Ranking((1, 0, 2)))

    def test_tfast_is_satisfied_by_exactly_one_member_order(self):
        c = Constraint((0, 1, 2), (2, 0, 1))
        hits = [
            order
            for order in itertools.permutations(range(3))
            if evaluate(T3, c, Ranking(order))
        ]
        assert hits == [(2, 0, 1)]

    def test_locality(self):
        # verdicts depend only on the members' relative order
        c = Constraint((1, 2, 4), 4)
        a = Ranking((0, 1, 2, 3, 4, 5))
        b = Ranking((3, 1, 5, 2, 0, 4))
        assert evaluate(F3, c, a) == evaluate(F3, c, b) is True


class TestSpans:
    def test_first_block_is_consecutive(self):
        inst = consistent_instance(F3, 5)
        vs, consecutive = span(inst.constraint((0, 1, 2)), Ranking.identity(5))
        assert vs == (0, 1, 2)
        assert consecutive

    def test_gappy_members_span_everything(self):
        inst = consistent_instance(F3, 5)
        vs, consecutive = span(inst.constraint((0, 2, 4)), Ranking.identity(5))
        assert vs == (0, 1, 2, 3, 4)
        assert not consecutive

    def test_span_minus_adds_the_prefix(self):
        sigma = Ranking.identity(5)
        inst = consistent_instance(F3, 5)
        assert span_minus(inst.constraint((1, 2, 3)), sigma) == (0, 1, 2, 3)
        assert span_minus(inst.constraint((0, 1, 2)), sigma) == (0, 1, 2)
        # holding the ranking's last vertex extends span-minus to everything
        assert span_minus(inst.constraint((0, 1, 4)), sigma) == (0, 1, 2, 3, 4)


class TestEditWrt:
    def test_fast_edit_takes_the_max(self):
        c = edit_wrt(F3, Constraint((0, 1, 2), 0), Ranking.identity(3))
        assert c.selected == 2

    def test_betweenness_edit_canonicalizes_orientation(self):
        c = edit_wrt(B3, Constraint((0, 1, 2), (0, 1)), Ranking((2, 1, 0)))
        assert c.selected == (0, 2)

    @pytest.mark.parametrize("kind", [B3, F2, F3, T3])
    def test_edit_satisfies_and_is_idempotent(self, kind):
        sigma = Ranking((3, 0, 4, 1, 2))
        for members in itertools.combinations(range(5), kind.r):
            for sel in all_selected_values(kind, members):
                edited = edit_wrt(kind, Constraint(members, sel), sigma)
                assert evaluate(kind, edited, sigma)
                assert edit_wrt(kind, edited, sigma) == edited


class TestFaults:
    def test_consistent_instance_has_no_faults(self, any_family):
        kind = ProblemKind(any_family, 3)
        inst = consistent_instance(kind, 5)
        assert fault_count(OrderedInstance(inst, Ranking.identity(5))) == 0

    def test_single_flip_is_the_single_fault(self):
        inst = consistent_instance(F3, 5)
        inst = inst.replace({(1, 2, 3): Constraint((1, 2, 3), 1)})
        bad = inconsistent_constraints(OrderedInstance(inst, Ranking.identity(5)))
        assert [c.members for c in bad] == [(1, 2, 3)]


class TestInduced:
    def test_relabelling_is_dense_and_ascending(self):
        inst = consistent_instance(F3, 6)
        sub, relabel = induced(inst, [1, 3, 4, 5])
        assert relabel == {1: 0, 3: 1, 4: 2, 5: 3}
        assert sub.n == 4
        assert sub.constraint_count() == constraint_total(4, 3)

    def test_verdicts_survive_restriction(self):
        inst = consistent_instance(T3, 6, Ranking((5, 3, 1, 0, 2, 4)))
        inst = inst.replace(
            {(1, 3, 5): edit_wrt(T3, Constraint((1, 3, 5), (1, 3, 5)), Ranking.identity(6))}
        )
        oi = OrderedInstance(inst, Ranking((5, 3, 1, 0, 2, 4)))
        sub_oi, relabel = induced_ordered(oi, [1, 2, 3, 5])
        want = {tuple(sorted(relabel[v] for v in c.members)) for c in inconsistent_constraints(oi) if set(c.members) <= {1, 2, 3, 5}}
        got = {c.members for c in inconsistent_constraints(sub_oi)}
        assert got == want

    def test_subset_below_arity_is_rejected(self):
        inst = consistent_instance(F3, 6)
        with pytest.raises(EmptyInstanceError):
            induced(inst, [0, 1])


class TestCombinatorics:
    @pytest.mark.parametrize("n,r", [(5, 2), (6, 3), (7, 4)])
    def test_nth_combination_matches_lexicographic_enumeration(self, n, r):
        subsets = list(itertools.combinations(range(n), r))
        assert [nth_combination(n, r, i) for i in range(len(subsets))] == subsets

    def test_nth_combination_bounds(self):
        with pytest.raises(IndexError):
            nth_combination(5, 2, 10)
