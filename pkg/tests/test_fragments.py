import itertools

import pytest
from helpers import g_families, labelset, lits, literal_families, small_programs
from hypothesis import given, settings

from prefas import fixtures
from prefas.base import Bounds, answer_sets, generating_sets, is_consistent, is_stratified
from prefas.fragments import (
    FragmentSet,
    conflicting,
    fragments,
    is_fragment,
    overrides,
    preferred_answer_sets_g,
    preferred_stable_fragment_sets,
    reduct_g,
    stable_fragment_sets,
)
from prefas.syntax import BoundExceededError, PrefProgram, close_preferences, parse_program

RUN = fixtures.load("indirect_conflict")
RUN_PLAIN = PrefProgram(RUN.rules)
CAR = fixtures.load("car_recommender")

F1 = labelset()
F2 = labelset("r2")
F3 = labelset("r3")
F4 = labelset("r1", "r2")
F5 = labelset("r2", "r3")
F6 = labelset("r1", "r2", "r3")
E1 = {F1, F2, F4}
E3 = {F1, F3}


class TestFragments:
    def test_inventory_of_indirect_conflict(self):
        assert set(fragments(RUN)) == {F1, F2, F3, F4, F5, F6}

    def test_unsupported_rule_is_no_fragment(self):
        assert not is_fragment(RUN, {"r1"})
        assert labelset("r1") not in fragments(RUN)

    def test_empty_program(self):
        assert fragments(PrefProgram(())) == [frozenset()]

    def test_bound_is_enforced(self):
        with pytest.raises(BoundExceededError):
            fragments(RUN, Bounds(max_fragment_rules=2))


class TestConflicting:
    def test_mutual_fragment_defeat(self):
        assert conflicting(RUN, F3, F4)

    def test_one_way_defeat_is_not_conflict(self):
        assert not conflicting(RUN, F2, F3)

    def test_empty_fragment_conflicts_with_nothing(self):
        assert not conflicting(RUN, F1, F6)


class TestOverrides:
    def test_preferred_fragment_wins(self):
        assert overrides(RUN, F3, F4)
        assert overrides(RUN, F3, F6)

    def test_non_conflicting_pair_never_overrides(self):
        assert not overrides(RUN, F3, F2)

    def test_empty_preferences_never_override(self):
        assert not overrides(RUN_PLAIN, F3, F4)

    def test_never_self_override(self):
        assert not overrides(RUN, F6, F6)

    def test_asymmetric_on_fixture(self):
        for x, y in itertools.permutations(fragments(RUN), 2):
            assert not (overrides(RUN, x, y) and overrides(RUN, y, x))


class TestReductG:
    def test_plain_reduct_removes_defeated_fragments(self):
        out = reduct_g(RUN_PLAIN, E1)
        assert out.members == frozenset(E1)

    def test_preference_lets_overriding_fragments_survive(self):
        # F3 overrides its only defeater F4, and so do F5 and F6: every
        # fragment survives, so E1 is not a fixpoint once r3 is preferred.
        out = reduct_g(RUN, E1)
        assert F3 in out.members
        assert out.members == {F1, F2, F3, F4, F5, F6}

    def test_empty_guess_removes_nothing(self):
        assert reduct_g(RUN, frozenset()).members == set(fragments(RUN))

    def test_winning_guess_is_a_fixpoint(self):
        assert reduct_g(RUN, E3).members == frozenset(E3)

    def test_non_fragment_member_rejected(self):
        with pytest.raises(ValueError):
            reduct_g(RUN, {labelset("r1")})


class TestStableFragmentSets:
    def test_indirect_conflict(self):
        got = [e.members for e in stable_fragment_sets(RUN)]
        assert got == [frozenset(E1), frozenset(E3)]

    def test_members_carry_union_and_heads(self):
        e1, e3 = stable_fragment_sets(RUN)
        assert e1.union == {"r1", "r2"} and e1.heads == lits("a", "x")
        assert e3.union == {"r3"} and e3.heads == lits("b")

    def test_empty_program(self):
        got = stable_fragment_sets(PrefProgram(()))
        assert [e.members for e in got] == [frozenset({frozenset()})]

    def test_car_recommender_families(self):
        shared = {labelset(), labelset("r1"), labelset("r2"), labelset("r1", "r2")}
        with_r3 = shared | {
            labelset("r1", "r3"),
            labelset("r1", "r3", "u1"),
            labelset("r1", "r2", "r3"),
            labelset("r1", "r2", "r3", "u1"),
        }
        with_u4 = shared | {
            labelset("r2", "u4"),
            labelset("r2", "u4", "u2"),
            labelset("r1", "r2", "u4"),
            labelset("r1", "r2", "u4", "u2"),
        }
        assert [e.members for e in stable_fragment_sets(CAR)] == [
            frozenset(with_r3),
            frozenset(with_u4),
        ]

    def brute_force_stable(self, p):
        frags = fragments(p)
        plain = PrefProgram(p.rules)
        out = []
        for k in range(len(frags) + 1):
            for combo in itertools.combinations(frags, k):
                if reduct_g(plain, combo).members == frozenset(combo):
                    out.append(frozenset(combo))
        return out

    @settings(max_examples=60, deadline=None)
    @given(small_programs(max_rules=4))
    def test_matches_brute_force_over_fragment_subsets(self, p):
        expected = set(self.brute_force_stable(p))
        assert {e.members for e in stable_fragment_sets(p)} == expected

    @settings(max_examples=60, deadline=None)
    @given(small_programs(max_rules=5))
    def test_equivalence_with_generating_sets(self, p):
        # stable fragment sets are exactly the fragment families of
        # generating sets, and their unions recover those sets
        gens = generating_sets(p)
        stables = stable_fragment_sets(p)
        assert [e.union for e in stables] == gens
        for e in stables:
            assert e.members == {f for f in fragments(p) if f <= e.union}


class TestPreferredAnswerSetsG:
    def test_indirect_conflict(self):
        got = preferred_answer_sets_g(RUN)
        assert g_families(got) == {lits("b")}
        [(answer, witness)] = got
        assert witness.members == frozenset(E3)
        assert answer.generating == {"r3"}

    def test_preference_between_non_conflicting_rules_is_ignored(self):
        be = fixtures.load("brewka_eiter")
        assert g_families(preferred_answer_sets_g(be)) == {lits("b")}

    def test_car_recommender_keeps_user_choice(self):
        s2 = lits("nice(car_1)", "safe(car_2)", "-rec(car_1)", "rec(car_2)")
        got = preferred_answer_sets_g(CAR)
        assert g_families(got) == {s2}
        [(answer, _)] = got
        assert answer.generating == {"r1", "r2", "u2", "u4"}

    def brute_force_preferred(self, p):
        frags = fragments(p)
        fams = set()
        for k in range(len(frags) + 1):
            for combo in itertools.combinations(frags, k):
                if reduct_g(p, combo).members == frozenset(combo):
                    heads = frozenset(p.rule(l).head for f in combo for l in f)
                    if is_consistent(heads):
                        fams.add(heads)
        return fams

    @settings(max_examples=50, deadline=None)
    @given(small_programs(max_rules=4))
    def test_matches_brute_force_over_fragment_subsets(self, p):
        assert g_families(preferred_answer_sets_g(p)) == self.brute_force_preferred(p)

    @settings(max_examples=80, deadline=None)
    @given(small_programs())
    def test_preferred_sets_are_stable(self, p):
        stable = {e.members for e in stable_fragment_sets(p)}
        for e in preferred_stable_fragment_sets(p):
            assert e.members in stable

    @settings(max_examples=80, deadline=None)
    @given(small_programs())
    def test_subset_of_answer_sets(self, p):
        fams = literal_families(answer_sets(p))
        assert g_families(preferred_answer_sets_g(p)) <= fams

    @settings(max_examples=80, deadline=None)
    @given(small_programs(with_prefs=False))
    def test_empty_prefs_equal_answer_sets(self, p):
        assert g_families(preferred_answer_sets_g(p)) == literal_families(answer_sets(p))

    @settings(max_examples=60, deadline=None)
    @given(small_programs())
    def test_monotone_in_preferences(self, p):
        pairs = sorted(p.prefs)
        sub = close_preferences(pairs[: len(pairs) // 2], [r.label for r in p.rules])
        weaker = PrefProgram(p.rules, sub)
        assert g_families(preferred_answer_sets_g(p)) <= g_families(
            preferred_answer_sets_g(weaker)
        )

    @settings(max_examples=80, deadline=None)
    @given(small_programs())
    def test_stratified_programs_keep_their_answer_sets(self, p):
        if is_stratified(p):
            assert g_families(preferred_answer_sets_g(p)) == literal_families(answer_sets(p))

    @settings(max_examples=60, deadline=None)
    @given(small_programs(max_rules=4))
    def test_override_asymmetry(self, p):
        frags = fragments(p)
        for x, y in itertools.combinations(frags, 2):
            assert not (overrides(p, x, y) and overrides(p, y, x))
