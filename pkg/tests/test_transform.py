import pytest
from helpers import lits, literal_families, small_programs
from hypothesis import given, settings

from prefas import fixtures
from prefas.base import Bounds, answer_sets
from prefas.gno import preferred_answer_sets_gno
from prefas.syntax import Literal, PrefasError, PrefProgram, parse_program
from prefas.transform import (
    check_correspondence,
    embed,
    format_transformed,
    project,
    transform,
    transformed_answer_sets,
)

RUN = fixtures.load("indirect_conflict")
BE = fixtures.load("brewka_eiter")


def rule_count_formula(p):
    return (
        2 * len(p.rules)
        + sum(
            sum(1 for q in p.rules if (q.label, r.label) not in p.prefs)
            for r in p.rules
        )
        + sum(len(r.neg_body) for r in p.rules)
    )


class TestStructure:
    def test_indirect_conflict_form_counts(self):
        t = transform(RUN)
        assert [len(t.rules_of_form(f)) for f in (1, 2, 3, 4)] == [3, 3, 8, 2]
        assert len(t.program) == 16

    def test_shadow_rule_for_less_preferred_support_is_absent(self):
        # r2 < r3, so no form-3 rule may rebuild r2's head x inside r3's
        # shadow copy; the x shadow occurs in a body but is never derivable
        t = transform(RUN)
        x_shadow_r3 = t.shadow_literal(Literal("x"), "r3")
        assert x_shadow_r3 not in {r.head for r in t.rules_of_form(3)}
        assert x_shadow_r3 in {l for r in t.rules_of_form(3) for l in r.pos_body}

    def test_single_fact(self):
        t = transform(parse_program("r1: a."))
        assert [str(r) for r in t.program] == [
            "t1: a :- __n_r1.",
            "t2: __n_r1.",
            "t3: __s_r1_a :- __n_r1.",
        ]

    def test_empty_program(self):
        t = transform(parse_program(""))
        assert t.program == ()
        assert format_transformed(t) == ""

    def test_reserved_source_atoms_are_refused(self):
        p = parse_program("r1: __x.", allow_reserved=True)
        with pytest.raises(PrefasError, match="reserved"):
            transform(p)

    def test_output_reparses(self):
        t = transform(fixtures.load("car_recommender"))
        again = parse_program(format_transformed(t), allow_reserved=True)
        assert frozenset(again.rules) == frozenset(t.program)

    @settings(max_examples=100, deadline=None)
    @given(small_programs())
    def test_rule_count_formula(self, p):
        assert len(transform(p).program) == rule_count_formula(p)

    @settings(max_examples=100, deadline=None)
    @given(small_programs())
    def test_generated_atoms_are_fresh(self, p):
        t = transform(p)
        generated = set(t.name_atoms.values()) | set(t.shadow_atoms.values()) | {t.inc_atom}
        assert len(generated) == len(t.name_atoms) + len(t.shadow_atoms) + 1
        assert not generated & p.atoms
        assert all(a.startswith("__") for a in generated)


class TestSolving:
    def test_indirect_conflict_answer_set(self):
        t = transform(RUN)
        sets = transformed_answer_sets(t)
        assert sets == [
            lits("b", "__n_r3", "__s_r1_b", "__s_r2_b", "__s_r3_b")
        ]
        assert [project(s, t) for s in sets] == [lits("b")]

    def test_agrees_with_direct_enumeration_of_the_output(self):
        t = transform(RUN)
        ours = set(transformed_answer_sets(t))
        theirs = literal_families(answer_sets(t.program, Bounds(max_rules=20)))
        assert ours == theirs

    def test_no_answer_set_contains_name_and_blocker(self):
        for name in ("indirect_conflict", "car_recommender", "interlocked_choices"):
            p = fixtures.load(name)
            t = transform(p)
            for a in transformed_answer_sets(t):
                for r in p.rules:
                    if t.name_literal(r.label) in a:
                        assert not r.neg_body & a


class TestProjectEmbed:
    def test_project_keeps_source_literals_only(self):
        t = transform(RUN)
        assert project(lits("b", "__n_r3", "__s_r1_b"), t) == lits("b")
        assert project(frozenset(), t) == frozenset()
        assert project(lits("__n_r1", "__inc"), t) == frozenset()

    def test_embed_indirect_conflict(self):
        t = transform(RUN)
        assert embed(lits("b"), RUN, t) == lits(
            "b", "__n_r3", "__s_r1_b", "__s_r2_b", "__s_r3_b"
        )

    def test_embed_empty_program(self):
        p = parse_program("")
        assert embed(frozenset(), p, transform(p)) == frozenset()

    def test_embed_refuses_non_preferred_sets(self):
        t = transform(RUN)
        with pytest.raises(ValueError):
            embed(lits("a", "x"), RUN, t)  # an answer set, but not gno-preferred

    def test_embed_round_trips_car_recommender(self):
        car = fixtures.load("car_recommender")
        t = transform(car)
        [s2] = [a.literals for a in preferred_answer_sets_gno(car)]
        assert project(embed(s2, car, t), t) == s2


class TestCorrespondence:
    def test_indirect_conflict(self):
        rep = check_correspondence(RUN)
        assert rep.ok
        assert set(rep.projected) == {lits("b")}
        assert set(rep.preferred) == {lits("b")}

    def test_brewka_eiter_both_sides_empty(self):
        rep = check_correspondence(BE)
        assert rep.ok
        assert rep.projected == ()
        assert rep.preferred == ()

    def test_preference_free_programs_recover_answer_sets(self):
        p = PrefProgram(RUN.rules)
        rep = check_correspondence(p)
        assert rep.ok
        assert set(rep.projected) == literal_families(answer_sets(p))

    @settings(max_examples=200, deadline=None)
    @given(small_programs())
    def test_random_programs(self, p):
        assert check_correspondence(p).ok
