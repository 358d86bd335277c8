"""Executable property checks and the random-program fuzzer.

Each check returns violation records instead of raising: a violation
carries the program and a witness payload from which the finding can be
re-checked independently.  ``fuzz`` drives the checks over a deterministic
stream of random programs (one derived seed per program) and also counts
the programs that witness the strict inclusions between the semantics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from . import fixtures
from .base import Bounds, answer_sets, gr, is_stratified
from .direct import preferred_answer_sets_d
from .fragments import fragments, overrides, preferred_answer_sets_g
from .gno import preferred_answer_sets_gno
from .syntax import Literal, PrefProgram, Rule, close_preferences, format_program
from .transform import check_correspondence

PROPERTIES = (
    "principle1",
    "hierarchy",
    "strat_eq",
    "empty_pref",
    "monotonicity",
    "transform_eq",
    "override_asym",
    "pas_subset_as",
)

SEMANTICS = ("d", "g", "gno")


def preferred_families(p: PrefProgram, semantics: str, bounds: Bounds | None = None):
    if semantics == "d":
        return {a.literals for a in preferred_answer_sets_d(p, bounds)}
    if semantics == "g":
        return {a.literals for a, _ in preferred_answer_sets_g(p, bounds)}
    if semantics == "gno":
        return {a.literals for a in preferred_answer_sets_gno(p, bounds)}
    raise ValueError(f"unknown semantics {semantics!r}")


@dataclass(frozen=True)
class Violation:
    kind: str  # one of PROPERTIES
    program: PrefProgram
    witness: dict
    seed: int | None = None

    def __str__(self) -> str:
        head = f"{self.kind} violated"
        if self.seed is not None:
            head += f" (seed {self.seed})"
        return head + f": {self.witness}\n{format_program(self.program)}"


def _sorted_family(family) -> list[list[str]]:
    return sorted(sorted(map(str, s)) for s in family)


def check_principle_1(
    p: PrefProgram, semantics: str, bounds: Bounds | None = None
) -> list[Violation]:
    """If two answer sets' applicable rules differ by exactly one rule each
    and one of the two is preferred, the set built with the less preferred
    one must not be a preferred answer set."""
    preferred = preferred_families(p, semantics, bounds)
    asets = answer_sets(p, bounds)
    out = []
    for s1 in asets:
        for s2 in asets:
            if s1.literals == s2.literals:
                continue
            g1 = gr(s1.literals, p)
            g2 = gr(s2.literals, p)
            only1, only2 = g1 - g2, g2 - g1
            if len(only1) != 1 or len(only2) != 1:
                continue
            (r1,), (r2,) = only1, only2
            if p.preferred_over(r2, r1) and s2.literals in preferred:
                out.append(
                    Violation(
                        "principle1",
                        p,
                        {
                            "semantics": semantics,
                            "winner_rule": r1,
                            "loser_rule": r2,
                            "excluded_set": sorted(map(str, s2.literals)),
                        },
                    )
                )
    return out


def check_hierarchy(p: PrefProgram, bounds: Bounds | None = None) -> list[Violation]:
    """gno-preferred sets must be g-preferred, and g-preferred sets d-preferred."""
    fam = {s: preferred_families(p, s, bounds) for s in SEMANTICS}
    out = []
    for lower, upper in (("gno", "g"), ("g", "d")):
        if not fam[lower] <= fam[upper]:
            out.append(
                Violation(
                    "hierarchy",
                    p,
                    {
                        "lower": lower,
                        "upper": upper,
                        "not_included": _sorted_family(fam[lower] - fam[upper]),
                    },
                )
            )
    return out


def check_strat_equivalence(p: PrefProgram, bounds: Bounds | None = None) -> Violation | None:
    """On stratified programs the g semantics must ignore all preferences."""
    if not is_stratified(p):
        return None
    expected = {a.literals for a in answer_sets(p, bounds)}
    got = preferred_families(p, "g", bounds)
    if got != expected:
        return Violation(
            "strat_eq",
            p,
            {"answer_sets": _sorted_family(expected), "preferred_g": _sorted_family(got)},
        )
    return None


def check_monotonicity(
    rules: Sequence[Rule] | PrefProgram,
    prefs1: Iterable[tuple[str, str]],
    prefs2: Iterable[tuple[str, str]],
    bounds: Bounds | None = None,
) -> Violation | None:
    """Growing the preference relation may only shrink the preferred sets."""
    rules = rules.rules if isinstance(rules, PrefProgram) else tuple(rules)
    prefs1, prefs2 = frozenset(prefs1), frozenset(prefs2)
    if not prefs1 <= prefs2:
        raise ValueError("prefs1 must be a subset of prefs2")
    p1 = PrefProgram(rules, prefs1)
    p2 = PrefProgram(rules, prefs2)
    for semantics in ("g", "gno"):
        strong = preferred_families(p2, semantics, bounds)
        weak = preferred_families(p1, semantics, bounds)
        if not strong <= weak:
            return Violation(
                "monotonicity",
                p2,
                {
                    "semantics": semantics,
                    "prefs1": sorted(prefs1),
                    "escaped": _sorted_family(strong - weak),
                },
            )
    return None


def _check_empty_pref(p: PrefProgram, bounds: Bounds | None) -> Violation | None:
    plain = PrefProgram(p.rules)
    expected = {a.literals for a in answer_sets(plain, bounds)}
    for semantics in SEMANTICS:
        got = preferred_families(plain, semantics, bounds)
        if got != expected:
            return Violation(
                "empty_pref",
                plain,
                {"semantics": semantics, "got": _sorted_family(got)},
            )
    return None


def _check_pas_subset_as(p: PrefProgram, bounds: Bounds | None) -> Violation | None:
    expected = {a.literals for a in answer_sets(p, bounds)}
    for semantics in SEMANTICS:
        got = preferred_families(p, semantics, bounds)
        if not got <= expected:
            return Violation(
                "pas_subset_as",
                p,
                {"semantics": semantics, "extra": _sorted_family(got - expected)},
            )
    return None


def _check_transform_eq(p: PrefProgram, bounds: Bounds | None) -> Violation | None:
    report = check_correspondence(p, bounds)
    if report.ok:
        return None
    return Violation(
        "transform_eq",
        p,
        {
            "missing": _sorted_family(report.missing),
            "extra": _sorted_family(report.extra),
            "embed_mismatches": len(report.embed_mismatches),
        },
    )


def _check_override_asym(p: PrefProgram, bounds: Bounds | None) -> Violation | None:
    frags = fragments(p, bounds)
    for i, x in enumerate(frags):
        for y in frags[i + 1 :]:
            if overrides(p, x, y) and overrides(p, y, x):
                return Violation(
                    "override_asym", p, {"x": sorted(x), "y": sorted(y)}
                )
    return None


@dataclass(frozen=True)
class GenParams:
    """Knobs of the random program generator; a deterministic function of
    ``seed`` for fixed knobs."""

    n_atoms: int = 6
    n_rules: int = 8
    max_pos_body: int = 2
    max_neg_body: int = 2
    p_classical_neg: float = 0.2
    pref_density: float = 0.3
    seed: int = 0
    stratified: bool = False


def _atom_names(n: int) -> list[str]:
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    if n <= len(alphabet):
        return list(alphabet[:n])
    return [f"a{i}" for i in range(1, n + 1)]


def random_lpp(params: GenParams) -> PrefProgram:
    """A random program with preferences, deterministic in ``params.seed``.

    Preference pairs are sampled consistently with a random total order on
    the rules, so the written pairs are acyclic and closure keeps them
    asymmetric.  In stratified mode programs with a negative dependency
    cycle are resampled.
    """
    rng = random.Random(params.seed)
    atoms = _atom_names(params.n_atoms)

    def random_literal() -> Literal:
        return Literal(rng.choice(atoms), rng.random() >= params.p_classical_neg)

    for _ in range(10_000):
        rules = []
        seen = set()
        for i in range(params.n_rules):
            for _ in range(100):
                head = random_literal()
                pos = frozenset(
                    random_literal() for _ in range(rng.randint(0, params.max_pos_body))
                )
                neg = frozenset(
                    random_literal() for _ in range(rng.randint(0, params.max_neg_body))
                )
                if (head, pos, neg) not in seen:
                    seen.add((head, pos, neg))
                    rules.append(Rule(f"r{i + 1}", head, pos, neg))
                    break
            else:
                raise RuntimeError("could not draw enough distinct rules")
        labels = [r.label for r in rules]
        order = rng.sample(labels, len(labels))
        pairs = [
            (order[i], order[j])
            for i in range(len(order))
            for j in range(i + 1, len(order))
            if rng.random() < params.pref_density
        ]
        program = PrefProgram(
            tuple(rules), close_preferences(pairs, labels), tuple(pairs)
        )
        if not params.stratified or is_stratified(program):
            return program
    raise RuntimeError("could not draw a stratified program; lower the density")


@dataclass
class FuzzReport:
    params: GenParams
    count: int
    properties: tuple[str, ...]
    violations: list[Violation] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)
    strict_g_over_gno: int = 0  # programs where gno-preferred is strictly below g
    strict_d_over_g: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "seed": self.params.seed,
            "properties": list(self.properties),
            "checked": dict(self.checked),
            "violations": [
                {
                    "kind": v.kind,
                    "seed": v.seed,
                    "witness": v.witness,
                    "program": format_program(v.program),
                }
                for v in self.violations
            ],
            "strictness_witnesses": {
                "g_over_gno": self.strict_g_over_gno,
                "d_over_g": self.strict_d_over_g,
            },
        }

    def __str__(self) -> str:
        lines = [
            f"fuzz: {self.count} programs from seed {self.params.seed}, "
            f"properties: {', '.join(self.properties)}"
        ]
        for name in self.properties:
            lines.append(f"  {name}: {self.checked.get(name, 0)} checks")
        lines.append(
            f"  strictness witnesses: g over gno {self.strict_g_over_gno}, "
            f"d over g {self.strict_d_over_g}"
        )
        if self.violations:
            lines.append(f"  VIOLATIONS: {len(self.violations)}")
            lines.extend(f"    {v}" for v in self.violations)
        else:
            lines.append("  no violations")
        return "\n".join(lines)


def fuzz(
    params: GenParams,
    count: int,
    properties: Iterable[str] = PROPERTIES,
    bounds: Bounds | None = None,
) -> FuzzReport:
    """Run the selected checks over ``count`` generated programs.

    Violations are data, not exceptions; each carries the seed of the
    program that produced it, and re-running the narrow check on that
    program reproduces it.
    """
    properties = tuple(properties)
    unknown = set(properties) - set(PROPERTIES)
    if unknown:
        raise ValueError(f"unknown properties: {sorted(unknown)}")
    report = FuzzReport(params=params, count=count, properties=properties)

    def record(found: Violation | list[Violation] | None, seed: int, name: str):
        report.checked[name] = report.checked.get(name, 0) + 1
        if not found:
            return
        items = found if isinstance(found, list) else [found]
        report.violations.extend(replace(v, seed=seed) for v in items)

    for i in range(count):
        seed = params.seed + i
        draw = replace(params, seed=seed)
        p = random_lpp(draw)
        rng = random.Random(f"{seed}/aux")
        if "principle1" in properties:
            found = []
            for semantics in SEMANTICS:
                found.extend(check_principle_1(p, semantics, bounds))
            record(found, seed, "principle1")
        if "hierarchy" in properties:
            record(check_hierarchy(p, bounds), seed, "hierarchy")
            fam = {s: preferred_families(p, s, bounds) for s in SEMANTICS}
            if fam["gno"] < fam["g"]:
                report.strict_g_over_gno += 1
            if fam["g"] < fam["d"]:
                report.strict_d_over_g += 1
        if "strat_eq" in properties:
            strat = random_lpp(replace(draw, stratified=True))
            record(check_strat_equivalence(strat, bounds), seed, "strat_eq")
        if "empty_pref" in properties:
            record(_check_empty_pref(p, bounds), seed, "empty_pref")
        if "monotonicity" in properties:
            sub = [pair for pair in sorted(p.prefs) if rng.random() < 0.5]
            prefs1 = close_preferences(sub, [r.label for r in p.rules])
            record(check_monotonicity(p.rules, prefs1, p.prefs, bounds), seed, "monotonicity")
        if "transform_eq" in properties:
            record(_check_transform_eq(p, bounds), seed, "transform_eq")
        if "override_asym" in properties:
            record(_check_override_asym(p, bounds), seed, "override_asym")
        if "pas_subset_as" in properties:
            record(_check_pas_subset_as(p, bounds), seed, "pas_subset_as")
    return report


def check_program(
    p: PrefProgram,
    properties: Iterable[str] = PROPERTIES,
    bounds: Bounds | None = None,
) -> list[Violation]:
    """Run the selected checks against one given program.

    Monotonicity is checked against the empty relation, and stratified
    equivalence is vacuous when the program is not stratified.
    """
    properties = tuple(properties)
    unknown = set(properties) - set(PROPERTIES)
    if unknown:
        raise ValueError(f"unknown properties: {sorted(unknown)}")
    out: list[Violation] = []

    def add(found: Violation | list[Violation] | None):
        if found:
            out.extend(found if isinstance(found, list) else [found])

    if "principle1" in properties:
        for semantics in SEMANTICS:
            add(check_principle_1(p, semantics, bounds))
    if "hierarchy" in properties:
        add(check_hierarchy(p, bounds))
    if "strat_eq" in properties:
        add(check_strat_equivalence(p, bounds))
    if "empty_pref" in properties:
        add(_check_empty_pref(p, bounds))
    if "monotonicity" in properties:
        add(check_monotonicity(p.rules, frozenset(), p.prefs, bounds))
    if "transform_eq" in properties:
        add(_check_transform_eq(p, bounds))
    if "override_asym" in properties:
        add(_check_override_asym(p, bounds))
    if "pas_subset_as" in properties:
        add(_check_pas_subset_as(p, bounds))
    return out


@dataclass(frozen=True)
class FixtureReport:
    """Behaviour of the three bundled principle fixtures.

    ``independent_choices`` keeps its single answer set under d and g; the
    gno semantics drops it (the preference relates non-conflicting rules,
    which gno does not ignore).  ``interlocked_choices`` turns the same
    preference into an indirect conflict, removing that set everywhere.
    ``self_blocking_choice`` has an answer set but no preferred one.
    """

    independent: dict
    interlocked: dict
    self_blocking: dict

    @property
    def ok(self) -> bool:
        return (
            self.independent["ok"] and self.interlocked["ok"] and self.self_blocking["ok"]
        )

    def to_dict(self) -> dict:
        return {
            "independent_choices": self.independent,
            "interlocked_choices": self.interlocked,
            "self_blocking_choice": self.self_blocking,
        }


def check_principle_23_fixtures(bounds: Bounds | None = None) -> FixtureReport:
    select = frozenset({Literal("select(a)", False), Literal("select(b)")})

    p2 = fixtures.load("independent_choices")
    fam2 = {s: preferred_families(p2, s, bounds) for s in SEMANTICS}
    independent = {
        "answer_sets": _sorted_family({a.literals for a in answer_sets(p2, bounds)}),
        "preferred": {s: _sorted_family(fam2[s]) for s in SEMANTICS},
        "ok": select in fam2["g"] and select in fam2["d"] and fam2["gno"] == set(),
    }

    p2x = fixtures.load("interlocked_choices")
    fam2x = {s: preferred_families(p2x, s, bounds) for s in SEMANTICS}
    interlocked = {
        "answer_sets": _sorted_family({a.literals for a in answer_sets(p2x, bounds)}),
        "preferred": {s: _sorted_family(fam2x[s]) for s in SEMANTICS},
        "ok": select not in fam2x["g"] and select not in fam2x["gno"],
    }

    p3x = fixtures.load("self_blocking_choice")
    fam3 = {s: preferred_families(p3x, s, bounds) for s in SEMANTICS}
    asets3 = {a.literals for a in answer_sets(p3x, bounds)}
    self_blocking = {
        "answer_sets": _sorted_family(asets3),
        "preferred": {s: _sorted_family(fam3[s]) for s in SEMANTICS},
        "ok": bool(asets3) and fam3["g"] == set() and fam3["gno"] == set(),
    }

    return FixtureReport(independent, interlocked, self_blocking)
