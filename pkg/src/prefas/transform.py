"""Rewriting a program with preferences into a plain program whose answer
sets are exactly the gno-preferred answer sets of the original.

For each source rule r, with a fresh name atom n_r, fresh shadow atoms x^r
for the literals x that may reach r, and one fresh atom inc, the output
contains:

  form 1   head(r) :- n_r
  form 2   n_r :- body+(r), not shadows of body-(r)
  form 3   shadow of head(p) :- shadows of body+(p), n_p
           for every p not less preferred than r
  form 4   inc :- n_r, x, not inc          for every x in body-(r)

The n_r atoms encode the generating-set guess, the shadow atoms rebuild,
separately for each rule r, what the not-less-preferred part of the guess
derives (so only that part can block r through form 2), and the form-4
rules forbid a model containing both n_r and a literal of r's negative
body, which keeps the guess a generating set.

Fresh atoms use the parser-reserved "__" namespace:

  n_r for rule r        __n_<label>
  shadow of  a  at r    __s_<label>_<atom>
  shadow of -a  at r    __s_<label>_neg_<atom>
  inc                   __inc

so the output prints in the ordinary grammar and re-parses with
``allow_reserved=True``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .base import Bounds, _check_rule_bound, gl_is_answer_set, gr, is_consistent
from .gno import preferred_answer_sets_gno, trules
from .syntax import RESERVED_PREFIX, Literal, PrefProgram, PrefasError, Rule


@dataclass(frozen=True)
class TransformedProgram:
    """The rewritten plain program plus the naming maps into it."""

    source: PrefProgram
    program: tuple[Rule, ...]
    name_atoms: dict[str, str]  # source rule label -> n_r atom
    shadow_atoms: dict[tuple[Literal, str], str]  # (literal, rule label) -> x^r atom
    inc_atom: str
    source_atoms: frozenset[str]
    forms: dict[str, int]  # output rule label -> 1..4

    def rules_of_form(self, form: int) -> tuple[Rule, ...]:
        return tuple(r for r in self.program if self.forms[r.label] == form)

    def name_literal(self, label: str) -> Literal:
        return Literal(self.name_atoms[label])

    def shadow_literal(self, x: Literal, label: str) -> Literal:
        return Literal(self.shadow_atoms[(x, label)])


def _shadow_name(x: Literal, label: str) -> str:
    sign = "" if x.positive else "neg_"
    return f"{RESERVED_PREFIX}s_{label}_{sign}{x.atom}"


def transform(p: PrefProgram) -> TransformedProgram:
    """Rewrite ``p`` into a plain program per the module description.

    The output always has 2|P| + sum over r of |{p : p not < r}| + sum over
    r of |body-(r)| rules, which is quadratic in the input; this is checked
    on every call.
    """
    for atom in p.atoms:
        if atom.startswith(RESERVED_PREFIX):
            raise PrefasError(
                f"source atom {atom!r} uses the reserved {RESERVED_PREFIX!r} prefix"
            )

    name_atoms = {r.label: f"{RESERVED_PREFIX}n_{r.label}" for r in p.rules}
    inc_atom = f"{RESERVED_PREFIX}inc"
    shadow_atoms: dict[tuple[Literal, str], str] = {}

    def shadow(x: Literal, label: str) -> Literal:
        atom = shadow_atoms.setdefault((x, label), _shadow_name(x, label))
        return Literal(atom)

    rules: list[Rule] = []
    forms: dict[str, int] = {}

    def emit(form: int, head: Literal, pos: Iterable[Literal] = (), neg: Iterable[Literal] = ()):
        label = f"t{len(rules) + 1}"
        rules.append(Rule(label, head, frozenset(pos), frozenset(neg)))
        forms[label] = form

    for r in p.rules:
        n_r = Literal(name_atoms[r.label])
        emit(1, r.head, [n_r])
        emit(2, n_r, r.pos_body, [shadow(x, r.label) for x in sorted(r.neg_body)])
        for q in p.rules:
            if not p.preferred_over(q.label, r.label):
                emit(
                    3,
                    shadow(q.head, r.label),
                    [shadow(x, r.label) for x in sorted(q.pos_body)] + [Literal(name_atoms[q.label])],
                )
        for x in sorted(r.neg_body):
            emit(4, Literal(inc_atom), [n_r, x], [Literal(inc_atom)])

    generated = list(name_atoms.values()) + list(shadow_atoms.values()) + [inc_atom]
    if len(set(generated)) != len(generated) or set(generated) & p.atoms:
        raise PrefasError("generated atom names collide; relabel the source rules")

    expected = (
        2 * len(p.rules)
        + sum(
            sum(1 for q in p.rules if not p.preferred_over(q.label, r.label))
            for r in p.rules
        )
        + sum(len(r.neg_body) for r in p.rules)
    )
    if len(rules) != expected:
        raise PrefasError(
            f"transformed program has {len(rules)} rules, expected {expected}"
        )

    return TransformedProgram(
        source=p,
        program=tuple(rules),
        name_atoms=name_atoms,
        shadow_atoms=shadow_atoms,
        inc_atom=inc_atom,
        source_atoms=p.atoms,
        forms=forms,
    )


def project(a: Iterable[Literal], t: TransformedProgram) -> frozenset[Literal]:
    """Restrict a literal set of the transformed program to source literals."""
    return frozenset(l for l in a if l.atom in t.source_atoms)


def embed(
    s: Iterable[Literal], p: PrefProgram, t: TransformedProgram, bounds: Bounds | None = None
) -> frozenset[Literal]:
    """The answer set of the transformed program that projects to ``s``.

    ``s`` must be a gno-preferred answer set of ``p``; anything else is
    refused, since the construction is only defined there.
    """
    s = frozenset(s)
    preferred = {a.literals for a in preferred_answer_sets_gno(p, bounds)}
    if s not in preferred:
        raise ValueError(f"{sorted(map(str, s))} is not a gno-preferred answer set")
    r = gr(s, p)
    out = set(s)
    out.update(t.name_literal(label) for label in r)
    for rule in p.rules:
        for member in trules(p, rule.label, r):
            out.add(t.shadow_literal(p.rule(member).head, rule.label))
    return frozenset(out)


def transformed_answer_sets(
    t: TransformedProgram, bounds: Bounds | None = None
) -> list[frozenset[Literal]]:
    """Answer sets of the transformed program.

    Source literals and shadows only appear as heads of rules whose bodies
    are driven by the n_r atoms, and inc can never be in an answer set, so
    every answer set is determined by its n_r part.  Candidates therefore
    range over subsets of the name atoms, closed under forms 1 and 3; each
    closure is then checked with the classic reduct-and-least-model test
    against the full program.
    """
    bounds = bounds or Bounds.from_env()
    src_rules = t.source.rules
    _check_rule_bound(len(src_rules), bounds)
    names = [t.name_literal(r.label) for r in src_rules]
    positive_forms = [r for r in t.program if t.forms[r.label] in (1, 3)]
    out = []
    for mask in range(1 << len(names)):
        chosen = {names[i] for i in range(len(names)) if mask >> i & 1}
        model = set(chosen)
        changed = True
        while changed:
            changed = False
            for r in positive_forms:
                if r.head not in model and r.pos_body <= model:
                    model.add(r.head)
                    changed = True
        cand = frozenset(model)
        if is_consistent(cand) and gl_is_answer_set(t.program, cand):
            out.append(cand)
    return out


@dataclass(frozen=True)
class CorrespondenceReport:
    """Outcome of comparing the two solving routes for one program."""

    ok: bool
    transformed: tuple[frozenset[Literal], ...]
    projected: tuple[frozenset[Literal], ...]
    preferred: tuple[frozenset[Literal], ...]
    missing: tuple[frozenset[Literal], ...]  # gno-preferred but not projected
    extra: tuple[frozenset[Literal], ...]  # projected but not gno-preferred
    embed_mismatches: tuple[tuple[frozenset[Literal], frozenset[Literal]], ...]


def check_correspondence(p: PrefProgram, bounds: Bounds | None = None) -> CorrespondenceReport:
    """Solve ``p`` through the gno semantics and through the transformation
    and compare: projections must match the preferred answer sets as
    families, and every answer set of the transformed program must equal
    the embedding of its projection."""
    bounds = bounds or Bounds.from_env()
    t = transform(p)
    transformed = transformed_answer_sets(t, bounds)
    projected = [project(a, t) for a in transformed]
    preferred = [a.literals for a in preferred_answer_sets_gno(p, bounds)]
    missing = tuple(s for s in preferred if s not in projected)
    extra = tuple(s for s in projected if s not in preferred)
    mismatches = []
    for a, s in zip(transformed, projected):
        if s in preferred and embed(s, p, t, bounds) != a:
            mismatches.append((s, a))
    return CorrespondenceReport(
        ok=not missing and not extra and not mismatches,
        transformed=tuple(transformed),
        projected=tuple(projected),
        preferred=tuple(preferred),
        missing=missing,
        extra=extra,
        embed_mismatches=tuple(mismatches),
    )


def format_transformed(t: TransformedProgram) -> str:
    """Render the transformed program in the ordinary grammar."""
    from .syntax import format_program

    return format_program(PrefProgram(t.program))
