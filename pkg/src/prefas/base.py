"""Answer set semantics via generating sets, plus an independent oracle.

The central notions, over a program P (a set of rules):

  defeat          rule r1 defeats r2 when head(r1) is in r2's negative body;
                  lifted to rule sets through their heads
  minpos(R)       the least subset of R closed under applying rules whose
                  positive bodies are already derived; negative bodies are
                  ignored
  reduct(P, R)    P minus the rules defeated by R
  generating set  R with R = minpos(reduct(P, R))
  answer set      a consistent literal set equal to head(R) for some
                  generating set R

``gl_answer_sets`` recomputes answer sets from the classic two-step
reduction (delete rules whose negative body meets the candidate, drop the
remaining negative bodies, take the least model) and is kept deliberately
simple and separate from the enumeration kernels so the two routes check
each other.

Enumeration is exhaustive over rule subsets in bitmask order, bounded by
:class:`Bounds`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

from . import kernels
from .syntax import BoundExceededError, Literal, PrefProgram, Rule

ProgramLike = Union[PrefProgram, Sequence[Rule]]
RuleOrRules = Union[Rule, Iterable[Rule]]


@dataclass(frozen=True)
class Bounds:
    """Enumeration limits.

    ``max_rules`` caps subset enumeration (generating sets and the
    preference semantics), ``max_atoms`` caps the candidate space of the
    classic-reduction oracle, and ``max_fragment_rules`` caps fragment
    enumeration, which walks all 2^n rule subsets twice over.
    """

    max_rules: int = 20
    max_atoms: int = 16
    max_fragment_rules: int = 14

    @classmethod
    def from_env(cls) -> "Bounds":
        def read(name: str, default: int) -> int:
            raw = os.environ.get(name)
            return int(raw) if raw else default

        return cls(
            max_rules=read("PREFAS_MAX_RULES", cls.max_rules),
            max_atoms=read("PREFAS_MAX_ATOMS", cls.max_atoms),
            max_fragment_rules=read("PREFAS_MAX_FRAGMENT_RULES", cls.max_fragment_rules),
        )


DEFAULT_BOUNDS = Bounds()


@dataclass(frozen=True)
class AnswerSet:
    """An answer set together with the generating rules that witness it."""

    literals: frozenset[Literal]
    generating: frozenset[str]

    def __str__(self) -> str:
        return "{" + ", ".join(sorted(map(str, self.literals))) + "}"


def rules_of(p: ProgramLike) -> tuple[Rule, ...]:
    if isinstance(p, PrefProgram):
        return p.rules
    return tuple(p)


def is_consistent(literals: Iterable[Literal]) -> bool:
    lits = set(literals)
    return not any(l.complement in lits for l in lits)


def defeats(attacker: RuleOrRules, target: RuleOrRules) -> bool:
    """Does ``attacker`` defeat ``target``?

    A rule defeats another when its head occurs in the other's negative
    body; a rule set defeats whatever any of its heads defeats.
    """
    heads = {attacker.head} if isinstance(attacker, Rule) else {r.head for r in attacker}
    targets = (target,) if isinstance(target, Rule) else tuple(target)
    return any(heads & r.neg_body for r in targets)


def gr(s: Iterable[Literal], p: ProgramLike) -> frozenset[str]:
    """The rules applicable under literal set ``s``: positive body inside s,
    negative body disjoint from s."""
    lits = set(s)
    return frozenset(
        r.label
        for r in rules_of(p)
        if r.pos_body <= lits and not r.neg_body & lits
    )


def minpos(rules: Iterable[Rule]) -> frozenset[str]:
    """Labels of the least rule set positively satisfying ``rules``.

    Rules fire iteratively: a rule joins once its positive body is among the
    heads of rules already in.  Negative bodies play no part.
    """
    pending = list(rules)
    derived: set[Literal] = set()
    fired: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in pending:
            if r.label not in fired and r.pos_body <= derived:
                fired.add(r.label)
                derived.add(r.head)
                changed = True
    return frozenset(fired)


def reduct(p: ProgramLike, r_labels: Iterable[str]) -> tuple[Rule, ...]:
    """The program minus every rule defeated by the rule set ``r_labels``."""
    rules = rules_of(p)
    members = set(r_labels)
    heads = {r.head for r in rules if r.label in members}
    return tuple(r for r in rules if not r.neg_body & heads)


def is_generating(p: ProgramLike, r_labels: Iterable[str]) -> bool:
    members = frozenset(r_labels)
    return minpos(reduct(p, members)) == members


@dataclass(frozen=True)
class _Index:
    """Bitmask tables for one program, shared by the enumeration routines."""

    rules: tuple[Rule, ...]
    n: int
    labels: tuple[str, ...]
    position: dict[str, int]
    head_lits: tuple[Literal, ...]
    head_id: dict[Literal, int]
    head_bits: tuple[int, ...]
    pos_masks: tuple[int, ...]
    pos_ok: tuple[bool, ...]
    neg_hmasks: tuple[int, ...]  # negative-body literals that some rule derives
    defeater_masks: tuple[int, ...]  # rules whose head is in rule i's negative body

    def mask_of(self, labels: Iterable[str]) -> int:
        return sum(1 << self.position[l] for l in set(labels))

    def labels_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.labels[i] for i in range(self.n) if mask >> i & 1)

    def head_lits_of(self, mask: int) -> int:
        bits = 0
        for i in range(self.n):
            if mask >> i & 1:
                bits |= self.head_bits[i]
        return bits

    def literals_of_head_bits(self, bits: int) -> frozenset[Literal]:
        return frozenset(
            self.head_lits[j] for j in range(len(self.head_lits)) if bits >> j & 1
        )

    def minpos_mask(self, members: int) -> int:
        return kernels.minpos(members, list(self.head_bits), list(self.pos_masks), list(self.pos_ok))


@lru_cache(maxsize=256)
def _index(rules: tuple[Rule, ...]) -> _Index:
    n = len(rules)
    head_lits: list[Literal] = []
    head_id: dict[Literal, int] = {}
    for r in rules:
        if r.head not in head_id:
            head_id[r.head] = len(head_lits)
            head_lits.append(r.head)
    head_bits = tuple(1 << head_id[r.head] for r in rules)
    pos_masks = tuple(
        sum(1 << head_id[l] for l in r.pos_body if l in head_id) for r in rules
    )
    pos_ok = tuple(all(l in head_id for l in r.pos_body) for r in rules)
    neg_hmasks = tuple(
        sum(1 << head_id[l] for l in r.neg_body if l in head_id) for r in rules
    )
    defeater_masks = tuple(
        sum(1 << j for j, other in enumerate(rules) if other.head in r.neg_body)
        for r in rules
    )
    return _Index(
        rules=rules,
        n=n,
        labels=tuple(r.label for r in rules),
        position={r.label: i for i, r in enumerate(rules)},
        head_lits=tuple(head_lits),
        head_id=head_id,
        head_bits=head_bits,
        pos_masks=pos_masks,
        pos_ok=pos_ok,
        neg_hmasks=neg_hmasks,
        defeater_masks=defeater_masks,
    )


def _check_rule_bound(n: int, bounds: Bounds) -> None:
    if n > bounds.max_rules:
        raise BoundExceededError(
            f"program has {n} rules; subset enumeration is bounded at "
            f"{bounds.max_rules} (PREFAS_MAX_RULES)"
        )


def _fixpoint_subsets(idx: _Index, remover: Sequence[int]) -> list[int]:
    return kernels.enum_fixpoints(
        idx.n, list(idx.head_bits), list(idx.pos_masks), list(idx.pos_ok), list(remover)
    )


def generating_sets(p: ProgramLike, bounds: Bounds | None = None) -> list[frozenset[str]]:
    """All generating sets, in bitmask order over source rule order."""
    bounds = bounds or Bounds.from_env()
    idx = _index(rules_of(p))
    _check_rule_bound(idx.n, bounds)
    return [idx.labels_of(m) for m in _fixpoint_subsets(idx, idx.defeater_masks)]


def _answer_sets_from_masks(idx: _Index, masks: Iterable[int]) -> list[AnswerSet]:
    out: list[AnswerSet] = []
    seen: set[frozenset[Literal]] = set()
    for m in masks:
        lits = idx.literals_of_head_bits(idx.head_lits_of(m))
        if not is_consistent(lits) or lits in seen:
            continue
        seen.add(lits)
        out.append(AnswerSet(lits, idx.labels_of(m)))
    return out


def answer_sets(p: ProgramLike, bounds: Bounds | None = None) -> list[AnswerSet]:
    """Answer sets of the plain program: heads of generating sets that are
    consistent, deduplicated by literal set."""
    bounds = bounds or Bounds.from_env()
    idx = _index(rules_of(p))
    _check_rule_bound(idx.n, bounds)
    return _answer_sets_from_masks(idx, _fixpoint_subsets(idx, idx.defeater_masks))


def gl_least_model(rules: Iterable[Rule]) -> frozenset[Literal]:
    """Least model of a program read positively (negative bodies dropped)."""
    pending = list(rules)
    derived: set[Literal] = set()
    changed = True
    while changed:
        changed = False
        for r in pending:
            if r.head not in derived and r.pos_body <= derived:
                derived.add(r.head)
                changed = True
    return frozenset(derived)


def gl_is_answer_set(p: ProgramLike, s: Iterable[Literal]) -> bool:
    """Classic answer set test: delete rules whose negative body meets ``s``,
    then ``s`` must equal the least model of what remains."""
    lits = frozenset(s)
    if not is_consistent(lits):
        return False
    kept = [r for r in rules_of(p) if not r.neg_body & lits]
    return gl_least_model(kept) == lits


def gl_answer_sets(p: ProgramLike, bounds: Bounds | None = None) -> list[frozenset[Literal]]:
    """Answer sets by direct candidate enumeration over head literals.

    Any answer set is the least model of its reduct and therefore only
    contains literals some rule derives, so candidates range over subsets of
    the distinct head literals.
    """
    bounds = bounds or Bounds.from_env()
    rules = rules_of(p)
    atoms = {r.head.atom for r in rules}
    for r in rules:
        atoms.update(l.atom for l in r.pos_body)
        atoms.update(l.atom for l in r.neg_body)
    if len(atoms) > bounds.max_atoms:
        raise BoundExceededError(
            f"program mentions {len(atoms)} atoms; candidate enumeration is "
            f"bounded at {bounds.max_atoms} (PREFAS_MAX_ATOMS)"
        )
    basis: list[Literal] = []
    seen: set[Literal] = set()
    for r in rules:
        if r.head not in seen:
            seen.add(r.head)
            basis.append(r.head)
    out = []
    for mask in range(1 << len(basis)):
        cand = frozenset(basis[i] for i in range(len(basis)) if mask >> i & 1)
        if gl_is_answer_set(rules, cand):
            out.append(cand)
    return out


def is_stratified(p: ProgramLike) -> bool:
    """No dependency cycle through default negation.

    The dependency graph has an edge from a rule's head to each of its body
    literals, the negative-body edges marked; ``a`` and ``-a`` are distinct
    nodes.  The program is stratified when no marked edge lies on a cycle.
    """
    rules = rules_of(p)
    edges: dict[Literal, set[Literal]] = {}
    neg_edges: list[tuple[Literal, Literal]] = []
    for r in rules:
        targets = edges.setdefault(r.head, set())
        targets.update(r.pos_body)
        targets.update(r.neg_body)
        neg_edges.extend((r.head, l) for l in r.neg_body)

    def reaches(src: Literal, dst: Literal) -> bool:
        stack = [src]
        visited = set()
        while stack:
            node = stack.pop()
            if node == dst:
                return True
            if node in visited:
                continue
            visited.add(node)
            stack.extend(edges.get(node, ()))
        return False

    return not any(reaches(body_lit, head) for head, body_lit in neg_edges)
