"""The fragment-based preference semantics (the ``g`` semantics).

Conflicts between rules can be indirect, mediated by other rules, so this
semantics never compares two rules in isolation.  The unit of conflict is a
*fragment*: a rule set T with minpos(T) = T, i.e. one whose positive bodies
are supported within T itself.  Fragments X and Y are conflicting when each
defeats the other, and X overrides Y when every X-rule defeated by Y is
answered by some Y-rule that X defeats and that is strictly less preferred.

For a guess E of fragments, the reduct keeps a fragment X unless some
member of E defeats it without being overridden by it.  E is a stable
fragment set when the preference-free reduct returns exactly E, and a
preferred stable fragment set when the preference-aware reduct does.  The
consistent head sets of preferred stable fragment sets are the preferred
answer sets.

Stable fragment sets are exactly the families {T ⊆ R : minpos(T) = T} for
generating sets R, and every preferred stable fragment set is stable, so
the search here enumerates generating sets and runs the fixpoint test per
candidate instead of searching all subsets of the fragment lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .base import (
    AnswerSet,
    Bounds,
    _index,
    generating_sets,
    is_consistent,
    minpos,
    rules_of,
)
from .syntax import BoundExceededError, Literal, PrefProgram, Rule
from . import kernels

ProgramLike = Union[PrefProgram, Sequence[Rule]]


@dataclass(frozen=True)
class FragmentSet:
    """A family of fragments with its union and head set precomputed."""

    members: frozenset[frozenset[str]]
    union: frozenset[str]
    heads: frozenset[Literal]

    @classmethod
    def build(cls, p: ProgramLike, members: Iterable[frozenset[str]]) -> "FragmentSet":
        members = frozenset(frozenset(m) for m in members)
        union = frozenset(l for m in members for l in m)
        by_label = {r.label: r for r in rules_of(p)}
        heads = frozenset(by_label[l].head for l in union)
        return cls(members, union, heads)

    def __contains__(self, member: frozenset[str]) -> bool:
        return member in self.members

    def __len__(self) -> int:
        return len(self.members)


def _check_fragment_bound(n: int, bounds: Bounds) -> None:
    if n > bounds.max_fragment_rules:
        raise BoundExceededError(
            f"program has {n} rules; fragment enumeration is bounded at "
            f"{bounds.max_fragment_rules} (PREFAS_MAX_FRAGMENT_RULES)"
        )


def _fragment_masks(idx) -> list[int]:
    return kernels.enum_closed(
        idx.n, list(idx.head_bits), list(idx.pos_masks), list(idx.pos_ok)
    )


def fragments(p: ProgramLike, bounds: Bounds | None = None) -> list[frozenset[str]]:
    """All fragments of the program, ascending by bitmask over rule order."""
    bounds = bounds or Bounds.from_env()
    idx = _index(rules_of(p))
    _check_fragment_bound(idx.n, bounds)
    return [idx.labels_of(m) for m in _fragment_masks(idx)]


def is_fragment(p: ProgramLike, labels: Iterable[str]) -> bool:
    members = frozenset(labels)
    by_label = {r.label: r for r in rules_of(p)}
    return minpos(by_label[l] for l in members) == members


def conflicting(p: ProgramLike, x: Iterable[str], y: Iterable[str]) -> bool:
    """Mutual defeat between two fragments (as label sets)."""
    by_label = {r.label: r for r in rules_of(p)}
    xr = [by_label[l] for l in set(x)]
    yr = [by_label[l] for l in set(y)]
    x_heads = {r.head for r in xr}
    y_heads = {r.head for r in yr}
    return any(y_heads & r.neg_body for r in xr) and any(x_heads & r.neg_body for r in yr)


def overrides(p: PrefProgram, x: Iterable[str], y: Iterable[str]) -> bool:
    """Does fragment ``x`` override fragment ``y`` under the program's
    preferences?

    False unless the fragments are conflicting.  Otherwise every rule of x
    defeated by y must be matched by a strictly less preferred rule of y
    defeated by x.
    """
    if not conflicting(p, x, y):
        return False
    xr = p.rules_of(x)
    yr = p.rules_of(y)
    x_heads = {r.head for r in xr}
    y_heads = {r.head for r in yr}
    defeated_y = [r for r in yr if x_heads & r.neg_body]
    for r1 in xr:
        if y_heads & r1.neg_body:
            if not any(p.preferred_over(r2.label, r1.label) for r2 in defeated_y):
                return False
    return True


class _FragmentSolver:
    """Mask-level reduct machinery shared by the stable and preferred tests."""

    def __init__(self, p: ProgramLike, prefs: frozenset[tuple[str, str]], bounds: Bounds):
        self.idx = _index(rules_of(p))
        _check_fragment_bound(self.idx.n, bounds)
        self.frag_masks = _fragment_masks(self.idx)
        self.heads = {f: self.idx.head_lits_of(f) for f in self.frag_masks}
        # union of the members' negative-body literal masks: a fragment is
        # defeated by head literals H iff this intersects H
        self.negor = {
            f: self._or_members(f, self.idx.neg_hmasks) for f in self.frag_masks
        }
        self.less = [
            sum(
                1 << j
                for j, other in enumerate(self.idx.rules)
                if (other.label, r.label) in prefs
            )
            for r in self.idx.rules
        ]

    def _or_members(self, mask: int, table) -> int:
        bits = 0
        for i in range(self.idx.n):
            if mask >> i & 1:
                bits |= table[i]
        return bits

    def _defeated_rules(self, frag: int, by_heads: int) -> int:
        out = 0
        for i in range(self.idx.n):
            if frag >> i & 1 and self.idx.neg_hmasks[i] & by_heads:
                out |= 1 << i
        return out

    def overrides(self, x: int, y: int) -> bool:
        hx, hy = self.heads[x], self.heads[y]
        dx = self._defeated_rules(x, hy)
        dy = self._defeated_rules(y, hx)
        if dx == 0 or dy == 0:  # not conflicting
            return False
        rest = dx
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            if dy & self.less[i] == 0:
                return False
        return True

    def survivors(self, e_masks: Sequence[int], use_prefs: bool) -> list[int]:
        out = []
        for x in self.frag_masks:
            removed = False
            for y in e_masks:
                if self.negor[x] & self.heads[y]:
                    if not (use_prefs and self.overrides(x, y)):
                        removed = True
                        break
            if not removed:
                out.append(x)
        return out


def reduct_g(p: PrefProgram, e: FragmentSet | Iterable[frozenset[str]],
             bounds: Bounds | None = None) -> FragmentSet:
    """Preference-aware fragment reduct of the full fragment lattice w.r.t. e.

    With empty preferences no fragment ever overrides another, so this is
    also the plain reduct that defines stable fragment sets.
    """
    bounds = bounds or Bounds.from_env()
    members = e.members if isinstance(e, FragmentSet) else frozenset(map(frozenset, e))
    solver = _FragmentSolver(p, p.prefs, bounds)
    e_masks = []
    for m in members:
        mask = solver.idx.mask_of(m)
        if mask not in solver.heads:
            raise ValueError(f"{sorted(m)} is not a fragment of the program")
        e_masks.append(mask)
    kept = solver.survivors(e_masks, use_prefs=bool(p.prefs))
    return FragmentSet.build(p, (solver.idx.labels_of(m) for m in kept))


def stable_fragment_sets(p: ProgramLike, bounds: Bounds | None = None) -> list[FragmentSet]:
    """One stable fragment set per generating set: all fragments inside it.

    Each candidate is checked against the preference-free reduct before it
    is returned.
    """
    bounds = bounds or Bounds.from_env()
    solver = _FragmentSolver(p, frozenset(), bounds)
    idx = solver.idx
    out = []
    for r in generating_sets(p, bounds):
        r_mask = idx.mask_of(r)
        e_masks = [f for f in solver.frag_masks if f & ~r_mask == 0]
        if solver.survivors(e_masks, use_prefs=False) != e_masks:
            raise RuntimeError(
                f"generating set {sorted(r)} did not induce a stable fragment set"
            )
        out.append(FragmentSet.build(p, (idx.labels_of(m) for m in e_masks)))
    return out


def preferred_stable_fragment_sets(
    p: PrefProgram, bounds: Bounds | None = None
) -> list[FragmentSet]:
    """Stable fragment sets fixed by the preference-aware reduct."""
    bounds = bounds or Bounds.from_env()
    solver = _FragmentSolver(p, p.prefs, bounds)
    idx = solver.idx
    out = []
    for r in generating_sets(p, bounds):
        r_mask = idx.mask_of(r)
        e_masks = [f for f in solver.frag_masks if f & ~r_mask == 0]
        if solver.survivors(e_masks, use_prefs=False) != e_masks:
            raise RuntimeError(
                f"generating set {sorted(r)} did not induce a stable fragment set"
            )
        if solver.survivors(e_masks, use_prefs=True) == e_masks:
            out.append(FragmentSet.build(p, (idx.labels_of(m) for m in e_masks)))
    return out


def preferred_answer_sets_g(
    p: PrefProgram, bounds: Bounds | None = None
) -> list[tuple[AnswerSet, FragmentSet]]:
    """Preferred answer sets with their witnessing fragment sets."""
    bounds = bounds or Bounds.from_env()
    out = []
    seen = set()
    for e in preferred_stable_fragment_sets(p, bounds):
        if is_consistent(e.heads) and e.heads not in seen:
            seen.add(e.heads)
            out.append((AnswerSet(e.heads, e.union), e))
    return out
