"""Preference semantics for direct conflicts (the ``d`` semantics).

Two rules are directly conflicting when each defeats the other.  A rule r1
directly overrides r2 when they are directly conflicting and r2 < r1.  The
reduct of a program with preferences w.r.t. a rule set R drops every rule
that some member of R defeats unless the rule directly overrides that
member; preferred generating sets are the fixpoints R = minpos(reduct(R)),
and their consistent head sets are the preferred answer sets.

Indirect conflicts are invisible to this semantics; it is the baseline the
fragment semantics (``g``) and the ``gno`` semantics refine.
"""

from __future__ import annotations

from typing import Iterable

from .base import (
    AnswerSet,
    Bounds,
    _answer_sets_from_masks,
    _check_rule_bound,
    _fixpoint_subsets,
    _index,
    rules_of,
)
from .syntax import PrefProgram, Rule


def directly_conflicting(r1: Rule, r2: Rule) -> bool:
    return r1.head in r2.neg_body and r2.head in r1.neg_body


def directly_overrides(r1: Rule, r2: Rule, prefs: Iterable[tuple[str, str]]) -> bool:
    """r1 wins a direct conflict against a less preferred r2."""
    return directly_conflicting(r1, r2) and (r2.label, r1.label) in set(prefs)


def _remover_masks(p: PrefProgram) -> list[int]:
    # remover[i] = rules j that defeat i and are not directly overridden by i
    idx = _index(p.rules)
    masks = []
    for i, target in enumerate(idx.rules):
        m = 0
        for j, attacker in enumerate(idx.rules):
            if attacker.head in target.neg_body and not directly_overrides(
                target, attacker, p.prefs
            ):
                m |= 1 << j
        masks.append(m)
    return masks


def reduct_d(p: PrefProgram, r_labels: Iterable[str]) -> tuple[Rule, ...]:
    """Drop each rule defeated by a member of ``r_labels`` that it does not
    directly override."""
    members = p.rules_of(r_labels)
    return tuple(
        r
        for r in p.rules
        if not any(
            defender.head in r.neg_body and not directly_overrides(r, defender, p.prefs)
            for defender in members
        )
    )


def preferred_generating_sets_d(
    p: PrefProgram, bounds: Bounds | None = None
) -> list[frozenset[str]]:
    """All rule sets R with R = minpos(reduct_d(p, R)), over every subset."""
    bounds = bounds or Bounds.from_env()
    idx = _index(p.rules)
    _check_rule_bound(idx.n, bounds)
    return [idx.labels_of(m) for m in _fixpoint_subsets(idx, _remover_masks(p))]


def preferred_answer_sets_d(p: PrefProgram, bounds: Bounds | None = None) -> list[AnswerSet]:
    bounds = bounds or Bounds.from_env()
    idx = _index(p.rules)
    _check_rule_bound(idx.n, bounds)
    return _answer_sets_from_masks(idx, _fixpoint_subsets(idx, _remover_masks(p)))
