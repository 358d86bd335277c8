"""Pure-Python reference implementation of the enumeration kernels.

A program with n rules is compiled into flat tables indexed by rule number:

  head_bits[i]  bit of rule i's head in the table of distinct head literals
  pos_masks[i]  positive-body literals of rule i that are heads of some rule
  pos_ok[i]     False when rule i's positive body mentions a literal that no
                rule derives, so the rule can never fire
  remover[i]    rules whose presence in the tested subset removes rule i
                from the reduct

All sets are bitmasks.  Enumeration results are ascending by mask value.
"""

from __future__ import annotations


def minpos(members: int, head_bits: list[int], pos_masks: list[int], pos_ok: list[bool]) -> int:
    """Least fixpoint of rule application ignoring negative bodies.

    Returns the subset of ``members`` that fires when rules are applied
    iteratively, each rule requiring its positive body among the heads of
    rules applied before it.
    """
    n = len(head_bits)
    lits = 0
    done = 0
    changed = True
    while changed:
        changed = False
        for i in range(n):
            bit = 1 << i
            if members & bit and not done & bit:
                if pos_ok[i] and pos_masks[i] & ~lits == 0:
                    done |= bit
                    lits |= head_bits[i]
                    changed = True
    return done


def enum_fixpoints(
    n: int,
    head_bits: list[int],
    pos_masks: list[int],
    pos_ok: list[bool],
    remover: list[int],
) -> list[int]:
    """All subsets R with R == minpos({i : remover[i] & R == 0})."""
    out = []
    for r in range(1 << n):
        kept = 0
        for i in range(n):
            if remover[i] & r == 0:
                kept |= 1 << i
        if minpos(kept, head_bits, pos_masks, pos_ok) == r:
            out.append(r)
    return out


def enum_closed(
    n: int, head_bits: list[int], pos_masks: list[int], pos_ok: list[bool]
) -> list[int]:
    """All subsets T with minpos(T) == T, i.e. the self-supporting rule sets."""
    out = []
    for t in range(1 << n):
        if minpos(t, head_bits, pos_masks, pos_ok) == t:
            out.append(t)
    return out
