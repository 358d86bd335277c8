"""Small named programs used by the verification checks and the test suite."""

from __future__ import annotations

from .syntax import PrefProgram, parse_program

# Three rules with an indirect conflict: r1 and r3 cannot both be applied,
# but only via r2, which r1 depends on.  The preference makes r3 win.
INDIRECT_CONFLICT = """\
r1: a :- x.
r2: x :- not b.
r3: b :- not a.
r2 < r3.
"""

# A stratified program where the preferred rule's only blocker is a fact.
# The classic example separating semantics that ignore preferences between
# non-conflicting rules from those that do not.
BREWKA_EITER = """\
r1: a :- not b.
r2: b.
r2 < r1.
"""

# Recommender scenario: developer rules r1..r4, user rules u1..u4, every
# user rule preferred over every developer rule.  All conflicts here are
# indirect, created by u1/u2.
CAR_RECOMMENDER = (
    """\
r1: nice(car_1).
r2: safe(car_2).
r3: rec(car_1) :- nice(car_1), not -rec(car_1).
r4: rec(car_2) :- nice(car_2), not -rec(car_2).
u1: -rec(car_2) :- rec(car_1).
u2: -rec(car_1) :- rec(car_2).
u3: rec(car_1) :- safe(car_1), not -rec(car_1).
u4: rec(car_2) :- safe(car_2), not -rec(car_2).
"""
    + "".join(f"r{i} < u{j}.\n" for i in range(1, 5) for j in range(1, 5))
)

# Two independent choices plus one bridge rule; stratified, single answer
# set.  The preference relates the two non-conflicting choice rules.
INDEPENDENT_CHOICES = """\
r1: select(a) :- not -select(a).
r2: select(b) :- not -select(b).
r3: -select(a) :- select(b).
r2 < r1.
"""

# Same program with a second bridge rule: now the two choices are in an
# indirect conflict and the preference decides it.
INTERLOCKED_CHOICES = INDEPENDENT_CHOICES + "r4: -select(b) :- select(a).\n"

# A direct conflict decided by preference, plus a rule that blows up as soon
# as the preferred choice is made.
SELF_BLOCKING_CHOICE = """\
r1: select(a) :- not -select(a).
r2: -select(a) :- not select(a).
r3: inc :- select(a), not inc.
r2 < r1.
"""

SOURCES = {
    "indirect_conflict": INDIRECT_CONFLICT,
    "brewka_eiter": BREWKA_EITER,
    "car_recommender": CAR_RECOMMENDER,
    "independent_choices": INDEPENDENT_CHOICES,
    "interlocked_choices": INTERLOCKED_CHOICES,
    "self_blocking_choice": SELF_BLOCKING_CHOICE,
}


def load(name: str) -> PrefProgram:
    return parse_program(SOURCES[name])
