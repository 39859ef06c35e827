"""The axioms of the logic of 2-roaches and a bounded countermodel search.

The logic is axiomatized over S4 by the McKinsey axiom plus the frame
formulas of the three minimal forbidden configurations.  It has the finite
model property, which justifies searching 2-roaches by size; no effective
size bound is known, so a clean search up to the bound is reported as
``NoCountermodelUpTo`` rather than as validity.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formulas as fm
from . import roach
from .errors import CeilingExceededError
from .frames import Frame, enumerate_frames
from .semantics import DEFAULT_BUDGET, Model, find_refutation

DECISION_CEILING = 6


@dataclass(frozen=True)
class Refuted:
    model: Model
    world: int


@dataclass(frozen=True)
class NoCountermodelUpTo:
    bound: int


Verdict = Refuted | NoCountermodelUpTo


def lr2_axioms() -> list[fm.Formula]:
    """McKinsey plus the frame formulas of F1, F2, F3."""
    return [fm.axiom("ma")] + [
        fm.fine_jankov(roach.builtin(name)) for name in roach.FORBIDDEN_NAMES
    ]


def decide_lr2(phi: fm.Formula, bound: int, budget: int = DEFAULT_BUDGET,
               ceiling: int = DECISION_CEILING) -> Verdict:
    """Search 2-roaches of up to ``bound`` worlds for a countermodel.

    A ``Refuted`` verdict is sound unconditionally.  ``NoCountermodelUpTo``
    only reports a clean bounded search; it is not a theoremhood claim.
    """
    if bound < 1 or bound > ceiling:
        raise CeilingExceededError(f"bound must lie in 1..{ceiling}")
    for size in range(1, bound + 1):
        for frame in enumerate_frames(size, "2-roach", ceiling=ceiling):
            refutation = find_refutation(frame, phi, budget=budget)
            if refutation is not None:
                valuation, world = refutation
                return Refuted(Model(frame, valuation), world)
    return NoCountermodelUpTo(bound)
