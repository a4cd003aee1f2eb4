"""Seeded sandbox runs on a cyclic 1-D lattice.

Cyclic boundaries are a demonstration device only; the decision procedures
work on finite windows and never consult this module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .core import LocalRule
from .errors import LatticeTooSmallError, NotOneDimensionalError, OutOfRangeError

__all__ = ["TraceStep", "Trace", "step_cyclic", "simulate"]

SCHEMES = ("purely", "fully")


@dataclass(frozen=True)
class TraceStep:
    active: tuple[int, ...]
    states: tuple[int, ...]


@dataclass(frozen=True)
class Trace:
    scheme: str
    seed: int
    p: float | None
    initial: tuple[int, ...]
    steps: tuple[TraceStep, ...]

    def configurations(self) -> list[tuple[int, ...]]:
        return [self.initial] + [s.states for s in self.steps]

    def to_dict(self) -> dict[str, Any]:
        return {
            "scheme": self.scheme,
            "seed": self.seed,
            "p": self.p,
            "initial": list(self.initial),
            "steps": [{"active": list(s.active), "states": list(s.states)} for s in self.steps],
        }


def step_cyclic(rule: LocalRule, states: Sequence[int], active: Iterable[int]) -> tuple[int, ...]:
    """Apply the rule at the active cells of a cyclic lattice; others hold."""
    n = len(states)
    out = list(states)
    for a in sorted(set(active)):
        local = [states[(a + off[0]) % n] for off in rule.neighborhood.offsets]
        out[a % n] = rule.apply_local(local)
    return tuple(out)


def simulate(
    rule: LocalRule,
    initial: Sequence[int],
    scheme: str,
    steps: int,
    seed: int,
    p: float = 0.5,
) -> Trace:
    """Run ``steps`` asynchronous updates with a deterministic seeded schedule.

    Under the purely asynchronous scheme each cell joins the activation set
    independently with probability ``p`` (cells drawn in index order); under
    the fully asynchronous scheme exactly one uniformly random cell fires.
    """
    if rule.neighborhood.dimension != 1:
        raise NotOneDimensionalError("cyclic simulation handles 1-D rules only")
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")
    if not 0.0 <= p <= 1.0:
        raise OutOfRangeError("activation probability must lie in [0, 1]")
    n = len(initial)
    offs = [off[0] for off in rule.neighborhood.offsets]
    extent = (max(offs) - min(offs) + 1) if offs else 1
    if n < extent:
        raise LatticeTooSmallError(f"lattice of size {n} cannot host neighborhood extent {extent}")
    current = tuple(int(s) for s in initial)
    for s in current:
        if s not in rule.alphabet:
            raise ValueError(f"initial state {s} outside alphabet")
    rng = random.Random(seed)
    trace = []
    for _ in range(steps):
        if scheme == "purely":
            active = tuple(i for i in range(n) if rng.random() < p)
        else:
            active = (rng.randrange(n),)
        current = step_cyclic(rule, current, active)
        trace.append(TraceStep(active=active, states=current))
    return Trace(scheme=scheme, seed=seed, p=p if scheme == "purely" else None,
                 initial=tuple(int(s) for s in initial), steps=tuple(trace))
