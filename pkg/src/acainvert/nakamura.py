"""Invertibility-preserving transformation from synchronous to purely
asynchronous automata.

Each cell of the transformed automaton carries a bar state: the current
state, the previous state, and a mod-3 time stamp.  A cell may advance
(apply the forward rule and increment its stamp) only when no neighbor
lags behind it and its stored previous state is consistent with the
backward rule; the mirror condition governs retreating.  For a synchronous
inverse pair (C, G) the two transformed rules are inverses under the
purely asynchronous scheme, which :func:`verify_theorem1` confirms by
running the exact finite-window check on the transformed pair.

Bar states are serialized through the fixed bijection
``code = curr * 3q + old * 3 + time``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Sequence

from .core import (
    Alphabet,
    LocalRule,
    Neighborhood,
    WindowConfig,
    add_cells,
    local_config,
    with_neighborhood,
)
from .errors import (
    AlphabetMismatchError,
    CenterAheadError,
    CenterBehindError,
    CenterNotInNeighborhoodError,
    NeighborhoodMismatchError,
    OutOfDomainError,
)
from .invertibility import DEFAULT_WINDOW_CAP, DecisionReport, check_inverse_purely

__all__ = [
    "BarState",
    "BarRulePair",
    "bar_alphabet",
    "encode_bar_state",
    "decode_bar_state",
    "is_ahead",
    "is_behind",
    "curr_local",
    "old_local",
    "build_bar_pair",
    "embed",
    "embed_ring",
    "verify_theorem1",
]


@dataclass(frozen=True)
class BarState:
    """Current state, previous state, and a mod-3 time stamp."""

    curr: int
    old: int
    time: int

    def __post_init__(self) -> None:
        if self.time not in (0, 1, 2):
            raise ValueError("time stamp must be 0, 1 or 2")


def bar_alphabet(q: int) -> Alphabet:
    return Alphabet(3 * q * q)


def encode_bar_state(q: int, state: BarState) -> int:
    if not (0 <= state.curr < q and 0 <= state.old < q):
        raise ValueError(f"bar state {state} outside alphabet of size {q}")
    return state.curr * 3 * q + state.old * 3 + state.time


def decode_bar_state(q: int, code: int) -> BarState:
    if not 0 <= code < 3 * q * q:
        raise ValueError(f"bar code {code} outside 0..{3 * q * q - 1}")
    curr, rest = divmod(code, 3 * q)
    old, t = divmod(rest, 3)
    return BarState(curr=curr, old=old, time=t)


def _center_position(neighborhood: Neighborhood) -> int:
    origin = neighborhood.origin
    if origin not in neighborhood:
        raise CenterNotInNeighborhoodError("bar predicates need offset 0 in the neighborhood")
    return neighborhood.offsets.index(origin)


def is_ahead(neighborhood: Neighborhood, local: Sequence[BarState]) -> bool:
    """True iff some neighbor's stamp is one tick behind the center's."""
    t0 = local[_center_position(neighborhood)].time
    return any(t0 == (s.time + 1) % 3 for s in local)


def is_behind(neighborhood: Neighborhood, local: Sequence[BarState]) -> bool:
    """True iff some neighbor's stamp is one tick ahead of the center's."""
    t0 = local[_center_position(neighborhood)].time
    return any(s.time == (t0 + 1) % 3 for s in local)


def curr_local(neighborhood: Neighborhood, local: Sequence[BarState]) -> tuple[int, ...]:
    """The current base-rule view: neighbors that already advanced
    contribute their previous state."""
    t0 = local[_center_position(neighborhood)].time
    out = []
    for s in local:
        if s.time == t0:
            out.append(s.curr)
        elif s.time == (t0 + 1) % 3:
            out.append(s.old)
        else:
            raise CenterAheadError("a neighbor lags the center; current view undefined")
    return tuple(out)


def old_local(neighborhood: Neighborhood, local: Sequence[BarState]) -> tuple[int, ...]:
    """The previous base-rule view: neighbors still one tick back
    contribute their current state."""
    t0 = local[_center_position(neighborhood)].time
    out = []
    for s in local:
        if s.time == t0:
            out.append(s.old)
        elif s.time == (t0 - 1) % 3:
            out.append(s.curr)
        else:
            raise CenterBehindError("a neighbor leads the center; previous view undefined")
    return tuple(out)


@dataclass(frozen=True)
class BarRulePair:
    """Transformed forward/backward rules over the bar-state alphabet."""

    forward: LocalRule
    backward: LocalRule
    base_alphabet: Alphabet
    neighborhood: Neighborhood

    def encoding_doc(self) -> dict[str, Any]:
        q = self.base_alphabet.size
        return {
            "base_alphabet": q,
            "bar_state": "code = curr * 3q + old * 3 + time",
            "fields": {"curr": f"0..{q - 1}", "old": f"0..{q - 1}", "time": "0..2"},
        }


def build_bar_pair(C: LocalRule, G: LocalRule) -> BarRulePair:
    """Tabulate the transformed pair over the symmetrized neighborhood.

    The shared neighborhood is the union of both inputs' offsets, closed
    under negation, with 0 adjoined; added offsets are dummies of the base
    rules.
    """
    if C.alphabet != G.alphabet:
        raise AlphabetMismatchError("bar construction needs a shared alphabet")
    if C.neighborhood.dimension != G.neighborhood.dimension:
        raise NeighborhoodMismatchError("bar construction needs a shared dimension")
    shared = C.neighborhood.union(G.neighborhood).symmetrized_with_origin()
    delta = with_neighborhood(C, shared)
    gamma = with_neighborhood(G, shared)
    q = C.q
    alphabet = bar_alphabet(q)
    states = [decode_bar_state(q, code) for code in range(alphabet.size)]
    center = _center_position(shared)
    arity = len(shared)

    forward_table = []
    backward_table = []
    for codes in itertools.product(range(alphabet.size), repeat=arity):
        local = [states[code] for code in codes]
        me = local[center]
        if is_ahead(shared, local):
            forward_table.append(codes[center])
        else:
            view = curr_local(shared, local)
            if me.old == gamma.apply_local(view):
                nxt = BarState(delta.apply_local(view), me.curr, (me.time + 1) % 3)
                forward_table.append(encode_bar_state(q, nxt))
            else:
                forward_table.append(codes[center])
        if is_behind(shared, local):
            backward_table.append(codes[center])
        else:
            view = old_local(shared, local)
            if me.curr == delta.apply_local(view):
                prev = BarState(me.old, gamma.apply_local(view), (me.time - 1) % 3)
                backward_table.append(encode_bar_state(q, prev))
            else:
                backward_table.append(codes[center])
    return BarRulePair(
        forward=LocalRule(alphabet, shared, tuple(forward_table)),
        backward=LocalRule(alphabet, shared, tuple(backward_table)),
        base_alphabet=C.alphabet,
        neighborhood=shared,
    )


def embed(config: WindowConfig, G: LocalRule, t: int) -> WindowConfig:
    """Lift a base window into bar states on the cells with full
    neighborhoods.

    Each lifted cell i holds (c(i), gamma(c at i+N), t) encoded as an
    integer, so every cell starts consistent with the backward rule and is
    forward movable.  Cells whose neighborhood escapes the domain are
    dropped; an empty result is an error.
    """
    q = G.q
    cells = {}
    for cell in config.cells:
        if all(add_cells(cell, n) in config for n in G.neighborhood.offsets):
            old = G.apply_local(local_config(config, cell, G.neighborhood))
            cells[cell] = encode_bar_state(q, BarState(config[cell], old, t % 3))
    if not cells:
        raise OutOfDomainError("no cell of the window has its full neighborhood in the domain")
    return WindowConfig.from_mapping(cells)


def embed_ring(states: Sequence[int], G: LocalRule, t: int) -> tuple[BarState, ...]:
    """Lift a cyclic lattice into bar states, wrapping neighbor reads."""
    if G.neighborhood.dimension != 1:
        raise NeighborhoodMismatchError("ring embedding is one-dimensional")
    n = len(states)
    out = []
    for i in range(n):
        local = [states[(i + off[0]) % n] for off in G.neighborhood.offsets]
        out.append(BarState(states[i], G.apply_local(local), t % 3))
    return tuple(out)


def verify_theorem1(
    C: LocalRule,
    G: LocalRule,
    *,
    cap: int = DEFAULT_WINDOW_CAP,
    workers: int = 1,
) -> DecisionReport:
    """Check that the transformed pair is purely asynchronously inverse.

    The synchronous-inverse premise on (C, G) is the caller's claim; this
    verifies the construction's conclusion, which is the falsifiable part.
    """
    pair = build_bar_pair(C, G)
    return check_inverse_purely(pair.forward, pair.backward, cap=cap, workers=workers)
