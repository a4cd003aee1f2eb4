"""Finite-window decision procedures for phase-space invertibility.

A rule pair (C, G) is checked over a finite test window T whose shape
depends on the update scheme.  Window assignments ``Q^T`` are enumerated
as mixed-radix integers with the lexicographically first cell as the most
significant digit, so integer order equals lexicographic window order and
the least violation is well defined.  Enumeration is chunked, evaluated
with numpy table lookups, and reduced with a deterministic minimum, which
makes reports identical for every chunk size and worker count.

Clause identifiers carried by witnesses:

* ``purely-forward`` / ``purely-backward``: a simultaneous update at the
  active set D is not undone (or not redone) by the partner rule;
* ``eq1-forward`` / ``eq1-backward``: a single-cell flip at 0 is not
  undone by the partner rule;
* ``eq2-delta`` / ``eq2-gamma``: a window fixed at 0 by one rule is fixed
  at no candidate cell by the partner rule;
* ``derivation-conflict``: two local configurations force a candidate
  inverse to two different values, so no same-neighborhood inverse exists.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

import numpy as np

from .core import (
    Cell,
    LocalRule,
    Neighborhood,
    WindowConfig,
    add_cells,
    minimize_neighborhood,
    step,
    with_neighborhood,
)
from .errors import (
    AlphabetMismatchError,
    CenterNotInNeighborhoodError,
    NeighborhoodMismatchError,
    NotOneDimensionalError,
    ResourceCapExceededError,
)
from .rulefmt import rule_to_dict, window_to_dict

__all__ = [
    "Verdict",
    "Witness",
    "EnumerationStats",
    "DecisionReport",
    "PurelyTestWindow",
    "FullyTestWindow",
    "DerivationConflict",
    "TwoPredecessorWitness",
    "check_inverse_purely",
    "check_inverse_fully_1d",
    "derive_candidate_inverse",
    "decide_purely",
    "decide_fully_1d",
    "two_predecessor_witness",
    "DEFAULT_WINDOW_CAP",
    "DEFAULT_CANDIDATE_CAP",
]

DEFAULT_WINDOW_CAP = 1 << 24
DEFAULT_CANDIDATE_CAP = 1 << 16
DEFAULT_CHUNK = 1 << 18

# windows are manipulated as int64 vectors; anything larger must be capped
_INDEX_LIMIT = 1 << 62


class Verdict(str, Enum):
    INVERTIBLE = "invertible"
    NOT_INVERTIBLE = "not-invertible"
    RESOURCE_CAP_EXCEEDED = "resource-cap-exceeded"


CLAUSE_PURELY_FORWARD = "purely-forward"
CLAUSE_PURELY_BACKWARD = "purely-backward"
CLAUSE_EQ1_FORWARD = "eq1-forward"
CLAUSE_EQ1_BACKWARD = "eq1-backward"
CLAUSE_EQ2_DELTA = "eq2-delta"
CLAUSE_EQ2_GAMMA = "eq2-gamma"
CLAUSE_DERIVATION_CONFLICT = "derivation-conflict"


@dataclass(frozen=True)
class Witness:
    """The least counterexample: a window, an activation set, and a clause."""

    window: WindowConfig
    active: tuple[Cell, ...]
    clause: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "window": window_to_dict(self.window),
            "active": [list(c) for c in self.active],
            "clause": self.clause,
        }


@dataclass(frozen=True)
class EnumerationStats:
    windows: int
    millis: float


@dataclass(frozen=True)
class DecisionReport:
    verdict: Verdict
    inverse: LocalRule | None
    witness: Witness | None
    stats: EnumerationStats

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        """JSON shape; wall time is zeroed unless asked for, so identical
        inputs serialize to identical bytes."""
        return {
            "verdict": self.verdict.value,
            "inverse": rule_to_dict(self.inverse) if self.inverse is not None else None,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "stats": {
                "windows": self.stats.windows,
                "millis": int(round(self.stats.millis)) if timings else 0,
            },
        }


@dataclass(frozen=True)
class PurelyTestWindow:
    """Test window for the purely asynchronous scheme.

    ``cells`` is {0} ∪ N ∪ (N+N); ``active_family`` holds every D with
    0 ∈ D ⊆ {0} ∪ N, ordered by the indicator vector of the non-origin
    offsets (most significant first), so {0} comes first.
    """

    cells: tuple[Cell, ...]
    active_family: tuple[tuple[Cell, ...], ...]

    @classmethod
    def build(cls, neighborhood: Neighborhood) -> "PurelyTestWindow":
        origin = neighborhood.origin
        cells = {origin} | set(neighborhood.offsets) | set(neighborhood.pairwise_sums())
        others = sorted(set(neighborhood.offsets) - {origin})
        family = []
        for mask in range(1 << len(others)):
            active = [origin]
            for i, cell in enumerate(others):
                if (mask >> (len(others) - 1 - i)) & 1:
                    active.append(cell)
            family.append(tuple(sorted(active)))
        return cls(cells=tuple(sorted(cells)), active_family=tuple(family))


@dataclass(frozen=True)
class FullyTestWindow:
    """Test window for the fully asynchronous scheme in one dimension.

    ``max_distance`` is max |n| over the neighborhood (None for the empty
    neighborhood), ``candidates`` the active-cell search interval
    {-q^(2m+1), ..., q^(2m+1)} (just {0} when the neighborhood is empty),
    and ``cells`` the window {0} ∪ N ∪ A ∪ (A+N).
    """

    max_distance: int | None
    candidates: tuple[int, ...]
    cells: tuple[Cell, ...]

    @classmethod
    def build(cls, q: int, neighborhood: Neighborhood, cap: int | None = None) -> "FullyTestWindow":
        if neighborhood.dimension != 1:
            raise NotOneDimensionalError("fully asynchronous test windows are one-dimensional")
        m = neighborhood.max_abs_1d()
        if m is None:
            return cls(max_distance=None, candidates=(0,), cells=((0,),))
        reach = q ** (2 * m + 1)
        offs = [n[0] for n in neighborhood.offsets]
        lo = -reach + min(0, min(offs))
        hi = reach + max(0, max(offs))
        size = hi - lo + 1
        if cap is not None and q >= 2 and (size > cap.bit_length() or q**size > cap):
            raise ResourceCapExceededError(
                f"fully test window has {size} cells, {q}^{size} exceeds cap {cap}"
            )
        candidates = tuple(range(-reach, reach + 1))
        cells = tuple((i,) for i in range(lo, hi + 1))
        return cls(max_distance=m, candidates=candidates, cells=cells)


class _Space:
    """Mixed-radix enumeration of Q^T, first cell most significant."""

    def __init__(self, cells: tuple[Cell, ...], q: int):
        self.cells = cells
        self.q = q
        self.count = q ** len(cells)
        n = len(cells)
        self.weight = {c: q ** (n - 1 - i) for i, c in enumerate(cells)}

    def digit(self, index, cell: Cell):
        return (index // self.weight[cell]) % self.q

    def decode(self, index: int) -> WindowConfig:
        states = tuple(int(self.digit(index, c)) for c in self.cells)
        return WindowConfig(self.cells, states)


def _require_pair(C: LocalRule, G: LocalRule) -> None:
    if C.alphabet != G.alphabet:
        raise AlphabetMismatchError("rules must share an alphabet")
    if C.neighborhood != G.neighborhood:
        raise NeighborhoodMismatchError("rules must share a neighborhood")


def _chunk_ranges(count: int, chunk: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk, count)) for lo in range(0, count, chunk)]


def _map_chunks(ranges, workers: int, fn: Callable):
    if workers <= 1 or len(ranges) <= 1:
        return [fn(lo, hi) for lo, hi in ranges]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda r: fn(*r), ranges))


def _least(candidates):
    best = None
    for c in candidates:
        if c is not None and (best is None or c < best):
            best = c
    return best


class _DigitCache:
    """Per-chunk lazy digit extraction for one index vector."""

    def __init__(self, space: _Space, idx: np.ndarray):
        self.space = space
        self.idx = idx
        self._cache: dict[Cell, np.ndarray] = {}

    def __call__(self, cell: Cell) -> np.ndarray:
        arr = self._cache.get(cell)
        if arr is None:
            arr = (self.idx // self.space.weight[cell]) % self.space.q
            self._cache[cell] = arr
        return arr


def _local_index(space: _Space, dig: _DigitCache, base: Cell, offsets, override=None):
    """Vector of local-configuration table indices at ``base``.

    ``override`` maps cells to replacement digit vectors (used to read the
    window after a simultaneous update without materializing it).
    """
    q = space.q
    L = 0
    for n in offsets:
        cell = add_cells(base, n)
        v = None if override is None else override.get(cell)
        if v is None:
            v = dig(cell)
        L = L * q + v
    return L


def _purely_chunk(space, family, offsets, dtab, gtab, lo, hi):
    """Least violating (window, family position) per direction in [lo, hi)."""
    idx = np.arange(lo, hi, dtype=np.int64)
    dig = _DigitCache(space, idx)
    base_local: dict[Cell, np.ndarray] = {}

    def local_at(cell):
        arr = base_local.get(cell)
        if arr is None:
            arr = _local_index(space, dig, cell, offsets)
            base_local[cell] = arr
        return arr

    best = [None, None]
    for fam_i, active in enumerate(family):
        for direction, (tab1, tab2) in enumerate(((dtab, gtab), (gtab, dtab))):
            stepped = {}
            changed = None
            for cell in active:
                out = tab1[local_at(cell)]
                stepped[cell] = out
                delta = out != dig(cell)
                changed = delta if changed is None else changed & delta
            if changed is None or not changed.any():
                continue
            undone = None
            for cell in active:
                back = tab2[_local_index(space, dig, cell, offsets, stepped)]
                ok = back == dig(cell)
                undone = ok if undone is None else undone & ok
            viol = changed & ~undone
            if viol.any():
                cand = (int(idx[int(np.argmax(viol))]), fam_i)
                if best[direction] is None or cand < best[direction]:
                    best[direction] = cand
    return best[0], best[1]


def check_inverse_purely(
    C: LocalRule,
    G: LocalRule,
    *,
    cap: int = DEFAULT_WINDOW_CAP,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
) -> DecisionReport:
    """Exact invertibility check for the purely asynchronous scheme.

    Verdict is invertible iff, over the finite window, every simultaneous
    update by one rule at an admissible active set is undone by the other
    rule at the same set, in both directions.
    """
    t0 = time.perf_counter()
    _require_pair(C, G)
    tw = PurelyTestWindow.build(C.neighborhood)
    space = _Space(tw.cells, C.q)
    if space.count > min(cap, _INDEX_LIMIT):
        raise ResourceCapExceededError(
            f"purely test window needs {space.count} window assignments, cap is {cap}"
        )
    offsets = C.neighborhood.offsets
    dtab, gtab = C.table_array, G.table_array
    results = _map_chunks(
        _chunk_ranges(space.count, chunk_size),
        workers,
        lambda lo, hi: _purely_chunk(space, tw.active_family, offsets, dtab, gtab, lo, hi),
    )
    fwd = _least(r[0] for r in results)
    bwd = _least(r[1] for r in results)
    millis = (time.perf_counter() - t0) * 1000.0
    stats = EnumerationStats(windows=space.count, millis=millis)
    if fwd is not None:
        witness = Witness(space.decode(fwd[0]), tw.active_family[fwd[1]], CLAUSE_PURELY_FORWARD)
        return DecisionReport(Verdict.NOT_INVERTIBLE, None, witness, stats)
    if bwd is not None:
        witness = Witness(space.decode(bwd[0]), tw.active_family[bwd[1]], CLAUSE_PURELY_BACKWARD)
        return DecisionReport(Verdict.NOT_INVERTIBLE, None, witness, stats)
    return DecisionReport(Verdict.INVERTIBLE, G, None, stats)


def _fully_flip_chunk(space, offsets, dtab, gtab, lo, hi):
    """Least single-cell-flip violation per direction in [lo, hi)."""
    idx = np.arange(lo, hi, dtype=np.int64)
    dig = _DigitCache(space, idx)
    origin = (0,)
    c0 = dig(origin)
    base = _local_index(space, dig, origin, offsets)
    out = []
    for tab1, tab2 in ((dtab, gtab), (gtab, dtab)):
        stepped = tab1[base]
        flipped = stepped != c0
        if not flipped.any():
            out.append(None)
            continue
        back = tab2[_local_index(space, dig, origin, offsets, {origin: stepped})]
        viol = flipped & (back != c0)
        out.append(int(idx[int(np.argmax(viol))]) if viol.any() else None)
    return out[0], out[1]


def _fully_fixpoint_chunk(space, offsets, candidates, dtab, gtab, lo, hi):
    """Least fixed-point violation per direction in [lo, hi).

    A window fixed at cell 0 by one rule must be fixed at some candidate
    cell by the other rule.
    """
    idx = np.arange(lo, hi, dtype=np.int64)
    dig = _DigitCache(space, idx)
    origin = (0,)
    c0 = dig(origin)
    base = _local_index(space, dig, origin, offsets)
    out = []
    for tab1, tab2 in ((dtab, gtab), (gtab, dtab)):
        fixed = tab1[base] == c0
        sub = idx[fixed]
        if sub.size == 0:
            out.append(None)
            continue
        sdig = _DigitCache(space, sub)
        ok = np.zeros(sub.size, dtype=bool)
        for a in candidates:
            cell_a = (a,)
            L = _local_index(space, sdig, cell_a, offsets)
            ok |= tab2[L] == sdig(cell_a)
            if ok.all():
                break
        out.append(None if ok.all() else int(sub[int(np.argmax(~ok))]))
    return out[0], out[1]


def check_inverse_fully_1d(
    C: LocalRule,
    G: LocalRule,
    *,
    cap: int = DEFAULT_WINDOW_CAP,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
) -> DecisionReport:
    """Exact invertibility check for the fully asynchronous scheme, d = 1.

    Four clauses over every window w of the test cells: a flip at 0 by
    either rule is undone by the other at 0 (eq1-forward / eq1-backward),
    and a window fixed at 0 by either rule is fixed at some candidate cell
    by the other (eq2-delta / eq2-gamma).  The flip clauses are swept
    first; the fixed-point sweep runs only when they hold everywhere.
    """
    t0 = time.perf_counter()
    if C.neighborhood.dimension != 1:
        raise NotOneDimensionalError("fully asynchronous check requires one dimension")
    _require_pair(C, G)
    tw = FullyTestWindow.build(C.q, C.neighborhood, cap=min(cap, _INDEX_LIMIT))
    space = _Space(tw.cells, C.q)
    offsets = C.neighborhood.offsets
    dtab, gtab = C.table_array, G.table_array
    ranges = _chunk_ranges(space.count, chunk_size)

    results = _map_chunks(
        ranges, workers, lambda lo, hi: _fully_flip_chunk(space, offsets, dtab, gtab, lo, hi)
    )
    windows = space.count
    origin_active = ((0,),)
    for clause, pos in ((CLAUSE_EQ1_FORWARD, 0), (CLAUSE_EQ1_BACKWARD, 1)):
        hit = _least(r[pos] for r in results)
        if hit is not None:
            millis = (time.perf_counter() - t0) * 1000.0
            witness = Witness(space.decode(hit), origin_active, clause)
            return DecisionReport(
                Verdict.NOT_INVERTIBLE, None, witness, EnumerationStats(windows, millis)
            )

    results = _map_chunks(
        ranges,
        workers,
        lambda lo, hi: _fully_fixpoint_chunk(
            space, offsets, tw.candidates, dtab, gtab, lo, hi
        ),
    )
    windows += space.count
    for clause, pos in ((CLAUSE_EQ2_DELTA, 0), (CLAUSE_EQ2_GAMMA, 1)):
        hit = _least(r[pos] for r in results)
        if hit is not None:
            millis = (time.perf_counter() - t0) * 1000.0
            witness = Witness(space.decode(hit), origin_active, clause)
            return DecisionReport(
                Verdict.NOT_INVERTIBLE, None, witness, EnumerationStats(windows, millis)
            )
    millis = (time.perf_counter() - t0) * 1000.0
    return DecisionReport(Verdict.INVERTIBLE, G, None, EnumerationStats(windows, millis))


@dataclass(frozen=True)
class DerivationConflict:
    """Two local configurations force a candidate inverse to two values."""

    observed: tuple[int, ...]
    first_source: tuple[int, ...]
    first_value: int
    second_source: tuple[int, ...]
    second_value: int


def derive_candidate_inverse(rule: LocalRule) -> LocalRule | DerivationConflict:
    """The unique same-neighborhood inverse candidate, or the conflict
    proving none exists.

    Every local configuration the rule actually flips pins the candidate's
    value at the flipped configuration; entries never pinned default to the
    center value (or to state 0 when the center is not observed).  The
    constraints are necessary for any same-neighborhood inverse under
    either scheme, so a conflict is a definitive negative answer for rules
    with minimal neighborhoods.
    """
    q = rule.q
    offsets = rule.neighborhood.offsets
    origin = rule.neighborhood.origin
    pinned: dict[int, tuple[int, tuple[int, ...]]] = {}
    if origin in rule.neighborhood:
        weight = q ** (rule.arity - 1 - offsets.index(origin))
        for idx, out in enumerate(rule.table):
            center = (idx // weight) % q
            if out == center:
                continue
            flipped = idx + (out - center) * weight
            prev = pinned.get(flipped)
            if prev is not None:
                if prev[0] != center:
                    return DerivationConflict(
                        observed=rule.decode_index(flipped),
                        first_source=prev[1],
                        first_value=prev[0],
                        second_source=rule.decode_index(idx),
                        second_value=center,
                    )
                continue
            pinned[flipped] = (center, rule.decode_index(idx))
        table = tuple(
            pinned[i][0] if i in pinned else (i // weight) % q for i in range(len(rule.table))
        )
    else:
        for idx, out in enumerate(rule.table):
            source = rule.decode_index(idx)
            for value in range(q):
                if value == out:
                    continue
                prev = pinned.get(idx)
                if prev is not None and prev[0] != value:
                    return DerivationConflict(
                        observed=source,
                        first_source=prev[1],
                        first_value=prev[0],
                        second_source=source,
                        second_value=value,
                    )
                if prev is None:
                    pinned[idx] = (value, source)
        table = tuple(pinned[i][0] if i in pinned else 0 for i in range(len(rule.table)))
    return LocalRule(rule.alphabet, rule.neighborhood, table)


def _conflict_report(rule: LocalRule, conflict: DerivationConflict, t0: float) -> DecisionReport:
    window = WindowConfig(rule.neighborhood.offsets, conflict.observed)
    witness = Witness(window, (rule.neighborhood.origin,), CLAUSE_DERIVATION_CONFLICT)
    millis = (time.perf_counter() - t0) * 1000.0
    return DecisionReport(Verdict.NOT_INVERTIBLE, None, witness, EnumerationStats(0, millis))


def _cap_report(windows: int, t0: float) -> DecisionReport:
    millis = (time.perf_counter() - t0) * 1000.0
    return DecisionReport(Verdict.RESOURCE_CAP_EXCEEDED, None, None, EnumerationStats(windows, millis))


def _candidate_tables(q: int, arity: int):
    """All tables over the alphabet in lexicographic order."""
    return itertools.product(range(q), repeat=q**arity)


def _decide(
    rule: LocalRule,
    checker: Callable,
    *,
    window_cap: int,
    candidate_cap: int,
    exhaustive: bool,
    workers: int,
    chunk_size: int,
) -> DecisionReport:
    t0 = time.perf_counter()
    if rule.q == 1:
        # one-state alphabets admit exactly one rule, which inverts itself
        millis = (time.perf_counter() - t0) * 1000.0
        return DecisionReport(Verdict.INVERTIBLE, rule, None, EnumerationStats(0, millis))
    mini = minimize_neighborhood(rule)
    candidate = derive_candidate_inverse(mini)
    if isinstance(candidate, DerivationConflict):
        return _conflict_report(mini, candidate, t0)
    windows = 0
    try:
        first = checker(mini, candidate, cap=window_cap, workers=workers, chunk_size=chunk_size)
    except ResourceCapExceededError:
        return _cap_report(windows, t0)
    windows += first.stats.windows
    if first.verdict is Verdict.INVERTIBLE:
        millis = (time.perf_counter() - t0) * 1000.0
        inverse = with_neighborhood(candidate, rule.neighborhood)
        return DecisionReport(Verdict.INVERTIBLE, inverse, None, EnumerationStats(windows, millis))
    if exhaustive:
        total = rule.q ** (rule.q ** mini.arity)
        if total > candidate_cap:
            return _cap_report(windows, t0)
        for table in _candidate_tables(rule.q, mini.arity):
            if table == candidate.table:
                continue
            other = LocalRule(rule.alphabet, mini.neighborhood, table)
            rep = checker(mini, other, cap=window_cap, workers=workers, chunk_size=chunk_size)
            windows += rep.stats.windows
            if rep.verdict is Verdict.INVERTIBLE:
                millis = (time.perf_counter() - t0) * 1000.0
                inverse = with_neighborhood(other, rule.neighborhood)
                return DecisionReport(
                    Verdict.INVERTIBLE, inverse, None, EnumerationStats(windows, millis)
                )
    millis = (time.perf_counter() - t0) * 1000.0
    return DecisionReport(Verdict.NOT_INVERTIBLE, None, first.witness, EnumerationStats(windows, millis))


def decide_purely(
    rule: LocalRule,
    *,
    window_cap: int = DEFAULT_WINDOW_CAP,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
    exhaustive: bool = False,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
) -> DecisionReport:
    """Decide purely asynchronous invertibility of a single rule.

    The neighborhood is minimized, the single candidate inverse derived and
    checked; with ``exhaustive`` every table over the minimized
    neighborhood is tried before a negative verdict.  A returned inverse is
    re-expressed over the rule's original neighborhood.
    """
    return _decide(
        rule,
        check_inverse_purely,
        window_cap=window_cap,
        candidate_cap=candidate_cap,
        exhaustive=exhaustive,
        workers=workers,
        chunk_size=chunk_size,
    )


def decide_fully_1d(
    rule: LocalRule,
    *,
    window_cap: int = DEFAULT_WINDOW_CAP,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
    exhaustive: bool = False,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
) -> DecisionReport:
    """Decide fully asynchronous invertibility of a one-dimensional rule."""
    if rule.neighborhood.dimension != 1:
        raise NotOneDimensionalError("fully asynchronous decision requires one dimension")
    return _decide(
        rule,
        check_inverse_fully_1d,
        window_cap=window_cap,
        candidate_cap=candidate_cap,
        exhaustive=exhaustive,
        workers=workers,
        chunk_size=chunk_size,
    )


@dataclass(frozen=True)
class TwoPredecessorWitness:
    """Two distinct windows mapped to one successor by single-cell steps."""

    first: WindowConfig
    first_active: Cell
    second: WindowConfig
    second_active: Cell

    def to_dict(self) -> dict[str, Any]:
        return {
            "first": window_to_dict(self.first),
            "first_active": list(self.first_active),
            "second": window_to_dict(self.second),
            "second_active": list(self.second_active),
        }


def two_predecessor_witness(rule: LocalRule) -> TwoPredecessorWitness | None:
    """Construct two window configurations with a common single-step successor.

    Returns None exactly when the rule never flips any cell (every local
    configuration maps to its center value), in which case no such witness
    exists.  Otherwise two far-apart copies of the least flipping local
    configuration are laid out on a background of zeros; flipping either
    copy's center in advance makes both windows step to the same successor.
    """
    if rule.neighborhood.origin not in rule.neighborhood:
        raise CenterNotInNeighborhoodError("witness construction needs offset 0 in the neighborhood")
    q = rule.q
    offsets = rule.neighborhood.offsets
    dim = rule.neighborhood.dimension
    weight = q ** (rule.arity - 1 - offsets.index(rule.neighborhood.origin))
    ell = None
    for idx, out in enumerate(rule.table):
        if out != (idx // weight) % q:
            ell = rule.decode_index(idx)
            break
    if ell is None:
        return None
    successor_value = rule.apply_local(ell)

    distance = 1
    while True:
        far = (distance,) + (0,) * (dim - 1)
        near = tuple(-x for x in far)
        if not set(add_cells(near, n) for n in offsets) & set(add_cells(far, n) for n in offsets):
            break
        distance += 1

    used = [add_cells(near, n) for n in offsets] + [add_cells(far, n) for n in offsets]
    lo = [min(c[axis] for c in used) for axis in range(dim)]
    hi = [max(c[axis] for c in used) for axis in range(dim)]
    box = [tuple(c) for c in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))]
    base = {cell: 0 for cell in box}
    for j, n in enumerate(offsets):
        base[add_cells(near, n)] = ell[j]
        base[add_cells(far, n)] = ell[j]
    shared = WindowConfig.from_mapping(base)
    first = shared.with_updates({near: successor_value})
    second = shared.with_updates({far: successor_value})

    joined_a = step(rule, first, [far])
    joined_b = step(rule, second, [near])
    if joined_a != joined_b or first == second:
        raise RuntimeError("witness construction failed to verify; this is a bug")
    return TwoPredecessorWitness(first=first, first_active=far, second=second, second_active=near)
