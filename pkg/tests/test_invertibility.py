"""Invertibility checkers, deciders, candidate derivation, and witnesses."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acainvert import (
    Alphabet,
    LocalRule,
    Neighborhood,
    WindowConfig,
    difference,
    eca_from_wolfram,
    minimize_neighborhood,
    step,
    with_neighborhood,
    wolfram_number,
)
from acainvert.errors import (
    NeighborhoodMismatchError,
    NotOneDimensionalError,
    ResourceCapExceededError,
)
from acainvert.invertibility import (
    DerivationConflict,
    FullyTestWindow,
    PurelyTestWindow,
    Verdict,
    check_inverse_fully_1d,
    check_inverse_purely,
    decide_fully_1d,
    decide_purely,
    derive_candidate_inverse,
    two_predecessor_witness,
)

from naive_oracles import naive_check_fully, naive_check_purely


def rule_of(table, *offsets, q=2):
    return LocalRule(Alphabet(q), Neighborhood.line(*offsets), tuple(table))


def replay_witness(C, G, report, candidates=None):
    """Re-enact the reported violation with the plain step operator."""
    w = report.witness.window
    active = report.witness.active
    clause = report.witness.clause
    if clause == "purely-forward":
        stepped = step(C, w, active)
        assert difference(w, stepped) == frozenset(active)
        assert step(G, stepped, active) != w
    elif clause == "purely-backward":
        stepped = step(G, w, active)
        assert difference(w, stepped) == frozenset(active)
        assert step(C, stepped, active) != w
    elif clause == "eq1-forward":
        stepped = step(C, w, active)
        assert difference(w, stepped) == frozenset(active) == frozenset({(0,)})
        assert step(G, stepped, active) != w
    elif clause == "eq1-backward":
        stepped = step(G, w, active)
        assert difference(w, stepped) == frozenset(active) == frozenset({(0,)})
        assert step(C, stepped, active) != w
    elif clause == "eq2-delta":
        assert step(C, w, [(0,)]) == w
        assert all(step(G, w, [a]) != w for a in candidates)
    elif clause == "eq2-gamma":
        assert step(G, w, [(0,)]) == w
        assert all(step(C, w, [a]) != w for a in candidates)
    else:
        raise AssertionError(f"unknown clause {clause}")


class TestPurelyTestWindow:
    def test_eca_shape(self):
        tw = PurelyTestWindow.build(ECA := eca_from_wolfram(110).neighborhood)
        assert tw.cells == tuple((i,) for i in range(-2, 3))
        assert tw.active_family == (
            ((0,),),
            ((0,), (1,)),
            ((-1,), (0,)),
            ((-1,), (0,), (1,)),
        )

    def test_origin_only(self):
        tw = PurelyTestWindow.build(Neighborhood.line(0))
        assert tw.cells == ((0,),)
        assert tw.active_family == (((0,),),)


class TestFullyTestWindow:
    def test_eca_shape(self):
        tw = FullyTestWindow.build(2, eca_from_wolfram(110).neighborhood)
        assert tw.max_distance == 1
        assert tw.candidates == tuple(range(-8, 9))
        assert tw.cells == tuple((i,) for i in range(-9, 10))

    def test_empty_neighborhood(self):
        tw = FullyTestWindow.build(2, Neighborhood(1, ()))
        assert tw.max_distance is None
        assert tw.candidates == (0,)
        assert tw.cells == ((0,),)

    def test_cap_guard(self):
        with pytest.raises(ResourceCapExceededError):
            FullyTestWindow.build(2, eca_from_wolfram(110).neighborhood, cap=1 << 10)


class TestCheckInversePurely:
    def test_toggler_pair_invertible(self):
        rep = check_inverse_purely(eca_from_wolfram(204), eca_from_wolfram(204))
        assert rep.verdict is Verdict.INVERTIBLE
        assert rep.witness is None
        assert rep.stats.windows == 2 ** 5

    def test_keeper_pair_invertible(self):
        rep = check_inverse_purely(eca_from_wolfram(51), eca_from_wolfram(51))
        assert rep.verdict is Verdict.INVERTIBLE

    def test_constant_pair_invertible(self):
        rep = check_inverse_purely(eca_from_wolfram(0), eca_from_wolfram(255))
        assert rep.verdict is Verdict.INVERTIBLE

    def test_rule_110_self_pair_witness(self):
        rep = check_inverse_purely(eca_from_wolfram(110), eca_from_wolfram(110))
        assert rep.verdict is Verdict.NOT_INVERTIBLE
        assert rep.witness.clause == "purely-forward"
        assert rep.witness.window == WindowConfig.line((0, 0, 0, 1, 1), start=-2)
        assert rep.witness.active == ((0,), (1,))

    def test_witness_replays(self):
        for n, g in ((110, 110), (30, 30), (33, 123), (0, 0)):
            C, G = eca_from_wolfram(n), eca_from_wolfram(g)
            rep = check_inverse_purely(C, G)
            if rep.verdict is Verdict.NOT_INVERTIBLE:
                replay_witness(C, G, rep)

    def test_symmetric_verdicts(self):
        for n, g in ((110, 110), (0, 255), (35, 115), (33, 123)):
            a = check_inverse_purely(eca_from_wolfram(n), eca_from_wolfram(g))
            b = check_inverse_purely(eca_from_wolfram(g), eca_from_wolfram(n))
            assert a.verdict == b.verdict

    def test_neighborhood_mismatch(self):
        with pytest.raises(NeighborhoodMismatchError):
            check_inverse_purely(eca_from_wolfram(110), rule_of([0, 1], 0))

    def test_cap(self):
        with pytest.raises(ResourceCapExceededError):
            check_inverse_purely(eca_from_wolfram(110), eca_from_wolfram(110), cap=4)

    def test_worker_count_does_not_change_result(self):
        base = check_inverse_purely(eca_from_wolfram(110), eca_from_wolfram(110))
        for workers in (2, 4):
            rep = check_inverse_purely(
                eca_from_wolfram(110), eca_from_wolfram(110), workers=workers, chunk_size=4
            )
            assert rep.to_dict() == base.to_dict()

    def test_matches_naive_oracle_on_eca_pairs(self):
        pairs = [(0, 255), (35, 115), (51, 51), (204, 204), (110, 110), (30, 86), (33, 123)]
        for n, g in pairs:
            C, G = eca_from_wolfram(n), eca_from_wolfram(g)
            got = check_inverse_purely(C, G).verdict is Verdict.INVERTIBLE
            want = naive_check_purely((-1, 0, 1), 2, C.table, G.table)
            assert got == want, (n, g)


class TestCheckInverseFully:
    def test_keeper_pair_invertible(self):
        rep = check_inverse_fully_1d(eca_from_wolfram(51), eca_from_wolfram(51))
        assert rep.verdict is Verdict.INVERTIBLE

    def test_toggler_pair_invertible(self):
        rep = check_inverse_fully_1d(eca_from_wolfram(204), eca_from_wolfram(204))
        assert rep.verdict is Verdict.INVERTIBLE

    def test_xor_pair_invertible(self):
        rep = check_inverse_fully_1d(eca_from_wolfram(150), eca_from_wolfram(150))
        assert rep.verdict is Verdict.INVERTIBLE

    def test_constant_pair_not_invertible(self):
        rep = check_inverse_fully_1d(eca_from_wolfram(0), eca_from_wolfram(255))
        assert rep.verdict is Verdict.NOT_INVERTIBLE

    def test_witness_replays(self):
        tw = FullyTestWindow.build(2, eca_from_wolfram(0).neighborhood)
        cand = [(a,) for a in tw.candidates]
        for n, g in ((0, 255), (110, 110), (106, 106)):
            C, G = eca_from_wolfram(n), eca_from_wolfram(g)
            rep = check_inverse_fully_1d(C, G)
            if rep.verdict is Verdict.NOT_INVERTIBLE:
                replay_witness(C, G, rep, candidates=cand)

    def test_requires_one_dimension(self):
        square = LocalRule(Alphabet(2), Neighborhood(2, ((0, 0),)), (0, 1))
        with pytest.raises(NotOneDimensionalError):
            check_inverse_fully_1d(square, square)

    def test_matches_naive_oracle_on_eca_pairs(self):
        pairs = [(33, 123), (51, 51), (204, 204), (0, 255), (110, 110), (150, 150)]
        for n, g in pairs:
            C, G = eca_from_wolfram(n), eca_from_wolfram(g)
            got = check_inverse_fully_1d(C, G).verdict is Verdict.INVERTIBLE
            want = naive_check_fully((-1, 0, 1), 2, C.table, G.table)
            assert got == want, (n, g)


class TestDeriveCandidate:
    def test_keeper_yields_itself(self):
        assert wolfram_number(derive_candidate_inverse(eca_from_wolfram(51))) == 51

    def test_toggler_yields_itself(self):
        assert wolfram_number(derive_candidate_inverse(eca_from_wolfram(204))) == 204

    def test_constant_rules_pair_up(self):
        assert wolfram_number(derive_candidate_inverse(eca_from_wolfram(0))) == 255
        assert wolfram_number(derive_candidate_inverse(eca_from_wolfram(255))) == 0

    def test_rule_33(self):
        assert wolfram_number(derive_candidate_inverse(eca_from_wolfram(33))) == 123

    def test_center_blind_q3_conflict(self):
        # delta(l) = l(1) over N=(1): distinct centers flip to the same
        # successor window, so no table can undo both.
        rule = rule_of([0, 1, 2], 1, q=3)
        conflict = derive_candidate_inverse(rule)
        assert isinstance(conflict, DerivationConflict)
        assert conflict.first_value != conflict.second_value

    def test_center_blind_q2_has_no_conflict(self):
        # With two states the alternative center value is unique.
        rule = rule_of([0, 1], 1)
        candidate = derive_candidate_inverse(rule)
        assert isinstance(candidate, LocalRule)

    def test_candidate_is_necessary_for_all_invertible_eca(self):
        # Wherever the decider finds an inverse, that inverse agrees with
        # the derived candidate (the candidate's pinned entries are forced).
        for n in (35, 43, 49, 51, 59, 113, 115, 204):
            rule = minimize_neighborhood(eca_from_wolfram(n))
            candidate = derive_candidate_inverse(rule)
            rep = check_inverse_purely(rule, candidate)
            assert rep.verdict is Verdict.INVERTIBLE


class TestDecidePurely:
    @pytest.mark.parametrize("n,expected", [(0, True), (33, False), (255, True), (204, True)])
    def test_paper_examples(self, n, expected):
        rep = decide_purely(eca_from_wolfram(n))
        assert (rep.verdict is Verdict.INVERTIBLE) == expected

    def test_inverse_re_expressed_over_original_neighborhood(self):
        rep = decide_purely(eca_from_wolfram(204))
        assert rep.verdict is Verdict.INVERTIBLE
        assert rep.inverse.neighborhood == eca_from_wolfram(204).neighborhood
        assert wolfram_number(rep.inverse) == 204

    def test_invertible_result_checks_both_directions(self):
        for n in (0, 35, 51, 115):
            rule = eca_from_wolfram(n)
            rep = decide_purely(rule)
            assert rep.verdict is Verdict.INVERTIBLE
            assert check_inverse_purely(rule, rep.inverse).verdict is Verdict.INVERTIBLE
            assert check_inverse_purely(rep.inverse, rule).verdict is Verdict.INVERTIBLE

    def test_not_invertible_has_witness(self):
        rep = decide_purely(eca_from_wolfram(110))
        assert rep.verdict is Verdict.NOT_INVERTIBLE
        assert rep.witness is not None

    def test_exhaustive_agrees_on_sample(self):
        for n in (0, 30, 33, 110, 204):
            fast = decide_purely(eca_from_wolfram(n))
            slow = decide_purely(eca_from_wolfram(n), exhaustive=True)
            assert fast.verdict == slow.verdict

    def test_exhaustive_candidate_cap(self):
        rep = decide_purely(eca_from_wolfram(110), exhaustive=True, candidate_cap=8)
        assert rep.verdict is Verdict.RESOURCE_CAP_EXCEEDED

    def test_window_cap_verdict(self):
        rep = decide_purely(eca_from_wolfram(110), window_cap=4)
        assert rep.verdict is Verdict.RESOURCE_CAP_EXCEEDED
        assert rep.witness is None and rep.inverse is None

    def test_derivation_conflict_verdict(self):
        rule = rule_of([0, 1, 2], 1, q=3)
        rep = decide_purely(rule)
        assert rep.verdict is Verdict.NOT_INVERTIBLE
        assert rep.witness.clause == "derivation-conflict"

    def test_dummy_neighbor_invariance_sample(self):
        wide = Neighborhood.line(-2, -1, 0, 1)
        for n in (0, 33, 110, 204, 150):
            rule = eca_from_wolfram(n)
            padded = with_neighborhood(rule, wide)
            assert decide_purely(rule).verdict == decide_purely(padded).verdict


class TestDecideFully:
    @pytest.mark.parametrize("n,expected", [(33, True), (0, False), (150, True), (204, True)])
    def test_paper_examples(self, n, expected):
        rep = decide_fully_1d(eca_from_wolfram(n))
        assert (rep.verdict is Verdict.INVERTIBLE) == expected

    def test_rule_33_inverse_is_123(self):
        rep = decide_fully_1d(eca_from_wolfram(33))
        assert wolfram_number(rep.inverse) == 123

    def test_invertible_result_checks_both_directions(self):
        for n in (33, 51, 150):
            rule = eca_from_wolfram(n)
            rep = decide_fully_1d(rule)
            assert check_inverse_fully_1d(rule, rep.inverse).verdict is Verdict.INVERTIBLE
            assert check_inverse_fully_1d(rep.inverse, rule).verdict is Verdict.INVERTIBLE

    def test_requires_one_dimension(self):
        square = LocalRule(Alphabet(2), Neighborhood(2, ((0, 0),)), (0, 1))
        with pytest.raises(NotOneDimensionalError):
            decide_fully_1d(square)

    def test_window_cap_verdict(self):
        rep = decide_fully_1d(eca_from_wolfram(33), window_cap=64)
        assert rep.verdict is Verdict.RESOURCE_CAP_EXCEEDED

    def test_frozen_negative_witness(self):
        rep = decide_fully_1d(eca_from_wolfram(0))
        assert rep.verdict is Verdict.NOT_INVERTIBLE
        assert rep.witness.clause == "eq2-delta"
        assert rep.witness.window == WindowConfig.line((0,), start=0)


class TestReportSerialization:
    def test_millis_zeroed_by_default(self):
        rep = decide_purely(eca_from_wolfram(110))
        doc = rep.to_dict()
        assert doc["stats"]["millis"] == 0
        assert set(doc) == {"verdict", "inverse", "witness", "stats"}

    def test_timings_opt_in(self):
        rep = decide_purely(eca_from_wolfram(110))
        assert rep.to_dict(timings=True)["stats"]["millis"] >= 0


class TestTwoPredecessorWitness:
    def test_trivial_rule_has_none(self):
        assert two_predecessor_witness(eca_from_wolfram(51)) is None

    def test_toggler_matches_pinned_construction(self):
        wit = two_predecessor_witness(eca_from_wolfram(204))
        assert wit.first == WindowConfig.line((0, 1, 0, 0, 0, 0, 0), start=-3)
        assert wit.second == WindowConfig.line((0, 0, 0, 0, 0, 1, 0), start=-3)
        assert wit.first_active == (2,)
        assert wit.second_active == (-2,)

    def test_constant_rule_witness(self):
        wit = two_predecessor_witness(eca_from_wolfram(0))
        assert wit.first == WindowConfig.line((0, 0, 0, 0, 0, 1, 0), start=-3)
        assert wit.second == WindowConfig.line((0, 1, 0, 0, 0, 0, 0), start=-3)

    def test_validity_for_sample(self):
        for n in (0, 30, 90, 110, 204, 255):
            rule = eca_from_wolfram(n)
            wit = two_predecessor_witness(rule)
            assert wit.first != wit.second
            merged_first = step(rule, wit.first, [wit.first_active])
            merged_second = step(rule, wit.second, [wit.second_active])
            assert merged_first == merged_second


@settings(max_examples=30, deadline=None)
@given(n=st.integers(0, 255), g=st.integers(0, 255))
def test_purely_check_symmetry_property(n, g):
    a = check_inverse_purely(eca_from_wolfram(n), eca_from_wolfram(g))
    b = check_inverse_purely(eca_from_wolfram(g), eca_from_wolfram(n))
    assert a.verdict == b.verdict


@settings(max_examples=20, deadline=None)
@given(n=st.integers(0, 255), g=st.integers(0, 255))
def test_purely_check_matches_naive_property(n, g):
    got = check_inverse_purely(eca_from_wolfram(n), eca_from_wolfram(g)).verdict
    want = naive_check_purely((-1, 0, 1), 2, eca_from_wolfram(n).table, eca_from_wolfram(g).table)
    assert (got is Verdict.INVERTIBLE) == want
