import random

import pytest
from hypothesis import given, settings, strategies as st

from filtergames.errors import PreconditionError
from filtergames.filters import FrechetFilter, parse_filter_spec, prefix_status
from filtergames.model import SetPrefix, Transcript
from filtergames.referee import domination_index, judge_g1, judge_g2, play
from filtergames.serialize import canonical_dumps
from filtergames.strategies import one_dominator, stock_strategy

FRECHET = FrechetFilter()


# --------------------------------------------------------------------------
# independent naive re-scan: forward loops only, no shared helpers
# --------------------------------------------------------------------------


def naive_g1_parts(ms, ns, horizon):
    increasing = True
    for i in range(1, len(ns)):
        if ns[i] <= ns[i - 1]:
            increasing = False
    beats = 0
    for m, n in zip(ms, ns):
        if m < n:
            beats += 1
    return increasing, beats, horizon // 2


def naive_domination_index(ms, ns):
    best = None
    for d in range(1, len(ms) + 1):
        if all(ms[k] < ns[k] for k in range(d - 1, len(ms))):
            best = d
            break
    return best


def random_transcript(rng, game):
    n = rng.randint(1, 200)
    style = rng.randrange(3)
    ms, ns = [], []
    cur = 1
    for _ in range(n):
        if style == 0:  # chaotic
            ms.append(rng.randint(1, 400))
            ns.append(rng.randint(1, 400))
        elif style == 1:  # TWO increasing, often beating
            ms.append(rng.randint(1, cur + 3))
            cur += rng.randint(1, 4)
            ns.append(cur)
        else:  # near-ties
            m = rng.randint(1, 50)
            ms.append(m)
            ns.append(m + rng.randint(-1, 1) or 1)
    ns = [max(1, v) for v in ns]
    return Transcript.from_moves(game, ms, ns, n)


class TestPlay:
    def test_dominator_vs_offset(self):
        t = play("g1", one_dominator(lambda k: 2 * k), stock_strategy("offset:1"), 3)
        assert t.one_moves == (2, 4, 6)
        assert t.two_moves == (3, 5, 7)

    def test_maxplus_vs_copy_hand_simulation(self):
        t = play("g2", stock_strategy("maxplus:1"), stock_strategy("copy"), 2)
        assert t.one_moves == (1, 2)
        assert t.two_moves == (1, 2)

    def test_zero_horizon_rejected(self):
        with pytest.raises(PreconditionError):
            play("g1", stock_strategy("copy"), stock_strategy("copy"), 0)

    def test_strategy_error_carries_inning(self):
        tactic = stock_strategy("tactic:sizes=2,2")
        with pytest.raises(Exception, match="inning"):
            play("g2", tactic, stock_strategy("offset:1"), 10)

    def test_determinism(self):
        runs = [
            play("g1", stock_strategy("maxinning"), stock_strategy("offset:2"), 50)
            for _ in range(2)
        ]
        assert canonical_dumps(runs[0].to_json()) == canonical_dumps(runs[1].to_json())


class TestJudgeG1:
    def test_basic_example(self):
        t = Transcript.from_moves("g1", (1, 2, 3), (2, 3, 4), 3)
        v = judge_g1(t, FRECHET)
        assert v.increasing_ok and v.beat_count == 3
        assert v.status.witnessed  # {2,3,4} carries a tail certificate
        assert v.two_winning_at_horizon

    def test_monotonicity_violation_blocks_win(self):
        t = Transcript.from_moves("g1", (1, 1, 1), (2, 2, 3), 3)
        v = judge_g1(t, FRECHET)
        assert not v.increasing_ok and not v.two_winning_at_horizon

    def test_no_beats(self):
        t = Transcript.from_moves("g1", (5, 6, 7), (1, 2, 3), 3)
        assert judge_g1(t, FRECHET).beat_count == 0

    def test_invalid_transcript_rejected(self):
        t = Transcript.from_moves("g1", (0,), (2,), 1)
        with pytest.raises(PreconditionError):
            judge_g1(t, FRECHET)


class TestJudgeG2:
    def test_dominates_everywhere(self):
        t = Transcript.from_moves("g2", (1, 2, 3, 4), (2, 3, 4, 5), 4)
        assert judge_g2(t, FRECHET).domination_index == 1

    def test_fails_early_innings(self):
        t = Transcript.from_moves("g2", (3, 3, 3, 3), (1, 2, 4, 5), 4)
        assert judge_g2(t, FRECHET).domination_index == 3

    def test_never_dominates(self):
        t = Transcript.from_moves("g2", (2, 3), (2, 3), 2)
        assert judge_g2(t, FRECHET).domination_index is None

    def test_no_monotonicity_requirement(self):
        # TWO's moves wobble but dominate; the judged set is the distinct values
        t = Transcript.from_moves("g2", (1, 1, 1, 1), (9, 5, 6, 7), 4)
        v = judge_g2(t, FRECHET)
        assert v.domination_index == 1
        expected = prefix_status(FRECHET, SetPrefix.from_values([5, 6, 7, 9]))
        assert v.status == expected


class TestPrefixCoherence:
    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(st.tuples(st.integers(1, 99), st.integers(1, 99)), min_size=1, max_size=40),
        st.tuples(st.integers(1, 99), st.integers(1, 99)),
    )
    def test_beat_count_monotone_under_extension(self, innings, extra):
        ms = [m for m, _ in innings]
        ns = [n for _, n in innings]
        t1 = Transcript.from_moves("g1", ms, ns, len(ms) + 1)
        t2 = Transcript.from_moves("g1", ms + [extra[0]], ns + [extra[1]], len(ms) + 1)
        assert judge_g1(t2, FRECHET).beat_count >= judge_g1(t1, FRECHET).beat_count

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.tuples(st.integers(1, 99), st.integers(1, 99)), min_size=1, max_size=40))
    def test_domination_index_stable_under_dominated_extension(self, innings):
        ms = [m for m, _ in innings]
        ns = [n for _, n in innings]
        d = domination_index(ms, ns)
        if d is not None:
            d2 = domination_index(ms + [7], ns + [8])
            assert d2 == d

    def test_domination_index_matches_naive(self):
        rng = random.Random(5)
        for _ in range(300):
            t = random_transcript(rng, "g2")
            assert domination_index(t.one_moves, t.two_moves) == naive_domination_index(
                t.one_moves, t.two_moves
            )


class TestOracleEquivalence:
    def test_naive_rescan_sample(self):
        rng = random.Random(17)
        nonrare = parse_filter_spec("nonrare:block=3")
        for _ in range(200):
            t = random_transcript(rng, "g1")
            for f in (FRECHET, nonrare):
                v = judge_g1(t, f)
                inc, beats, tau = naive_g1_parts(t.one_moves, t.two_moves, t.horizon)
                assert (v.increasing_ok, v.beat_count) == (inc, beats)
                assert v.two_winning_at_horizon == (inc and beats >= tau and v.status.witnessed)
            g2 = Transcript.from_moves("g2", t.one_moves, t.two_moves, t.horizon)
            v2 = judge_g2(g2, FRECHET)
            nd = naive_domination_index(t.one_moves, t.two_moves)
            assert v2.domination_index == nd
            assert v2.two_winning_at_horizon == (
                nd is not None and nd <= (t.horizon + 1) // 2 and v2.status.witnessed
            )
