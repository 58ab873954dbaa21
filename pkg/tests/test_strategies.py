import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from filtergames.errors import OutOfRangeError, ResourceCapError, SpecParseError
from filtergames.model import IntervalPartition, UniformPartition
from filtergames.strategies import (
    bound_over,
    bound_prefix_sum,
    normalize_strategy,
    one_dominator,
    one_tactic_nonrare,
    stock_strategy,
)

# --------------------------------------------------------------------------
# independent oracles: the stock behaviors restated from scratch, and an
# exhaustive tuple-bound enumerator that only uses .next()
# --------------------------------------------------------------------------


def u_seq(size, k):
    block = (k + 1) // 2
    return (block - 1) * size + 1 + (k - 1) % 2


NAIVE = {
    "offset:3": lambda h: (h[-1] + 3) if h else 3,
    "offset:1": lambda h: (h[-1] + 1) if h else 1,
    "copy": lambda h: h[-1] if h else 1,
    "maxplus:2": lambda h: (max(h) + 2) if h else 2,
    "maxinning": lambda h: (max(h) + len(h)) if h else 1,
    "gplay:2k": lambda h: 2 * (len(h) + 1),
    "gplay:3k+1": lambda h: 3 * (len(h) + 1) + 1,
    "cofinite-fill:4": lambda h: 4 + len(h),
    "blockwise:size=3": lambda h: u_seq(3, len(h) + 1),
}


def oracle_bound(next_fn, n):
    best = next_fn(())
    for r in range(1, n + 1):
        for t in itertools.combinations(range(1, n + 1), r):
            best = max(best, next_fn(t))
    return best


def random_histories(count, seed=0, max_len=12, max_val=60, increasing=False):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(0, max_len)
        vals = rng.sample(range(1, max_val + 1), k)
        out.append(tuple(sorted(vals)) if increasing else tuple(vals))
    return out


class TestStockSemantics:
    @pytest.mark.parametrize("spec", sorted(NAIVE))
    def test_next_matches_naive_restatement(self, spec):
        s = stock_strategy(spec)
        for h in random_histories(80, seed=hash(spec) % 1000):
            assert s.next(h) == NAIVE[spec](h), (spec, h)

    def test_spec_examples(self):
        assert stock_strategy("offset:1").next((3, 7)) == 8
        assert stock_strategy("copy").next((5,)) == 5
        assert bound_over(stock_strategy("maxplus:2"), 5) == 7

    def test_parse_errors(self):
        for bad in ("offset", "offset:x", "offset:0", "mystery:3", "gplay:q", "norm-g3(copy)"):
            with pytest.raises(SpecParseError):
                stock_strategy(bad)


class TestBoundOver:
    def test_derived_examples_against_oracle(self):
        # oracle first, stated values frozen after computing them
        s = stock_strategy("offset:3")
        assert oracle_bound(s.next, 4) == 7
        assert bound_over(s, 4, prefer_fast=False) == 7
        m = stock_strategy("maxplus:1")
        assert oracle_bound(m.next, 5) == 6
        assert bound_over(m, 5) == 6

    def test_empty_tuple_only_at_zero(self):
        for spec in sorted(NAIVE):
            s = stock_strategy(spec)
            assert bound_over(s, 0) == s.next(())

    @pytest.mark.parametrize("spec", sorted(NAIVE))
    def test_fast_path_matches_exhaustive(self, spec):
        s = stock_strategy(spec)
        if s.bound_fn is None:
            pytest.skip("no fast path declared")
        for n in range(13):
            assert s.bound_fn(n) == oracle_bound(s.next, n), (spec, n)

    @pytest.mark.parametrize("spec", sorted(NAIVE))
    def test_prefix_sum_matches_pointwise(self, spec):
        s = stock_strategy(spec)
        if s.bound_sum_fn is None:
            pytest.skip("no prefix-sum fast path")
        for n in range(0, 14):
            assert bound_prefix_sum(s, n) == sum(s.bound_fn(k) for k in range(1, n + 1))

    def test_cap_without_fast_path(self):
        with pytest.raises(ResourceCapError):
            bound_over(stock_strategy("maxplus:2"), 25, prefer_fast=False)
        with pytest.raises(ResourceCapError):
            bound_over(one_tactic_nonrare(UniformPartition(3)), 25)  # no declared bound


class TestStepperAndWindow:
    @pytest.mark.parametrize("spec", sorted(NAIVE))
    def test_incremental_state_equals_fold(self, spec):
        s = stock_strategy(spec)
        for h in random_histories(40, seed=7):
            state = s.initial_state
            for mv in h:
                state = s.advance(state, mv)
            assert s.value(state) == NAIVE[spec](h)

    @pytest.mark.parametrize("spec", sorted(NAIVE))
    def test_window_matches_scalar(self, spec):
        s = stock_strategy(spec)
        if s.window_fn is None:
            pytest.skip("no vectorized window")
        for h in random_histories(15, seed=3, max_len=6):
            state = s.state_after(h)
            ys = np.arange(1, 40, dtype=np.int64)
            vec = s.window_after(state, ys)
            assert [int(v) for v in vec] == [s.value_after(state, int(y)) for y in ys]


class TestNormalization:
    def test_g1_examples(self):
        assert normalize_strategy(stock_strategy("copy"), "g1-one").next((5,)) == 6
        assert normalize_strategy(stock_strategy("maxplus:2"), "g1-one").next((5,)) == 7

    def test_g2_example(self):
        assert normalize_strategy(stock_strategy("copy"), "g2-one").next((3, 4)) == 6

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(min_value=1, max_value=10**6), max_size=20))
    def test_g1_soundness(self, history):
        h = tuple(history)
        wrapped = normalize_strategy(stock_strategy("copy"), "g1-one")
        assert wrapped.next(h) >= (max(h) if h else 0) + 1

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(min_value=1, max_value=10**6), max_size=20, unique=True))
    def test_g2_soundness(self, history):
        h = tuple(sorted(history))
        for inner in ("copy", "offset:1", "maxplus:2"):
            wrapped = normalize_strategy(stock_strategy(inner), "g2-one")
            values = [wrapped.next(h[:i]) for i in range(len(h) + 1)]
            for i in range(1, len(h) + 1):
                assert values[i] > max(h[:i]) + 1
            assert all(a < b for a, b in zip(values, values[1:]))

    def test_g2_bound_fast_path_matches_exhaustive(self):
        wrapped = normalize_strategy(stock_strategy("copy"), "g2-one")
        for n in range(11):
            assert wrapped.bound_fn(n) == oracle_bound(wrapped.next, n)

    def test_wrapping_compliant_strategy_changes_nothing_on_increasing(self):
        s = stock_strategy("maxplus:2")
        wrapped = normalize_strategy(s, "g2-one")
        for h in random_histories(50, seed=11, increasing=True):
            assert wrapped.next(h) == s.next(h)

    def test_spec_string_wrappers(self):
        assert stock_strategy("norm-g1(copy)").next((5,)) == 6
        assert stock_strategy("norm-g2(maxplus:1)").name == "norm-g2(maxplus:1)"


class TestOneDominator:
    def test_examples(self):
        s = one_dominator(lambda k: 2 * k)
        assert s.next((9, 17)) == 6  # inning 3
        assert s.next(()) == 2
        ident = one_dominator(lambda k: k)
        assert [ident.next(tuple(range(1, i))) for i in range(1, 4)] == [1, 2, 3]

    def test_gplay_is_the_same_engine(self):
        s = stock_strategy("gplay:2k")
        assert [s.next((99,) * i) for i in range(4)] == [2, 4, 6, 8]


class TestOneTactic:
    def test_derived_examples(self):
        p = UniformPartition(2)  # blocks {2n-1, 2n}
        tac = one_tactic_nonrare(p)
        assert tac.next((1,)) == 7
        assert tac.next((4,)) == 19
        assert tac.next((10,)) == 46
        assert tac.next(()) == 7  # first move convention: k = 1

    def test_monotone_escape(self):
        p = UniformPartition(2)
        tac = one_tactic_nonrare(p)
        prev = 0
        for k in range(1, 200):
            v = tac.next((k,))
            n = p.block_of(k)
            assert v > p.max_upto(n + k)
            assert v > prev
            prev = v

    def test_finite_partition_coverage_error(self):
        p = IntervalPartition.from_block_sizes([2, 2, 2])
        tac = one_tactic_nonrare(p)
        with pytest.raises(OutOfRangeError):
            tac.next((5,))  # needs blocks beyond coverage

    def test_window_matches_scalar_on_uniform(self):
        tac = one_tactic_nonrare(UniformPartition(3))
        state = tac.state_after((5,))
        ys = np.arange(1, 60, dtype=np.int64)
        assert [int(v) for v in tac.window_after(state, ys)] == [
            tac.value_after(state, int(y)) for y in ys
        ]
