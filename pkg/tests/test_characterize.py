import pytest

from filtergames.characterize import (
    check_enum_bounded,
    check_partition_escape,
    check_rare_at_horizon,
)
from filtergames.errors import PreconditionError, UnsupportedKindError
from filtergames.filters import (
    FrechetFilter,
    NonRareWitnessFilter,
    RareOracleFilter,
    block_hit_counts,
    enum_base,
    parse_filter_spec,
)
from filtergames.model import IntervalPartition, SetPrefix, UniformPartition
from filtergames.referee import judge_g1, play
from filtergames.strategies import one_dominator, stock_strategy

FRECHET = FrechetFilter()
NONRARE3 = NonRareWitnessFilter(UniformPartition(3))


def oracle_least_threshold(f, n, g, scan):
    """Independent scan: least K with enum < g on all of [K, scan], else None."""
    ok_from = None
    for k in range(scan, 0, -1):
        if enum_base(f, n, k) < g(k):
            ok_from = k
        else:
            break
    return ok_from


class TestEnumBounded:
    def test_frechet_doubling_passes_with_threshold_n(self):
        g = lambda k: 2 * k
        report = check_enum_bounded(FRECHET, g, range(1, 51), 1000)
        assert report.all_pass
        for r in report.per_base:
            # oracle first: the independent backward scan fixes the threshold
            assert r.threshold == oracle_least_threshold(FRECHET, r.base_index, g, 1000)
            assert r.threshold == r.base_index  # enum = n+k-1 < 2k exactly from k = n

    def test_frechet_shifted_fails_high_bases(self):
        g = lambda k: k + 10
        report = check_enum_bounded(FRECHET, g, range(1, 51), 1000)
        assert not report.all_pass
        by_index = {r.base_index: r for r in report.per_base}
        assert not by_index[12].passed  # enum = k+11 >= k+10 for every k
        assert not by_index[11].passed  # equality never counts as domination
        assert all(by_index[n].passed for n in range(1, 11))

    def test_nonrare_blocks_pass_doubling(self):
        g = lambda k: 2 * k
        report = check_enum_bounded(NONRARE3, g, range(1, 21), 1000)
        assert report.all_pass
        for r in report.per_base:
            assert r.threshold == oracle_least_threshold(NONRARE3, r.base_index, g, 1000)

    def test_oracle_kind_rejected(self):
        with pytest.raises(UnsupportedKindError):
            check_enum_bounded(RareOracleFilter(), lambda k: k, range(1, 3), 10)


class TestPartitionEscape:
    def test_frechet_never_escapes(self):
        report = check_partition_escape(FRECHET, UniformPartition(3), threshold=5, scan=1000)
        assert not report.found

    def test_nonrare_never_escapes_its_own_partition(self):
        report = check_partition_escape(NONRARE3, UniformPartition(3), threshold=1, scan=1000)
        assert not report.found

    def test_stock_oracle_selector_meets_every_block(self):
        ora = RareOracleFilter()
        report = check_partition_escape(ora, UniformPartition(2), threshold=5, scan=1000)
        assert not report.found

    def test_sparse_issued_member_can_escape(self):
        # an oracle-asserted member that skips blocks is escape evidence
        from filtergames.filters import SetGenerator

        ora = RareOracleFilter()
        ora.register(SetGenerator("sparse", element_fn=lambda i: 100 * i))
        report = check_partition_escape(ora, UniformPartition(3), threshold=5, scan=2000)
        assert report.found and report.member.endswith("sparse")

    def test_coverage_precondition(self):
        with pytest.raises(PreconditionError):
            check_partition_escape(FRECHET, IntervalPartition.from_block_sizes([3, 3]), 2, 100)


class TestRareAtHorizon:
    def test_frechet_obstructed(self):
        report = check_rare_at_horizon(FRECHET, UniformPartition(2), 100)
        assert report.kind_found == "obstruction"
        assert all(o["all_certificates_double_hit"] for o in report.obstructions)

    def test_nonrare_obstructed_on_own_partition(self):
        report = check_rare_at_horizon(NONRARE3, UniformPartition(3), 120)
        assert report.kind_found == "obstruction"
        assert all(o["all_certificates_double_hit"] for o in report.obstructions)

    def test_oracle_provides_verified_selector(self):
        ora = RareOracleFilter()
        report = check_rare_at_horizon(ora, UniformPartition(2), 100)
        assert report.kind_found == "selector"
        assert report.selector_ok
        assert report.selector_elements == tuple(range(1, 101, 2))

    def test_selector_coheres_with_hit_counts(self):
        ora = RareOracleFilter()
        p = UniformPartition(2)
        report = check_rare_at_horizon(ora, p, 60)
        s = SetPrefix.from_values(report.selector_elements)
        assert all(c <= 1 for _b, c in block_hit_counts(s, p))


class TestLinkToDominatorStrategy:
    def test_bounded_enumerations_mean_one_wins(self):
        # a filter passing the bounding check hands ONE a dominator that
        # holds every member-enumerating adversary to a constant beat count
        g = lambda k: 2 * k
        assert check_enum_bounded(NONRARE3, g, range(1, 9), 400).all_pass
        one = one_dominator(g, name="dominator:2k")
        for m in (1, 2, 5, 8):
            # adversary plays the enumeration of base set U_m
            two = stock_strategy("blockwise:size=3")
            if m > 1:
                from filtergames.strategies import Strategy

                two = Strategy(
                    name=f"enum-U{m}",
                    initial_state=0,
                    advance_fn=lambda ln, mv: ln + 1,
                    value_fn=lambda ln, m=m: enum_base(NONRARE3, m, ln + 1),
                )
            beats = {}
            for horizon in (500, 1000):
                t = play("g1", one, two, horizon)
                v = judge_g1(t, NONRARE3)
                beats[horizon] = v.beat_count
                assert not v.two_winning_at_horizon
            assert beats[500] == beats[1000] <= 6 * m + 2  # constant, horizon-free
