"""Finitely-representable non-principal filters with prefix-membership semantics.

A concrete, countably-based filter is necessarily meager, so the non-meager
side of any check can only be exercised through the RareOracleFilter mock,
whose membership claims are *asserted* rather than verified.  Everything
combinatorial about oracle-issued sets (selector laws, disjointness, ordering)
is still checked for real; only "this set is in the filter" is taken on faith.

Membership of an infinite set is undecidable from a finite prefix, so
``prefix_status`` returns a three-valued status instead of a boolean:

* WITNESSED -- the prefix contains a base set over a tail window of the scan,
  anchored in the first half of the scanned range (the anchor rule keeps
  one-point tail coincidences from counting as certificates);
* COMPATIBLE -- nothing rules membership out, but no certificate exists;
* VIOLATED -- reserved for filter kinds with finite refutation certificates.
  No stock kind emits it.
"""

from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .errors import (
    NoSelectorError,
    PreconditionError,
    ResourceCapError,
    SpecParseError,
    UnsupportedKindError,
)
from .model import IntervalPartition, Partition, SetPrefix, UniformPartition


class StatusState(str, Enum):
    VIOLATED = "violated"
    COMPATIBLE = "compatible"
    WITNESSED = "witnessed"


@dataclass(frozen=True)
class PrefixStatus:
    state: StatusState
    base_index: int | None = None
    tail_start: int | None = None

    @property
    def witnessed(self) -> bool:
        return self.state is StatusState.WITNESSED

    def to_json(self) -> dict:
        out: dict = {"state": self.state.value}
        if self.state is StatusState.WITNESSED:
            out["base_index"] = self.base_index
            out["tail_start"] = self.tail_start
        return out


COMPATIBLE = PrefixStatus(StatusState.COMPATIBLE)


class SetGenerator:
    """Strictly increasing enumeration of a set of positive integers.

    Backed either by a closed-form ``element_fn`` (1-based position -> value,
    conceptually unbounded) or by a materialized element list that is known to
    be complete up to ``complete_upto``.
    """

    def __init__(
        self,
        name: str,
        *,
        element_fn: Callable[[int], int] | None = None,
        elements: Sequence[int] | None = None,
        complete_upto: int | None = None,
    ):
        if (element_fn is None) == (elements is None):
            raise PreconditionError("SetGenerator needs exactly one of element_fn / elements")
        self.name = name
        self._fn = element_fn
        self._elements = tuple(elements) if elements is not None else None
        if self._elements is not None:
            if any(a >= b for a, b in zip(self._elements, self._elements[1:])):
                raise PreconditionError(f"generator {name!r} is not strictly increasing")
            if complete_upto is None:
                complete_upto = self._elements[-1] if self._elements else 0
        self._complete_upto = complete_upto

    def element(self, i: int) -> int:
        """i-th smallest member, 1-based."""
        if i < 1:
            raise PreconditionError("positions are 1-based")
        if self._elements is not None:
            if i > len(self._elements):
                raise ResourceCapError(
                    f"generator {self.name!r} only materializes {len(self._elements)} elements"
                )
            return self._elements[i - 1]
        return self._fn(i)

    def is_complete_upto(self, bound: int) -> bool:
        if self._fn is not None:
            return True
        return self._complete_upto is not None and bound <= self._complete_upto

    def elements_upto(self, bound: int, cap: int = 1_000_000) -> list[int]:
        """All members <= bound, in order; the generator must cover that range."""
        if self._elements is not None:
            if not self.is_complete_upto(bound):
                raise ResourceCapError(
                    f"generator {self.name!r} is only complete up to {self._complete_upto}"
                )
            hi = bisect.bisect_right(self._elements, bound)
            return list(self._elements[:hi])
        out: list[int] = []
        prev = 0
        for i in range(1, cap + 1):
            v = self._fn(i)
            if v <= prev:
                raise PreconditionError(f"generator {self.name!r} is not strictly increasing")
            if v > bound:
                return out
            out.append(v)
            prev = v
        raise ResourceCapError(f"generator {self.name!r} exceeded {cap} elements below {bound}")

    def __repr__(self) -> str:  # pragma: no cover
        return f"SetGenerator({self.name!r})"


# --------------------------------------------------------------------------
# Filter kinds
# --------------------------------------------------------------------------


class FilterHandle:
    kind = "abstract"

    def describe(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class FrechetFilter(FilterHandle):
    """The cofinite filter; base set n is the tail [n, infinity)."""

    kind = "frechet"


class BaseGeneratedFilter(FilterHandle):
    """Filter generated by a decreasing chain of bases B_1 >= B_2 >= ...

    ``beta(n, i)`` enumerates the i-th smallest element of B_n.  The chain is
    supplied by the caller; decrease is checked by tests, not at runtime.
    """

    kind = "base"

    def __init__(self, beta: Callable[[int, int], int], name: str = "base"):
        self.beta = beta
        self.name = name

    def describe(self) -> dict:
        return {"kind": self.kind, "name": self.name}


@dataclass(frozen=True)
class NonRareWitnessFilter(FilterHandle):
    """A filter that is provably not rare for its own partition.

    Base set U_m collects the two smallest elements of every block of index
    >= m.  Intersections of bases are bases again, and every member (a
    superset of some U_m up to finite error) meets cofinitely many blocks in
    at least 2 points, which is exactly the witness the non-rare branch needs.
    """

    kind = "nonrare"
    partition: Partition = field(default_factory=lambda: UniformPartition(3))

    def __post_init__(self):
        p = self.partition
        if isinstance(p, UniformPartition):
            if p.block_size < 3:
                raise SpecParseError("nonrare witness blocks must have size >= 3")
        else:
            if any(len(b) < 3 for b in p.blocks()):
                raise SpecParseError("nonrare witness blocks must have size >= 3")

    def base_element(self, m: int, k: int) -> int:
        """k-th smallest element of U_m."""
        block = m + (k - 1) // 2
        lo, _hi = self.partition.block_bounds(block)  # may raise OutOfRangeError
        return lo + (k - 1) % 2

    def describe(self) -> dict:
        return {"kind": self.kind, "partition": self.partition.describe()}


class RareOracleFilter(FilterHandle):
    """Selector oracle standing in for a rare filter.

    Genuine rare filters are not finitely representable, so rareness is
    modeled by an oracle that, for any partition into finite blocks, issues a
    selector and *asserts* it (and any registered derived set) to be a filter
    member.  ``prefix_status`` reports WITNESSED only for sets the oracle has
    issued; an issuance registry is therefore part of the handle.
    """

    kind = "rare-oracle"

    def __init__(self, rule: str = "leftmost"):
        if rule != "leftmost":
            raise SpecParseError(f"unknown rare-oracle rule {rule!r}")
        self.rule = rule
        self._lock = threading.Lock()
        self._issued: list[SetGenerator] = []

    def register(self, gen: SetGenerator) -> SetGenerator:
        """Record a set the oracle vouches for (issued or derived from issued)."""
        with self._lock:
            self._issued.append(gen)
        return gen

    def issued(self) -> tuple[SetGenerator, ...]:
        with self._lock:
            return tuple(self._issued)

    def describe(self) -> dict:
        return {"kind": self.kind, "rule": self.rule, "issued": [g.name for g in self.issued()]}


def parse_filter_spec(spec: str) -> FilterHandle:
    """Parse "frechet" | "base:tail" | "nonrare:block=<s>" | "rare:leftmost"."""
    spec = spec.strip()
    if spec == "frechet":
        return FrechetFilter()
    if spec == "base:tail":
        return BaseGeneratedFilter(beta=lambda n, i: n + i - 1, name="base:tail")
    if spec.startswith("nonrare:block="):
        try:
            size = int(spec[len("nonrare:block=") :])
        except ValueError as exc:
            raise SpecParseError(f"bad nonrare block size in {spec!r}") from exc
        return NonRareWitnessFilter(UniformPartition(size))
    if spec.startswith("rare:"):
        return RareOracleFilter(rule=spec[len("rare:") :])
    raise SpecParseError(f"unknown filter spec {spec!r}")


# --------------------------------------------------------------------------
# prefix_status
# --------------------------------------------------------------------------


def _anchor_limit(window_top: int, anchor_divisor: int) -> int:
    # Integer arithmetic on purpose: window tops reach thousands of digits.
    return max(1, -(-window_top // anchor_divisor))


def _tail_witness_over_elements(
    base_elements: Sequence[int],
    member: frozenset,
    window_top: int,
    anchor: int,
) -> int | None:
    """Largest-bad scan over an explicit base enumeration.

    Returns the first confirmed base element t such that every base element
    in [t, window_top] lies in ``member``, provided t is early enough to
    anchor the certificate; None when no anchored tail containment exists.
    """
    last_bad = 0
    for v in reversed(base_elements):
        if v > window_top:
            continue
        if v not in member:
            last_bad = v
            break
    lo = bisect.bisect_right(base_elements, last_bad)
    if lo >= len(base_elements):
        return None
    first = base_elements[lo]
    if first > window_top or first > anchor:
        return None
    return first


def _generated_base_tail_witness(beta, n: int, member: frozenset, top: int, anchor: int) -> int | None:
    """Anchored tail containment for an enumerated base, by position.

    Locates the last base element <= top with doubling plus bisection, then
    scans downward for the largest element missing from ``member``; each clean
    step consumes a member element, so the scan is bounded by the prefix size.
    """
    if beta(n, 1) > top:
        return None
    lo_i, hi_i = 1, 2
    while hi_i < 1 << 62 and beta(n, hi_i) <= top:
        lo_i, hi_i = hi_i, hi_i * 2
    if hi_i >= 1 << 62:
        return None  # enumeration never climbed past the scan; not certifiable
    while lo_i + 1 < hi_i:  # beta(n, lo_i) <= top < beta(n, hi_i)
        mid = (lo_i + hi_i) // 2
        if beta(n, mid) <= top:
            lo_i = mid
        else:
            hi_i = mid
    count = lo_i
    bad_pos = 0
    i = count
    while i >= 1:
        if beta(n, i) not in member:
            bad_pos = i
            break
        i -= 1
    if bad_pos == count:
        return None  # nothing confirmed above the last miss
    first = beta(n, bad_pos + 1)
    if first > anchor:
        return None
    return first


def prefix_status(
    f: FilterHandle,
    s: SetPrefix,
    horizon: int | None = None,
    *,
    anchor_divisor: int = 2,
    base_limit: int = 64,
) -> PrefixStatus:
    """Three-valued membership status of a scanned prefix against a filter.

    WITNESSED means: some base set (Frechet tail, generated base, nonrare
    U_m, or oracle-issued set), restricted to a tail window of the scanned
    range, is contained in the prefix, and the first confirmed base element
    falls within the leading 1/anchor_divisor of the scan.  Certificates are
    judged over ``s.scanned_upto``; ``horizon`` may extend the nominal
    horizon but adds no information beyond the scan.
    """
    if horizon is not None and s.scanned_upto > horizon:
        raise PreconditionError("scanned_upto exceeds the stated horizon")
    top = s.scanned_upto
    if top < 1 or not s.elements:
        return COMPATIBLE
    anchor = _anchor_limit(top, anchor_divisor)
    member = s.element_set()

    if isinstance(f, FrechetFilter):
        if top not in member:
            return COMPATIBLE
        run_start = top
        idx = bisect.bisect_left(s.elements, top)
        while idx > 0 and s.elements[idx - 1] == run_start - 1:
            idx -= 1
            run_start -= 1
        if run_start <= anchor:
            return PrefixStatus(StatusState.WITNESSED, base_index=run_start, tail_start=run_start)
        return COMPATIBLE

    if isinstance(f, NonRareWitnessFilter):
        return _nonrare_status(f, s, member, top, anchor)

    if isinstance(f, BaseGeneratedFilter):
        for n in range(1, base_limit + 1):
            t = _generated_base_tail_witness(f.beta, n, member, top, anchor)
            if t is not None:
                return PrefixStatus(StatusState.WITNESSED, base_index=n, tail_start=t)
        return COMPATIBLE

    if isinstance(f, RareOracleFilter):
        for idx, gen in enumerate(f.issued(), start=1):
            if not gen.is_complete_upto(top):
                continue
            base_elems = gen.elements_upto(top)
            if not base_elems:
                continue
            t = _tail_witness_over_elements(base_elems, member, top, anchor)
            if t is not None:
                return PrefixStatus(StatusState.WITNESSED, base_index=idx, tail_start=t)
        return COMPATIBLE

    raise UnsupportedKindError(f"prefix_status does not handle kind {f.kind!r}")


def _nonrare_status(
    f: NonRareWitnessFilter,
    s: SetPrefix,
    member: frozenset,
    top: int,
    anchor: int,
) -> PrefixStatus:
    """Downward block scan for the largest missing base element.

    Each block scanned clean consumes two distinct prefix elements, so the
    loop exits after O(|prefix|) blocks no matter how large the values are.
    """
    p = f.partition
    cov = p.coverage_end
    if cov is not None and top >= cov:
        # The finite representation says nothing about base elements beyond
        # its coverage, so no certificate can reach the end of the scan.
        return COMPATIBLE
    last_bad = 0
    block = p.block_of(top)
    while block >= 1:
        lo, _hi = p.block_bounds(block)
        for u in (lo + 1, lo):  # two smallest, scanned descending
            if u <= top and u not in member:
                last_bad = u
                break
        if last_bad:
            break
        block -= 1
    # first base element above the last miss; it may sit in the same block
    if last_bad == 0:
        first = p.block_bounds(1)[0]
    else:
        j = p.block_of(last_bad)
        lo_j = p.block_bounds(j)[0]
        if last_bad == lo_j:
            first = lo_j + 1
        else:
            num = p.num_blocks
            if num is not None and j + 1 > num:
                return COMPATIBLE
            first = p.block_bounds(j + 1)[0]
    if first > top or first > anchor:
        return COMPATIBLE
    return PrefixStatus(StatusState.WITNESSED, base_index=p.block_of(first), tail_start=first)


# --------------------------------------------------------------------------
# enum_base / rare_selector / block_hit_counts
# --------------------------------------------------------------------------


def enum_base(f: FilterHandle, n: int, k: int) -> int:
    """k-th smallest element of the n-th base set of a concrete filter."""
    if n < 1 or k < 1:
        raise PreconditionError("base index and position are 1-based")
    if isinstance(f, FrechetFilter):
        return n + k - 1
    if isinstance(f, BaseGeneratedFilter):
        return f.beta(n, k)
    if isinstance(f, NonRareWitnessFilter):
        return f.base_element(n, k)
    raise UnsupportedKindError(f"enum_base is not defined for kind {f.kind!r}")


def _leftmost_pick(
    block_lo: int,
    block_hi: int,
    avoid: frozenset,
    within: tuple[int, ...] | None,
) -> int | None:
    if within is None:
        for v in range(block_lo, block_hi):
            if v not in avoid:
                return v
        return None
    i = bisect.bisect_left(within, block_lo)
    while i < len(within) and within[i] < block_hi:
        if within[i] not in avoid:
            return within[i]
        i += 1
    return None


def rare_selector(
    f: FilterHandle,
    p: Partition,
    avoid: Sequence[int] = (),
    *,
    within: Sequence[int] | None = None,
    on_empty: str = "error",
    name: str | None = None,
) -> SetGenerator:
    """Issue a selector of ``p`` (at most one element per block) from the oracle.

    The stock rule picks the leftmost element of each block that is neither
    in ``avoid`` nor outside ``within``.  ``within`` restricts selection to a
    previously issued member: a genuine rare filter can always intersect a
    selector with a member and stay in the filter, and derived constructions
    need that coherence.  ``on_empty`` decides whether an exhausted block is
    an error (default) or is skipped, leaving the block unselected.
    """
    if not isinstance(f, RareOracleFilter):
        raise UnsupportedKindError("rare_selector requires a rare-oracle filter")
    if on_empty not in ("error", "skip"):
        raise PreconditionError(f"bad on_empty {on_empty!r}")
    avoid_set = frozenset(avoid)
    within_t = tuple(within) if within is not None else None
    label = name or f"selector[{p.describe()['kind']}]#{len(f.issued()) + 1}"

    if isinstance(p, IntervalPartition) or within_t is not None:
        # Materialize: selection range is bounded by the partition coverage
        # or by the supplied member.
        if isinstance(p, IntervalPartition):
            block_range = range(1, p.num_blocks + 1)
            complete = p.coverage_end - 1
        else:
            if not within_t:
                raise NoSelectorError("cannot select from an empty member")
            complete = within_t[-1]
            block_range = range(1, p.block_of(complete) + 1)
        picks: list[int] = []
        for b in block_range:
            lo, hi = p.block_bounds(b)
            v = _leftmost_pick(lo, hi, avoid_set, within_t)
            if v is None:
                if on_empty == "error":
                    raise NoSelectorError(f"block {b} of {p.describe()} has no eligible element")
                continue
            picks.append(v)
        gen = SetGenerator(label, elements=picks, complete_upto=complete)
        return f.register(gen)

    # Uniform partition, unrestricted: leftmost is the block minimum except in
    # the finitely many blocks the avoid set touches, so picks beyond those
    # are closed-form.  Exhaustion can only happen in a touched block; check
    # those eagerly.
    size = p.block_size
    touched = sorted({p.block_of(a) for a in avoid_set if a >= 1})
    last_touched = touched[-1] if touched else 0
    prefix_picks: list[int] = []
    for b in range(1, last_touched + 1):
        lo, hi = p.block_bounds(b)
        v = _leftmost_pick(lo, hi, avoid_set, None)
        if v is None:
            if on_empty == "error":
                raise NoSelectorError(f"block {b} of {p.describe()} has no eligible element")
            continue
        prefix_picks.append(v)
    n_prefix = len(prefix_picks)

    def element(i: int) -> int:
        if i <= n_prefix:
            return prefix_picks[i - 1]
        return (last_touched + (i - n_prefix) - 1) * size + 1

    gen = SetGenerator(label, element_fn=element)
    return f.register(gen)


def block_hit_counts(s: SetPrefix, p: Partition, *, block_cap: int = 100_000) -> list[tuple[int, int]]:
    """Per-block cardinalities |s ∩ block| for blocks starting within the scan."""
    if s.scanned_upto < 1:
        return []
    last_block = p.block_of(min(s.scanned_upto, (p.coverage_end - 1) if p.coverage_end else s.scanned_upto))
    if p.coverage_end is not None:
        last_block = min(last_block, p.num_blocks)
    if last_block > block_cap:
        raise ResourceCapError(
            f"{last_block} blocks within the scan; use nonzero_block_hits for sparse counting"
        )
    counts = [0] * last_block
    for v in s.elements:
        b = p.block_of(v)
        if b <= last_block:
            counts[b - 1] += 1
    return [(i + 1, c) for i, c in enumerate(counts)]


def nonzero_block_hits(s: SetPrefix, p: Partition) -> dict[int, int]:
    """Sparse variant of block_hit_counts; scales to astronomically large values."""
    out: dict[int, int] = {}
    for v in s.elements:
        b = p.block_of(v)
        out[b] = out.get(b, 0) + 1
    return out


def nonmembership_base(f: FilterHandle, k: int, *, base_limit: int = 2048, enum_cap: int = 10_000) -> int | None:
    """A base index n with k outside B_n, if one is found (non-principality probe)."""
    if isinstance(f, FrechetFilter):
        return k + 1
    if isinstance(f, NonRareWitnessFilter):
        cov = f.partition.coverage_end
        if cov is not None and k >= cov:
            return None
        return f.partition.block_of(k) + 1
    if isinstance(f, BaseGeneratedFilter):
        for n in range(1, base_limit + 1):
            gen = SetGenerator(f"B_{n}", element_fn=lambda i, n=n: f.beta(n, i))
            try:
                if k not in gen.elements_upto(k, cap=enum_cap):
                    return n
            except ResourceCapError:
                continue
        return None
    return None  # oracle membership is asserted, not enumerable
