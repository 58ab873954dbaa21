"""Desk-scale checkers for the bounding, escape, and rareness conditions.

Every checker here is one-sided: it certifies finite windows and labels the
asymptotic claim it approximates.  Concrete countably-based filters are
meager, so the escape checker must come back empty-handed on them; only the
rare-selector oracle may produce selector evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import PreconditionError, ResourceCapError, UnsupportedKindError
from .filters import (
    BaseGeneratedFilter,
    FilterHandle,
    FrechetFilter,
    NonRareWitnessFilter,
    RareOracleFilter,
    enum_base,
    rare_selector,
)
from .model import Partition


@dataclass(frozen=True)
class BaseBoundReport:
    base_index: int
    threshold: int | None  # least K with enum < g on [K, scan]; None = fails
    first_failure: int | None  # a k with enum(k) >= g(k), for diagnostics

    @property
    def passed(self) -> bool:
        return self.threshold is not None

    def to_json(self) -> dict:
        return {
            "base_index": self.base_index,
            "threshold": self.threshold,
            "passed": self.passed,
            "first_failure": self.first_failure,
        }


@dataclass(frozen=True)
class BoundednessReport:
    """Per-base eventual-domination results for a candidate bounding function."""

    g_label: str
    scan: int
    per_base: tuple[BaseBoundReport, ...]
    all_pass: bool

    def base(self, n: int) -> BaseBoundReport:
        return self.per_base[n - self.per_base[0].base_index]

    def to_json(self) -> dict:
        return {
            "kind": "boundedness-report",
            "g": self.g_label,
            "scan": self.scan,
            "per_base": [r.to_json() for r in self.per_base],
            "all_pass": self.all_pass,
        }


def check_enum_bounded(
    f: FilterHandle,
    g: Callable[[int], int],
    bases: Sequence[int],
    scan: int,
    *,
    g_label: str = "g",
) -> BoundednessReport:
    """Does g eventually dominate the enumeration of every tested base set?

    Supersets of a base set have pointwise smaller enumerations, so for
    base-generated filters the bases are the worst case: passing here means g
    dominates the enumeration of every member above those bases, as far as
    the scan can see.
    """
    if isinstance(f, RareOracleFilter):
        raise UnsupportedKindError("the rare oracle has no enumerable bases")
    if scan < 1:
        raise PreconditionError("scan must be >= 1")
    reports = []
    for n in bases:
        last_fail = 0
        first_fail = None
        for k in range(1, scan + 1):
            if enum_base(f, n, k) >= g(k):
                last_fail = k
                if first_fail is None:
                    first_fail = k
        if last_fail >= scan:
            reports.append(BaseBoundReport(n, None, first_fail))
        else:
            reports.append(BaseBoundReport(n, last_fail + 1, first_fail))
    return BoundednessReport(
        g_label=g_label,
        scan=scan,
        per_base=tuple(reports),
        all_pass=all(r.passed for r in reports),
    )


@dataclass(frozen=True)
class EscapeReport:
    """Outcome of searching members for one disjoint from many blocks.

    Blocks before a member's least element are skipped: any tail set
    trivially misses an initial segment of blocks, and the escape condition
    is about what happens past the member's own support.
    """

    found: bool
    member: str | None
    disjoint_blocks: tuple[int, ...]
    threshold: int
    scan: int
    searched: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "kind": "escape-report",
            "found": self.found,
            "member": self.member,
            "disjoint_blocks": list(self.disjoint_blocks),
            "threshold": self.threshold,
            "scan": self.scan,
            "searched": list(self.searched),
        }


def _member_elements(f: FilterHandle, n: int, scan: int, cap: int = 500_000) -> list[int]:
    out = []
    k = 1
    while k <= cap:
        v = enum_base(f, n, k)
        if v > scan:
            return out
        out.append(v)
        k += 1
    raise ResourceCapError(f"base {n} has more than {cap} elements below {scan}")


def _disjoint_blocks_past_support(elements: list[int], p: Partition, scan: int) -> list[int]:
    if not elements:
        return []
    start_block = p.block_of(elements[0]) + 1
    hit = {p.block_of(v) for v in elements}
    last_block = p.block_of(scan)
    if p.block_bounds(last_block)[1] - 1 > scan:
        last_block -= 1  # only blocks fully inside the scan window count
    return [b for b in range(start_block, last_block + 1) if b not in hit]


def _require_coverage(p: Partition, scan: int) -> None:
    if p.coverage_end is not None and p.coverage_end <= scan:
        raise PreconditionError(
            f"partition covers [1, {p.coverage_end}) but the scan reaches {scan}"
        )


def check_partition_escape(
    f: FilterHandle,
    p: Partition,
    threshold: int,
    scan: int,
    *,
    base_limit: int = 32,
) -> EscapeReport:
    """Search for a member disjoint from at least ``threshold`` blocks in the scan.

    Concrete countably-based filters always return none-found (they are
    meager); the rare oracle answers from its issued sets and the stock
    leftmost selector meets every block, so it returns none-found too.
    """
    if threshold < 1 or scan < 1:
        raise PreconditionError("threshold and scan must be >= 1")
    _require_coverage(p, scan)
    searched: list[str] = []
    if isinstance(f, RareOracleFilter):
        for idx, gen in enumerate(f.issued(), start=1):
            if not gen.is_complete_upto(scan):
                continue
            name = f"issued:{idx}:{gen.name}"
            searched.append(name)
            disj = _disjoint_blocks_past_support(gen.elements_upto(scan), p, scan)
            if len(disj) >= threshold:
                return EscapeReport(True, name, tuple(disj[:threshold]), threshold, scan, tuple(searched))
        probe = rare_selector(f, p, name="escape-probe")
        searched.append(f"issued:{len(f.issued())}:{probe.name}")
        disj = _disjoint_blocks_past_support(probe.elements_upto(scan), p, scan)
        if len(disj) >= threshold:
            return EscapeReport(True, probe.name, tuple(disj[:threshold]), threshold, scan, tuple(searched))
        return EscapeReport(False, None, (), threshold, scan, tuple(searched))
    for n in range(1, base_limit + 1):
        name = f"base:{n}"
        searched.append(name)
        disj = _disjoint_blocks_past_support(_member_elements(f, n, scan), p, scan)
        if len(disj) >= threshold:
            return EscapeReport(True, name, tuple(disj[:threshold]), threshold, scan, tuple(searched))
    return EscapeReport(False, None, (), threshold, scan, tuple(searched))


@dataclass(frozen=True)
class RarenessReport:
    """Either selector evidence (oracle) or an obstruction record (concrete).

    The obstruction record says: every membership certificate available
    within the scan (a base set over a tail window) hits some block at least
    twice, so nothing certified avoids the partition the way a selector must.
    """

    kind_found: str  # "selector" | "obstruction"
    selector_elements: tuple[int, ...] | None
    selector_ok: bool | None
    obstructions: tuple[dict, ...]
    scan: int

    def to_json(self) -> dict:
        return {
            "kind": "rareness-report",
            "result": self.kind_found,
            "selector_elements": None if self.selector_elements is None else list(self.selector_elements),
            "selector_ok": self.selector_ok,
            "obstructions": list(self.obstructions),
            "scan": self.scan,
        }


def check_rare_at_horizon(
    f: FilterHandle,
    p: Partition,
    scan: int,
    *,
    base_limit: int = 32,
) -> RarenessReport:
    """Selector evidence from the oracle, or per-base double-hit obstructions.

    For concrete filters the certificate sets are the base tails
    B_n ∩ [t, scan] anchored in the first half of the scan; the checker
    verifies each of them hits some block twice, for every tail start that
    changes the certificate.
    """
    if scan < 1:
        raise PreconditionError("scan must be >= 1")
    _require_coverage(p, scan)
    if isinstance(f, RareOracleFilter):
        sel = rare_selector(f, p, name="rareness-probe")
        elements = sel.elements_upto(scan)
        per_block: dict[int, int] = {}
        for v in elements:
            b = p.block_of(v)
            per_block[b] = per_block.get(b, 0) + 1
        ok = all(c <= 1 for c in per_block.values())
        return RarenessReport("selector", tuple(elements), ok, (), scan)

    anchor = max(1, -(-scan // 2))
    obstructions = []
    for n in range(1, base_limit + 1):
        elements = _member_elements(f, n, scan)
        anchored = [v for v in elements if v <= anchor]
        all_doubled = True
        example = None
        # distinct certificates correspond to tail starts at each element
        for start_idx in range(len(anchored)):
            tail = elements[start_idx:]
            seen: dict[int, int] = {}
            doubled = None
            for v in tail:
                b = p.block_of(v)
                seen[b] = seen.get(b, 0) + 1
                if seen[b] >= 2:
                    doubled = b
                    break
            if doubled is None:
                all_doubled = False
                example = {"tail_start": tail[0] if tail else None, "double_hit_block": None}
                break
            if example is None:
                example = {"tail_start": tail[0], "double_hit_block": doubled}
        obstructions.append(
            {"base_index": n, "all_certificates_double_hit": all_doubled, "example": example}
        )
    return RarenessReport("obstruction", None, None, tuple(obstructions), scan)
