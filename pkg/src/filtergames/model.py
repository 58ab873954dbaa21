"""Shared vocabulary: moves, transcripts, interval partitions, set prefixes.

Indexing is 1-based throughout: the integers in play are {1, 2, 3, ...} and
block/inning numbering starts at 1.  All values are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .errors import OutOfRangeError, PreconditionError, SpecParseError


def is_valid_move(value: object) -> bool:
    """A move is a positive integer (bools are not moves)."""
    return isinstance(value, int) and not isinstance(value, bool) and value >= 1


@dataclass(frozen=True)
class Inning:
    k: int  # inning index, 1-based
    m: int  # ONE's move
    n: int  # TWO's move


@dataclass(frozen=True)
class Transcript:
    """A finite alternating record of a play, always relative to a horizon.

    Verdicts rendered from a transcript are statements "at horizon N", never
    absolute: the horizon is carried explicitly so truncated win conditions
    stay honest about what was actually examined.
    """

    game: str  # "g1" | "g2"
    horizon: int
    innings: tuple[Inning, ...]

    @classmethod
    def from_moves(
        cls,
        game: str,
        one_moves: Sequence[int],
        two_moves: Sequence[int],
        horizon: int | None = None,
    ) -> "Transcript":
        if len(one_moves) != len(two_moves):
            raise PreconditionError(
                f"move lists differ in length: {len(one_moves)} vs {len(two_moves)}"
            )
        innings = tuple(
            Inning(k=i + 1, m=m, n=n) for i, (m, n) in enumerate(zip(one_moves, two_moves))
        )
        return cls(game=game, horizon=horizon if horizon is not None else len(innings), innings=innings)

    @property
    def one_moves(self) -> tuple[int, ...]:
        return tuple(i.m for i in self.innings)

    @property
    def two_moves(self) -> tuple[int, ...]:
        return tuple(i.n for i in self.innings)

    def to_json(self, verdict: object = None) -> dict:
        return {
            "game": self.game,
            "horizon": self.horizon,
            "innings": [{"k": i.k, "m": i.m, "n": i.n} for i in self.innings],
            "verdict": verdict,
        }


def validate_transcript(t: Transcript) -> str | None:
    """Return None when the transcript is well-formed, else name the first violation."""
    if t.game not in ("g1", "g2"):
        return f"unknown game tag {t.game!r}"
    if not is_valid_move(t.horizon) and t.horizon != 0:
        return "horizon < 1"
    if len(t.innings) > t.horizon:
        return "more innings than horizon"
    for pos, inning in enumerate(t.innings, start=1):
        if inning.k != pos:
            return f"inning index gap: expected {pos}, found {inning.k}"
        if not is_valid_move(inning.m):
            return f"move value < 1 (ONE at inning {pos})"
        if not is_valid_move(inning.n):
            return f"move value < 1 (TWO at inning {pos})"
    return None


@dataclass(frozen=True)
class IntervalPartition:
    """Consecutive finite blocks of [1, b_last): block n is [b_{n-1}, b_n).

    Represented by its strictly increasing breakpoints (b_0 = 1 < b_1 < ...).
    Any partition of an initial segment into finite sets can be relabeled into
    this form, and every partition used here is already an interval partition.
    """

    breakpoints: tuple[int, ...]

    def __post_init__(self):
        bp = self.breakpoints
        if len(bp) < 2:
            raise SpecParseError("an interval partition needs at least one block")
        if bp[0] != 1:
            raise SpecParseError("breakpoints must start at 1")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise SpecParseError("breakpoints must be strictly increasing")

    @classmethod
    def from_block_sizes(cls, sizes: Sequence[int]) -> "IntervalPartition":
        bp = [1]
        for s in sizes:
            if s < 1:
                raise SpecParseError("block sizes must be >= 1")
            bp.append(bp[-1] + s)
        return cls(tuple(bp))

    @property
    def num_blocks(self) -> int:
        return len(self.breakpoints) - 1

    @property
    def coverage_end(self) -> int:
        """First integer NOT covered (exclusive end of the last block)."""
        return self.breakpoints[-1]

    def block_of(self, k: int) -> int:
        if k < 1 or k >= self.coverage_end:
            raise OutOfRangeError(f"{k} is outside partition coverage [1, {self.coverage_end})")
        return bisect.bisect_right(self.breakpoints, k)

    def block_bounds(self, n: int) -> tuple[int, int]:
        """Half-open bounds [lo, hi) of block n."""
        if n < 1 or n > self.num_blocks:
            raise OutOfRangeError(f"no block {n}; partition has {self.num_blocks} blocks")
        return self.breakpoints[n - 1], self.breakpoints[n]

    def block_elements(self, n: int) -> range:
        lo, hi = self.block_bounds(n)
        return range(lo, hi)

    def max_upto(self, j: int) -> int:
        """Largest element in the union of blocks 1..j."""
        if j < 1 or j > self.num_blocks:
            raise OutOfRangeError(f"union of blocks 1..{j} exceeds partition coverage")
        return self.breakpoints[j] - 1

    def blocks(self) -> Iterator[range]:
        for n in range(1, self.num_blocks + 1):
            yield self.block_elements(n)

    def describe(self) -> dict:
        return {"kind": "breakpoints", "breakpoints": list(self.breakpoints)}


@dataclass(frozen=True)
class UniformPartition:
    """Unbounded partition of all of [1, infinity) into blocks of one size.

    Block n is [(n-1)s + 1, ns].  Everything is closed-form, so lookups stay
    cheap no matter how large the queried values grow.
    """

    block_size: int

    def __post_init__(self):
        if self.block_size < 1:
            raise SpecParseError("block size must be >= 1")

    @property
    def num_blocks(self) -> None:
        return None  # unbounded

    @property
    def coverage_end(self) -> None:
        return None  # unbounded

    def block_of(self, k: int) -> int:
        if k < 1:
            raise OutOfRangeError(f"{k} is below 1")
        return (k - 1) // self.block_size + 1

    def block_bounds(self, n: int) -> tuple[int, int]:
        if n < 1:
            raise OutOfRangeError(f"no block {n}")
        s = self.block_size
        return (n - 1) * s + 1, n * s + 1

    def block_elements(self, n: int) -> range:
        lo, hi = self.block_bounds(n)
        return range(lo, hi)

    def max_upto(self, j: int) -> int:
        if j < 1:
            raise OutOfRangeError("union of zero blocks has no maximum")
        return j * self.block_size

    def describe(self) -> dict:
        return {"kind": "uniform", "block_size": self.block_size}


Partition = Union[IntervalPartition, UniformPartition]


def parse_partition_spec(spec: str) -> Partition:
    """Parse "size=3" (uniform), "sizes=2,2,3" or "breaks=1,3,5,9"."""
    spec = spec.strip()
    try:
        if spec.startswith("size="):
            return UniformPartition(int(spec[5:]))
        if spec.startswith("sizes="):
            sizes = [int(x) for x in spec[6:].split(",") if x]
            return IntervalPartition.from_block_sizes(sizes)
        if spec.startswith("breaks="):
            bps = [int(x) for x in spec[7:].split(",") if x]
            return IntervalPartition(tuple(bps))
    except SpecParseError:
        raise
    except ValueError as exc:
        raise SpecParseError(f"bad partition spec {spec!r}: {exc}") from exc
    raise SpecParseError(f"bad partition spec {spec!r} (want size=, sizes= or breaks=)")


@dataclass(frozen=True)
class SetPrefix:
    """The finite, scanned part of a set of positive integers.

    ``elements`` is strictly increasing; ``scanned_upto`` says how far the set
    has been examined, so absence of a value <= scanned_upto is meaningful
    while nothing is known beyond it.
    """

    elements: tuple[int, ...]
    scanned_upto: int

    def __post_init__(self):
        els = self.elements
        if any(a >= b for a, b in zip(els, els[1:])):
            raise SpecParseError("prefix elements must be strictly increasing")
        if els and els[0] < 1:
            raise SpecParseError("prefix elements must be >= 1")
        if els and els[-1] > self.scanned_upto:
            raise SpecParseError("prefix elements exceed scanned_upto")
        if self.scanned_upto < 0:
            raise SpecParseError("scanned_upto must be >= 0")

    @classmethod
    def from_values(cls, values: Sequence[int], scanned_upto: int | None = None) -> "SetPrefix":
        els = tuple(sorted(set(values)))
        if scanned_upto is None:
            scanned_upto = els[-1] if els else 0
        return cls(elements=els, scanned_upto=scanned_upto)

    def element_set(self) -> frozenset:
        return frozenset(self.elements)
