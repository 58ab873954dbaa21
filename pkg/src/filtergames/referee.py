"""Play games to a finite horizon and render truncated verdicts.

Both games share the same protocol: in inning k ONE plays m_k, then TWO
answers n_k.  They differ only in what TWO must achieve over a whole play:

* game g1 -- TWO's moves must be strictly increasing, must exceed ONE's move
  in infinitely many innings, and must enumerate a filter member;
* game g2 -- TWO's moves must eventually dominate ONE's (no monotonicity is
  imposed), and the set of values TWO played must be a filter member.

"Infinitely many" and "eventually" have no canonical finite truncation, so
verdicts are rendered at a horizon with configurable thresholds: beating in
at least floor(N/2) innings, and domination holding from some index
<= ceil(N/2) on.  The winning constructions clear any linear-rate threshold
while defeated plays stall at constants, so the default fractions separate
them cleanly.  Verdicts are diagnostic records rather than a bare winner bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import FilterGameError, PreconditionError
from .filters import FilterHandle, PrefixStatus, prefix_status
from .model import SetPrefix, Transcript, validate_transcript
from .strategies import Strategy


def play(game: str, one: Strategy, two: Strategy, horizon: int) -> Transcript:
    """Run ``horizon`` innings of one strategy against another.

    Deterministic: both strategies are pure functions of the opponent's
    history.  Strategy failures are re-raised with the inning attached.
    """
    if game not in ("g1", "g2"):
        raise PreconditionError(f"game must be g1 or g2, not {game!r}")
    if horizon < 1:
        raise PreconditionError("horizon must be >= 1")
    one_moves: list[int] = []
    two_moves: list[int] = []
    one_state = one.initial_state  # consumes TWO's moves
    two_state = two.initial_state  # consumes ONE's moves
    for k in range(1, horizon + 1):
        try:
            m = one.value(one_state)
            two_state = two.advance(two_state, m)
            n = two.value(two_state)
            one_state = one.advance(one_state, n)
        except FilterGameError as exc:
            raise type(exc)(f"inning {k}: {exc}") from exc
        one_moves.append(m)
        two_moves.append(n)
    return Transcript.from_moves(game, one_moves, two_moves, horizon)


def domination_index(one_moves: Sequence[int], two_moves: Sequence[int]) -> int | None:
    """Least d with m_k < n_k for every k in [d, len]; None when even the last inning fails."""
    if not one_moves:
        return None
    d = None
    for k in range(len(one_moves), 0, -1):
        if one_moves[k - 1] < two_moves[k - 1]:
            d = k
        else:
            break
    return d


@dataclass(frozen=True)
class G1Verdict:
    increasing_ok: bool
    beat_count: int
    status: PrefixStatus
    two_winning_at_horizon: bool

    def to_json(self) -> dict:
        return {
            "increasing_ok": self.increasing_ok,
            "beat_count": self.beat_count,
            "status": self.status.to_json(),
            "two_winning": self.two_winning_at_horizon,
        }


@dataclass(frozen=True)
class G2Verdict:
    domination_index: int | None
    status: PrefixStatus
    two_winning_at_horizon: bool

    def to_json(self) -> dict:
        return {
            "domination_index": self.domination_index,
            "status": self.status.to_json(),
            "two_winning": self.two_winning_at_horizon,
        }


def _two_set_prefix(t: Transcript) -> SetPrefix:
    return SetPrefix.from_values(t.two_moves)


def judge_g1(t: Transcript, f: FilterHandle, *, beat_threshold: int | None = None) -> G1Verdict:
    """Verdict for game g1 at the transcript's horizon.

    TWO is winning-at-horizon when the moves are strictly increasing, the
    beat count reaches the threshold (default floor(N/2)), and the played set
    carries a membership certificate.
    """
    bad = validate_transcript(t)
    if bad is not None:
        raise PreconditionError(f"invalid transcript: {bad}")
    ns = t.two_moves
    increasing_ok = all(a < b for a, b in zip(ns, ns[1:]))
    beat_count = sum(1 for i in t.innings if i.m < i.n)
    status = prefix_status(f, _two_set_prefix(t))
    tau = beat_threshold if beat_threshold is not None else t.horizon // 2
    winning = increasing_ok and status.witnessed and beat_count >= tau
    return G1Verdict(increasing_ok, beat_count, status, winning)


def judge_g2(t: Transcript, f: FilterHandle, *, domination_threshold: int | None = None) -> G2Verdict:
    """Verdict for game g2 at the transcript's horizon.

    No monotonicity is demanded of TWO here; the set judged for membership is
    the set of distinct values TWO played.  TWO is winning-at-horizon when
    domination holds from some inning <= the threshold (default ceil(N/2))
    and the played set carries a membership certificate.
    """
    bad = validate_transcript(t)
    if bad is not None:
        raise PreconditionError(f"invalid transcript: {bad}")
    d = domination_index(t.one_moves, t.two_moves)
    status = prefix_status(f, _two_set_prefix(t))
    cutoff = domination_threshold if domination_threshold is not None else (t.horizon + 1) // 2
    winning = d is not None and d <= cutoff and status.witnessed
    return G2Verdict(d, status, winning)
