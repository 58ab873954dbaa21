"""Strategies: pure maps from the opponent's move history to the next move.

A strategy sees only the opponent's history; its own moves are reconstructible
from the history plus the strategy itself, which matches how every
construction in this package consumes them.

Besides ``next(history)`` a strategy carries optional fast paths:

* an incremental state protocol (``initial_state`` / ``advance`` / ``value``)
  so referees and searches replay long histories in O(1) per move;
* ``bound_fn(n)`` -- the exact maximum of the strategy over all strictly
  increasing tuples with entries <= n, including the empty tuple (the
  exhaustive fallback enumerates 2**n tuples and is capped);
* ``bound_sum_fn(n)`` -- sum of bound_fn(1..n), which the growth-tower
  constructions need at arguments far beyond anything enumerable;
* ``window_fn(state, ys)`` -- vectorized "value after appending y" over a
  numpy array of candidate moves, used by the claim search.

Fast paths are cross-checked against the reference paths by the test suite.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, replace
from typing import Any, Callable, Sequence

import numpy as np

from .errors import PreconditionError, ResourceCapError, SpecParseError
from .model import Partition, UniformPartition, parse_partition_spec

EXHAUSTIVE_BOUND_CAP = 20
_WINDOW_SAFE_LIMIT = 1 << 60  # beyond this, window math falls back to scalars


@dataclass(frozen=True)
class Strategy:
    name: str
    initial_state: Any
    advance_fn: Callable[[Any, int], Any]
    value_fn: Callable[[Any], int]
    bound_fn: Callable[[int], int] | None = None
    bound_sum_fn: Callable[[int], int] | None = None
    window_fn: Callable[[Any, np.ndarray], np.ndarray] | None = None
    normalizations: tuple[str, ...] = ()

    def state_after(self, history: Sequence[int]) -> Any:
        st = self.initial_state
        for mv in history:
            st = self.advance_fn(st, mv)
        return st

    def advance(self, state: Any, move: int) -> Any:
        return self.advance_fn(state, move)

    def value(self, state: Any) -> int:
        return self.value_fn(state)

    def next(self, history: Sequence[int]) -> int:
        """The move played after seeing ``history`` from the opponent."""
        return self.value_fn(self.state_after(history))

    def value_after(self, state: Any, move: int) -> int:
        return self.value_fn(self.advance_fn(state, move))

    def window_after(self, state: Any, ys: np.ndarray) -> np.ndarray | None:
        """Vectorized value_after over candidate appended moves, if supported."""
        if self.window_fn is None:
            return None
        return self.window_fn(state, ys)

    def describe(self) -> dict:
        return {"name": self.name, "normalizations": list(self.normalizations)}


# --------------------------------------------------------------------------
# bound_over
# --------------------------------------------------------------------------


def exhaustive_bound(s: Strategy, n: int) -> int:
    """Reference maximum over all strictly increasing tuples with entries <= n."""
    best = s.next(())
    for r in range(1, n + 1):
        for t in itertools.combinations(range(1, n + 1), r):
            v = s.next(t)
            if v > best:
                best = v
    return best


def bound_over(s: Strategy, n: int, *, cap: int = EXHAUSTIVE_BOUND_CAP, prefer_fast: bool = True) -> int:
    """Exact max of ``s`` over strictly increasing tuples with entries <= n.

    The empty tuple always participates, so bound_over(s, 0) is the value on
    the empty history.  Without a declared fast path the enumeration is
    exponential and refuses to run past ``cap``.
    """
    if n < 0:
        raise PreconditionError("bound_over needs n >= 0")
    if prefer_fast and s.bound_fn is not None:
        return s.bound_fn(n)
    if n > cap:
        raise ResourceCapError(
            f"bound_over({s.name!r}, {n}) has no fast path and exceeds the exhaustive cap {cap}"
        )
    return exhaustive_bound(s, n)


def bound_prefix_sum(s: Strategy, n: int, *, cap: int = EXHAUSTIVE_BOUND_CAP, prefer_fast: bool = True) -> int:
    """Sum of bound_over(s, k) for k = 1..n."""
    if n < 0:
        raise PreconditionError("bound_prefix_sum needs n >= 0")
    if prefer_fast and s.bound_sum_fn is not None:
        return s.bound_sum_fn(n)
    return sum(bound_over(s, k, cap=cap, prefer_fast=prefer_fast) for k in range(1, n + 1))


# --------------------------------------------------------------------------
# stock strategies
# --------------------------------------------------------------------------


def _offset(c: int) -> Strategy:
    # last opponent move + c; c on the empty history
    return Strategy(
        name=f"offset:{c}",
        initial_state=None,
        advance_fn=lambda st, mv: mv,
        value_fn=lambda st: c if st is None else st + c,
        bound_fn=lambda n: c if n == 0 else n + c,
        bound_sum_fn=lambda n: n * (n + 1) // 2 + c * n,
        window_fn=lambda st, ys: ys + c,
    )


def _copy() -> Strategy:
    return Strategy(
        name="copy",
        initial_state=None,
        advance_fn=lambda st, mv: mv,
        value_fn=lambda st: 1 if st is None else st,
        bound_fn=lambda n: max(n, 1),
        bound_sum_fn=lambda n: n * (n + 1) // 2,
        window_fn=lambda st, ys: ys,
    )


def _maxplus(c: int) -> Strategy:
    # max(history) + c; state is the running maximum
    return Strategy(
        name=f"maxplus:{c}",
        initial_state=0,
        advance_fn=lambda mx, mv: mv if mv > mx else mx,
        value_fn=lambda mx: mx + c,
        bound_fn=lambda n: n + c,
        bound_sum_fn=lambda n: n * (n + 1) // 2 + c * n,
        window_fn=lambda mx, ys: np.maximum(mx, ys) + c,
    )


def _maxinning() -> Strategy:
    # max(history) + inning index (= history length); 1 on the empty history
    return Strategy(
        name="maxinning",
        initial_state=(0, 0),
        advance_fn=lambda st, mv: (mv if mv > st[0] else st[0], st[1] + 1),
        value_fn=lambda st: st[0] + st[1] if st[1] else 1,
        bound_fn=lambda n: 2 * n if n else 1,
        bound_sum_fn=lambda n: n * (n + 1),
        window_fn=lambda st, ys: np.maximum(st[0], ys) + (st[1] + 1),
    )


_LINEAR_RE = re.compile(r"^(\d*)k(?:\+(\d+))?$")


def parse_linear_fn(spec: str) -> tuple[int, int]:
    """Parse "2k", "k", "k+3", "3k+1" into (a, b) meaning a*k + b."""
    m = _LINEAR_RE.match(spec.replace(" ", ""))
    if not m:
        raise SpecParseError(f"bad linear function spec {spec!r} (want e.g. 2k, k+3, 3k+1)")
    a = int(m.group(1)) if m.group(1) else 1
    b = int(m.group(2)) if m.group(2) else 0
    if a < 1:
        raise SpecParseError("linear coefficient must be >= 1 (function must increase)")
    return a, b


def one_dominator(g: Callable[[int], int], name: str = "dominator") -> Strategy:
    """ONE plays g(k) at inning k, ignoring the opponent entirely.

    With g growing fast enough to escape the enumeration functions of the
    filter's members, this is the winning strategy the bounding
    characterization hands to ONE.  g must be strictly increasing on the
    queried range.
    """
    return Strategy(
        name=name,
        initial_state=0,
        advance_fn=lambda ln, mv: ln + 1,
        value_fn=lambda ln: g(ln + 1),
        bound_fn=lambda n: g(n + 1),  # g increasing: longest tuple dominates
        window_fn=None,
    )


def _gplay(a: int, b: int, spec: str) -> Strategy:
    g = lambda k: a * k + b
    base = one_dominator(g, name=f"gplay:{spec}")
    return replace(
        base,
        bound_sum_fn=lambda n: a * (n * (n + 3) // 2) + b * n,  # sum of g(k+1), k=1..n
        window_fn=lambda ln, ys: np.full_like(ys, a * (ln + 2) + b),
    )


def _cofinite_fill(c: int) -> Strategy:
    # enumerates [c, infinity) in order: c, c+1, c+2, ...
    return Strategy(
        name=f"cofinite-fill:{c}",
        initial_state=0,
        advance_fn=lambda ln, mv: ln + 1,
        value_fn=lambda ln: c + ln,
        bound_fn=lambda n: c + n,
        bound_sum_fn=lambda n: c * n + n * (n + 1) // 2,
        window_fn=lambda ln, ys: np.full_like(ys, c + ln + 1),
    )


def _blockwise(p: Partition, spec: str) -> Strategy:
    """Fills blocks greedily: plays the two smallest elements of each block in order."""

    def u(k: int) -> int:
        block = (k + 1) // 2
        lo, _hi = p.block_bounds(block)  # OutOfRangeError past finite coverage
        return lo + (k - 1) % 2

    st = Strategy(
        name=f"blockwise:{spec}",
        initial_state=0,
        advance_fn=lambda ln, mv: ln + 1,
        value_fn=lambda ln: u(ln + 1),
        bound_fn=lambda n: u(n + 1),
    )
    if isinstance(p, UniformPartition):
        st = replace(st, window_fn=lambda ln, ys: np.full_like(ys, u(ln + 2)))
    return st


def one_tactic_nonrare(p: Partition) -> Strategy:
    """The 1-tactic ONE uses when the filter fails rareness for partition p.

    It depends only on the opponent's most recent move k: with n the block of
    k, answer past the union of the first n+k blocks by a margin of n+k+1.
    The empty history is treated as k = 1 (any fixed convention works; ONE's
    first move never carries the argument).
    """

    def tactic(k: int) -> int:
        n = p.block_of(k)
        return p.max_upto(n + k) + n + k + 1

    window_fn = None
    if isinstance(p, UniformPartition):
        size = p.block_size

        def window_fn(st, ys):
            n = (ys - 1) // size + 1
            return size * (n + ys) + n + ys + 1

    return Strategy(
        name="one-tactic",
        initial_state=None,
        advance_fn=lambda st, mv: mv,
        value_fn=lambda st: tactic(1 if st is None else st),
        window_fn=window_fn,
    )


# --------------------------------------------------------------------------
# normalization wrappers
# --------------------------------------------------------------------------


def normalize_strategy(s: Strategy, mode: str) -> Strategy:
    """Wrap a strategy so it satisfies the standing assumptions on ONE.

    ``g1-one``: values are at least max(history) + 1.
    ``g2-one``: values strictly exceed max(history) + 1 and strictly increase
    as the history grows.

    Wrapping an already-compliant strategy changes nothing on strictly
    increasing histories.
    """
    if mode in ("g1-one", "G1-ONE", "g1"):
        return _normalize_g1(s)
    if mode in ("g2-one", "G2-ONE", "g2"):
        return _normalize_g2(s)
    raise SpecParseError(f"unknown normalization mode {mode!r}")


def _normalize_g1(s: Strategy) -> Strategy:
    def advance(st, mv):
        inner, mx = st
        return (s.advance_fn(inner, mv), mv if mv > mx else mx)

    def value(st):
        inner, mx = st
        return max(s.value_fn(inner), mx + 1)

    window_fn = None
    if s.window_fn is not None:
        def window_fn(st, ys):
            inner, mx = st
            return np.maximum(s.window_fn(inner, ys), np.maximum(mx, ys) + 1)

    return Strategy(
        name=f"norm-g1({s.name})",
        initial_state=(s.initial_state, 0),
        advance_fn=advance,
        value_fn=value,
        bound_fn=(lambda n: max(s.bound_fn(n), n + 1)) if s.bound_fn else None,
        window_fn=window_fn,
        normalizations=s.normalizations + ("g1-one",),
    )


def _normalize_g2(s: Strategy) -> Strategy:
    # state = (inner_state, running max, current wrapped value)
    def initial():
        inner = s.initial_state
        return (inner, 0, max(s.value_fn(inner), 2))

    def advance(st, mv):
        inner, mx, cur = st
        inner2 = s.advance_fn(inner, mv)
        mx2 = mv if mv > mx else mx
        return (inner2, mx2, max(s.value_fn(inner2), mx2 + 2, cur + 1))

    def value(st):
        return st[2]

    window_fn = None
    if s.window_fn is not None:
        def window_fn(st, ys):
            inner, mx, cur = st
            vals = np.maximum(s.window_fn(inner, ys), np.maximum(mx, ys) + 2)
            return np.maximum(vals, cur + 1)

    bound_fn = None
    bound_sum_fn = None
    if s.bound_fn is not None:
        def _bound_walk(n, _cap=500_000):
            # B(k) = max(inner_bound(k), k+2, B(k-1)+1); no closed form in general
            if n > _cap:
                raise ResourceCapError(f"g2 normalization bound at {n} exceeds iteration cap {_cap}")
            b = max(s.bound_fn(0), 2)
            total = 0
            for k in range(1, n + 1):
                b = max(s.bound_fn(k), k + 2, b + 1)
                total += b
            return b, total

        def bound_fn(n):
            return _bound_walk(n)[0]

        def bound_sum_fn(n):
            return _bound_walk(n)[1]

    return Strategy(
        name=f"norm-g2({s.name})",
        initial_state=initial(),
        advance_fn=advance,
        value_fn=value,
        bound_fn=bound_fn,
        bound_sum_fn=bound_sum_fn,
        window_fn=window_fn,
        normalizations=s.normalizations + ("g2-one",),
    )


# --------------------------------------------------------------------------
# spec mini-language
# --------------------------------------------------------------------------

_WRAP_RE = re.compile(r"^norm-(g1|g2)\((.*)\)$")


def stock_strategy(spec: str) -> Strategy:
    """Build a strategy from its spec string.

    Specs: "offset:c", "copy", "maxplus:c", "maxinning", "gplay:<linear>",
    "cofinite-fill:c", "blockwise:<partition>", "tactic:<partition>", plus
    "norm-g1(...)" / "norm-g2(...)" wrappers around any of them.
    """
    spec = spec.strip()
    wrap = _WRAP_RE.match(spec)
    if wrap:
        return normalize_strategy(stock_strategy(wrap.group(2)), f"{wrap.group(1)}-one")
    if spec == "copy":
        return _copy()
    if spec == "maxinning":
        return _maxinning()
    head, sep, arg = spec.partition(":")
    if not sep:
        raise SpecParseError(f"unknown strategy spec {spec!r}")
    if head in ("offset", "maxplus", "cofinite-fill"):
        try:
            c = int(arg)
        except ValueError as exc:
            raise SpecParseError(f"bad integer argument in {spec!r}") from exc
        if c < 1:
            raise SpecParseError(f"argument must be >= 1 in {spec!r}")
        return {"offset": _offset, "maxplus": _maxplus, "cofinite-fill": _cofinite_fill}[head](c)
    if head == "gplay":
        a, b = parse_linear_fn(arg)
        return _gplay(a, b, arg)
    if head == "blockwise":
        return _blockwise(parse_partition_spec(arg), arg)
    if head == "tactic":
        return one_tactic_nonrare(parse_partition_spec(arg))
    raise SpecParseError(f"unknown strategy spec {spec!r}")
