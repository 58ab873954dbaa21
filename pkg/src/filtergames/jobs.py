"""Job layer: one function per operation, shared by the service and the CLI.

Each job parses its request's spec strings, runs the corresponding library
operation, and returns a plain JSON-ready dict.  Both front ends serialize
results with ``serialize.canonical_dumps`` so identical requests produce
byte-identical output.
"""

from __future__ import annotations

from . import schemas
from .characterize import check_enum_bounded, check_partition_escape, check_rare_at_horizon
from .constructions import (
    DiagonalPairEvidence,
    DirectDefeatEvidence,
    build_g_h,
    defeat_one_g2,
    extract_dominating_function,
    refute_two_g1,
    steal_two_g2,
)
from .errors import UnsupportedKindError
from .filters import RareOracleFilter, parse_filter_spec
from .model import parse_partition_spec
from .referee import judge_g1, judge_g2, play
from .strategies import parse_linear_fn, stock_strategy


def run_play(req: schemas.PlayRequest) -> dict:
    f = parse_filter_spec(req.filter)
    one = stock_strategy(req.one)
    two = stock_strategy(req.two)
    t = play(req.game, one, two, req.horizon)
    if req.game == "g1":
        verdict = judge_g1(t, f, beat_threshold=req.beat_threshold)
    else:
        verdict = judge_g2(t, f, domination_threshold=req.domination_threshold)
    return t.to_json(verdict.to_json())


def run_refute_two(req: schemas.RefuteTwoRequest) -> dict:
    f = parse_filter_spec(req.filter)
    two = stock_strategy(req.two)
    ev = refute_two_g1(
        two,
        req.budget,
        req.horizon,
        tau_max_len=req.tau_max_len,
        tau_entry_max=req.tau_entry_max,
    )
    out = ev.to_json()
    out["filter"] = req.filter
    if isinstance(ev, DiagonalPairEvidence):
        tf, tg = ev.transcripts()
        out["verdicts"] = {
            "f": judge_g1(tf, f).to_json(),
            "g": judge_g1(tg, f).to_json(),
        }
    elif isinstance(ev, DirectDefeatEvidence):
        out["verdicts"] = {"defeat": judge_g1(ev.transcript, f).to_json()}
    else:
        out["verdicts"] = {}
    return out


def run_steal(req: schemas.StealRequest) -> dict:
    return steal_two_g2(stock_strategy(req.two), req.first_move, req.horizon).to_json()


def run_extract_g(req: schemas.ExtractGRequest) -> dict:
    table = extract_dominating_function(
        stock_strategy(req.one),
        req.upto,
        prefer_fast=req.fast_path,
        h_table_bound=req.h_table_bound,
    )
    return table.to_json()


def run_build_gh(req: schemas.BuildGHRequest) -> dict:
    g, h = build_g_h(stock_strategy(req.one), req.upto, prefer_fast=req.fast_path)
    return {"kind": "g-h-tables", "strategy": req.one, "upto": req.upto, "g": list(g), "h": list(h)}


def run_defeat_one(req: schemas.DefeatOneRequest) -> dict:
    oracle = parse_filter_spec(req.oracle)
    if not isinstance(oracle, RareOracleFilter):
        raise UnsupportedKindError("defeat-one needs a rare oracle (e.g. rare:leftmost)")
    ev = defeat_one_g2(
        stock_strategy(req.one), oracle, req.horizon, digit_cap=req.digit_cap
    )
    return ev.to_json()


def run_check_enum_bounded(req: schemas.CheckEnumBoundedRequest) -> dict:
    f = parse_filter_spec(req.filter)
    a, b = parse_linear_fn(req.g)
    report = check_enum_bounded(
        f,
        lambda k: a * k + b,
        range(req.base_from, req.base_to + 1),
        req.scan,
        g_label=req.g,
    )
    return report.to_json()


def run_check_escape(req: schemas.CheckEscapeRequest) -> dict:
    f = parse_filter_spec(req.filter)
    p = parse_partition_spec(req.partition)
    return check_partition_escape(f, p, req.threshold, req.scan).to_json()


def run_check_rare(req: schemas.CheckRareRequest) -> dict:
    f = parse_filter_spec(req.filter)
    p = parse_partition_spec(req.partition)
    return check_rare_at_horizon(f, p, req.scan).to_json()
