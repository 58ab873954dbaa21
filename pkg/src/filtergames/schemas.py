"""Request models shared by the HTTP service and the CLI.

Spec strings (filters, strategies, partitions, linear functions) are kept as
strings here and parsed by the jobs layer, so both front ends report the same
parse errors with the same wording.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class PlayRequest(BaseModel):
    game: Literal["g1", "g2"]
    filter: str = "frechet"
    one: str
    two: str
    horizon: int = Field(ge=1)
    beat_threshold: int | None = None
    domination_threshold: int | None = None
    # Reserved: seeds only affect explicitly randomized test adversaries, and
    # no stock adversary is randomized; plays are fully deterministic.
    seed: int | None = None


class RefuteTwoRequest(BaseModel):
    two: str
    budget: int = Field(default=1000, ge=1)
    horizon: int = Field(ge=1)
    filter: str = "frechet"
    tau_max_len: int = Field(default=2, ge=0)
    tau_entry_max: int = Field(default=32, ge=1)


class StealRequest(BaseModel):
    two: str
    first_move: int = Field(default=1, ge=1)
    horizon: int = Field(ge=1)


class ExtractGRequest(BaseModel):
    one: str
    upto: int = Field(ge=1)
    fast_path: bool = True
    h_table_bound: int = Field(default=16, ge=1)


class BuildGHRequest(BaseModel):
    one: str
    upto: int = Field(ge=1)
    fast_path: bool = True


class DefeatOneRequest(BaseModel):
    one: str
    oracle: str = "rare:leftmost"
    horizon: int = Field(ge=1)
    digit_cap: int = Field(default=3_200_000, ge=4)


class CheckEnumBoundedRequest(BaseModel):
    filter: str
    g: str
    base_from: int = Field(default=1, ge=1)
    base_to: int = Field(default=20, ge=1)
    scan: int = Field(default=1000, ge=1)


class CheckEscapeRequest(BaseModel):
    filter: str
    partition: str
    threshold: int = Field(default=5, ge=1)
    scan: int = Field(default=1000, ge=1)


class CheckRareRequest(BaseModel):
    filter: str
    partition: str
    scan: int = Field(default=100, ge=1)
