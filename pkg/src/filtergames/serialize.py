"""Deterministic JSON encoding for evidence records.

All CLI and service output funnels through canonical_dumps so identical
configurations produce byte-identical output.  Integers beyond
DIGEST_THRESHOLD decimal digits (the tower constructions produce values with
millions of digits) are encoded as a digest object instead of full decimal,
which also stays under the interpreter's int-to-str conversion limit.
"""

from __future__ import annotations

import json
from dataclasses import is_dataclass

DIGEST_THRESHOLD = 4000  # decimal digits
_HEAD_DIGITS = 12


_LOG10_2 = 0.30102999566398114


def digit_count(v: int) -> int:
    """Exact number of decimal digits of abs(v), cheap even for huge values.

    Uses a 53-bit mantissa estimate of log10; only values landing within the
    float error band of a power of ten fall back to exact comparison.
    """
    import math

    v = abs(v)
    if v < 10:
        return 1
    bits = v.bit_length()
    if bits <= 53:
        est = math.log10(v)
    else:
        mant = v >> (bits - 53)
        est = (bits - 53) * _LOG10_2 + math.log10(mant)
    frac = est - int(est)
    if 1e-6 < frac < 1 - 1e-6:
        return int(est) + 1
    # hairline case: resolve by one exact comparison
    approx = int(est)
    if v >= 10**approx:
        approx += 1
        if v >= 10**approx:
            approx += 1
    return approx


def encode_int(v: int):
    """Pass small ints through; digest huge ones as {digits, head, tail}."""
    d = digit_count(v)
    if d <= DIGEST_THRESHOLD:
        return v
    head = abs(v) // 10 ** (d - _HEAD_DIGITS)
    tail = abs(v) % 10**_HEAD_DIGITS
    return {
        "encoding": "int-digest",
        "negative": v < 0,
        "digits": d,
        "head": str(head),
        "tail": str(tail).zfill(_HEAD_DIGITS),
    }


def json_ready(obj):
    """Recursively convert to plain JSON types, digesting oversized ints."""
    if obj is None or isinstance(obj, (str, float, bool)):
        return obj
    if isinstance(obj, int):
        return encode_int(obj)
    if is_dataclass(obj) and hasattr(obj, "to_json"):
        return json_ready(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [json_ready(v) for v in seq]
    if hasattr(obj, "to_json"):
        return json_ready(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_dumps(obj) -> str:
    """Byte-deterministic JSON: sorted keys, no whitespace, trailing newline."""
    return json.dumps(json_ready(obj), sort_keys=True, separators=(",", ":")) + "\n"
