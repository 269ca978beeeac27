"""Canonical JSON rendering for reports.

Reports must be byte-identical across the CLI and the HTTP service, and
across reruns. json.dumps prints floats with shortest-round-trip repr, which
leaks digit-count differences into the output, so floats are rendered here
with a fixed 12-significant-digit format and field order is whatever order
the dict was built in.
"""

from __future__ import annotations

import json
import math

SIG_DIGITS = 12


def format_float(x: float) -> str:
    # exponent forms like "1e+22" are valid JSON numbers, no rewriting needed
    if not math.isfinite(x):
        raise ValueError(f"cannot render non-finite float {x}")
    return format(x, f".{SIG_DIGITS}g")


def dumps_canonical(obj) -> str:
    """Serialize with insertion-order keys and fixed-precision floats."""
    parts: list[str] = []
    _render(obj, parts)
    return "".join(parts)


def _render(obj, parts: list[str]) -> None:
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(format_float(obj))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                parts.append(",")
            parts.append(json.dumps(str(key)))
            parts.append(":")
            _render(value, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, value in enumerate(obj):
            if i:
                parts.append(",")
            _render(value, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot render {type(obj).__name__} canonically")
