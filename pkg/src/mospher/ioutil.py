"""Deterministic JSON/CSV output helpers.

Payloads carry the schema tag "mospher/1"; every exact number is a string
("p/q" rationals, {"re","im"} complex pairs) and every float is printed
with 17 significant digits so identical flags reproduce identical bytes.
"""

from __future__ import annotations

import json

SCHEMA = "mospher/1"


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def json_dumps(payload: dict) -> str:
    """Stable rendering: insertion order, two-space indent, trailing newline."""
    return json.dumps(payload, indent=2, ensure_ascii=True) + "\n"


def csv_lines(header: str, rows) -> str:
    """CSV with '.' decimals, 17 significant digits, LF newlines."""
    out = [header]
    for row in rows:
        out.append(",".join(fmt_float(x) if isinstance(x, float) else str(x) for x in row))
    return "\n".join(out) + "\n"
