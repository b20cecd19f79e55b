"""JSON encodings for elements, rationals and cocharacters."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Sequence

from .affine import ExtAffineWeylElem, affine
from .errors import SchemaError
from .rootdatum import TwistedRootDatum

SCHEMA_VERSION = 1


def frac_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def frac_list(v: Sequence) -> list[str]:
    return [frac_str(x) for x in v]


def elem_json(x: ExtAffineWeylElem) -> dict:
    return {"mu": list(x.mu), "w": str(x.w)}


def parse_word(D: TwistedRootDatum, text: str):
    text = text.strip()
    if text in ("", "e"):
        return D.identity
    letters = []
    for tok in text.replace(",", " ").split():
        m = re.fullmatch(r"s(\d+)", tok)
        if not m or not 1 <= int(m.group(1)) <= D.n:
            raise SchemaError(f"bad Weyl letter {tok!r}", {"field": "w"})
        letters.append(int(m.group(1)) - 1)
    return D.from_word(letters)


def parse_vector(text: str | Sequence, n: int, field: str) -> tuple[int, ...]:
    if isinstance(text, str):
        try:
            val = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{field}: not a JSON list", {"field": field}) from exc
    else:
        val = text
    if not isinstance(val, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in val):
        raise SchemaError(f"{field}: expected a list of integers", {"field": field})
    if len(val) != n:
        raise SchemaError(f"{field}: expected {n} coordinates, got {len(val)}", {"field": field})
    return tuple(val)


def parse_elem(D: TwistedRootDatum, text: str | dict) -> ExtAffineWeylElem:
    """Parse "t[1,0];s1 s2", "s1", "e" or {"mu": [...], "w": "..."}."""
    A = affine(D)
    if isinstance(text, str) and text.strip().startswith("{"):
        try:
            text = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError("b: invalid JSON", {"field": "b"}) from exc
    if isinstance(text, dict):
        extra = set(text) - {"mu", "w"}
        if extra:
            raise SchemaError(f"b: unknown fields {sorted(extra)}", {"field": "b"})
        mu = parse_vector(text.get("mu", [0] * D.n), D.n, "b.mu")
        return A.elem(mu, parse_word(D, str(text.get("w", "e"))))
    text = text.strip()
    m = re.fullmatch(r"t(\[[^\]]*\])\s*(?:;(.*))?", text)
    if m:
        mu = parse_vector(m.group(1), D.n, "b.mu")
        return A.elem(mu, parse_word(D, m.group(2) or "e"))
    return A.elem((0,) * D.n, parse_word(D, text))


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=_default)


def _default(o):
    if isinstance(o, Fraction):
        return frac_str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(type(o).__name__)
