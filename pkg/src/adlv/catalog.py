"""Named twisted root data used by the CLI, the harness and the tests.

Simple roots are numbered 0..n-1 following Bourbaki order within each
component; component c owns indices c*r .. c*r + r - 1.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .errors import SchemaError
from .rootdatum import TwistedRootDatum

CATALOG: dict[str, dict[str, Any]] = {
    "pgl2": {"type": "A1", "components": 1, "sigma": "()"},
    "pgl3": {"type": "A2", "components": 1, "sigma": "()"},
    "pgl3-flip": {"type": "A2", "components": 1, "sigma": "(0 1)"},
    "a3": {"type": "A3", "components": 1, "sigma": "()"},
    "a3-flip": {"type": "A3", "components": 1, "sigma": "(0 2)"},
    "a4-flip": {"type": "A4", "components": 1, "sigma": "(0 3)(1 2)"},
    "b2": {"type": "B2", "components": 1, "sigma": "()"},
    "g2": {"type": "G2", "components": 1, "sigma": "()"},
    "d4": {"type": "D4", "components": 1, "sigma": "()"},
    "d4-triality": {"type": "D4", "components": 1, "sigma": "(0 2 3)"},
    "a1xa1-swap": {"type": "A1", "components": 2, "sigma": "(0 1)"},
    "a2xa2-swap": {"type": "A2", "components": 2, "sigma": "(0 2)(1 3)"},
}

_CACHE: dict[str, TwistedRootDatum] = {}


def datum_from_json(doc: dict) -> TwistedRootDatum:
    if not isinstance(doc, dict):
        raise SchemaError("datum must be a JSON object", {"field": "datum"})
    extra = set(doc) - {"type", "components", "sigma"}
    if extra:
        raise SchemaError(f"datum: unknown fields {sorted(extra)}", {"field": f"datum.{sorted(extra)[0]}"})
    if "type" not in doc or not isinstance(doc["type"], str):
        raise SchemaError("datum.type must be a string such as \"A2\"", {"field": "datum.type"})
    comps = doc.get("components", 1)
    if not isinstance(comps, int) or isinstance(comps, bool) or comps < 1:
        raise SchemaError("datum.components must be a positive integer", {"field": "datum.components"})
    sigma = doc.get("sigma", "()")
    if not isinstance(sigma, (str, list)):
        raise SchemaError("datum.sigma must be cycle notation or a list", {"field": "datum.sigma"})
    key = json.dumps({"type": doc["type"], "components": comps, "sigma": sigma}, sort_keys=True)
    if key not in _CACHE:
        try:
            _CACHE[key] = TwistedRootDatum(doc["type"], comps, sigma)
        except (KeyError, ValueError) as exc:
            raise SchemaError(f"unknown Cartan type {doc['type']!r}", {"field": "datum.type"}) from exc
    return _CACHE[key]


def named(name: str) -> TwistedRootDatum:
    if name not in CATALOG:
        raise SchemaError(f"unknown catalog datum {name!r}", {"field": "datum"})
    return datum_from_json(CATALOG[name])


def resolve(spec: str) -> TwistedRootDatum:
    """A catalog name, or a bare Cartan type such as "A2" (trivial sigma, one component)."""
    if spec in CATALOG:
        return named(spec)
    if re.fullmatch(r"[A-Ga-g]\d+", spec):
        return datum_from_json({"type": spec.upper()})
    raise SchemaError(f"unknown datum {spec!r}", {"field": "datum"})
