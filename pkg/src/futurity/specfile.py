"""Machine-spec files (JSON) and ``builtin:`` references.

Two shapes are accepted, and any other key is an error::

    {"J": 10, "dists": [{"0": "121/125", "3": "3/1000", ...}, ...]}
    {"reels": [[...20 symbols...] x 3], "paytable": {"5,5,5": 150, ...},
     "mode_pattern": "EEEEEOEEEO", "J": 10}

Payout keys are decimal or fraction strings. Probabilities written as strings
("968/1000", "0.968") are read exactly; JSON numbers are read as floats.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import BadSpecFile
from .machine import (
    MachineSpec,
    PayoutDistribution,
    ReelMachine,
    futurity1936,
    futurity_reels,
    make_spec,
    spec_from_reels,
)

BUILTINS = {"futurity1936": futurity1936}
BUILTIN_REELS = {"futurity1936": futurity_reels}

_DIST_KEYS = {"J", "dists"}
_REEL_KEYS = {"reels", "paytable", "mode_pattern", "J"}


def _number(text: str):
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise BadSpecFile(f"not a number: {text!r}") from exc
    return int(x) if x.denominator == 1 else x


def _prob(v):
    if isinstance(v, bool):
        raise BadSpecFile(f"bad probability {v!r}")
    if isinstance(v, str):
        return _number(v)
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return v
    raise BadSpecFile(f"bad probability {v!r}")


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return str(x)


def _dist_from_doc(obj) -> PayoutDistribution:
    if not isinstance(obj, dict) or not obj:
        raise BadSpecFile("each distribution must be a non-empty payout -> probability mapping")
    return PayoutDistribution.from_mapping({_number(k): _prob(v) for k, v in obj.items()})


def spec_from_doc(doc) -> MachineSpec:
    if not isinstance(doc, dict):
        raise BadSpecFile("spec document must be a mapping")
    keys = set(doc)
    if "dists" in keys:
        extra = keys - _DIST_KEYS
        if extra or "J" not in keys:
            raise BadSpecFile(f"unknown or missing fields: {sorted(extra) or ['J']}")
        if not isinstance(doc["dists"], list):
            raise BadSpecFile("dists must be a list")
        return make_spec(doc["J"], [_dist_from_doc(d) for d in doc["dists"]])
    if "reels" in keys:
        return spec_from_reels(reels_from_doc(doc), doc.get("J"))
    raise BadSpecFile(f"spec document needs 'dists' or 'reels', got {sorted(keys)}")


def reels_from_doc(doc) -> ReelMachine:
    extra = set(doc) - _REEL_KEYS
    missing = {"reels", "paytable", "mode_pattern"} - set(doc)
    if extra or missing:
        raise BadSpecFile(f"unknown fields {sorted(extra)}, missing {sorted(missing)}")
    try:
        reels = tuple(tuple(int(s) for s in strip) for strip in doc["reels"])
        table = {}
        for key, pay in doc["paytable"].items():
            table[tuple(int(s) for s in key.split(","))] = int(pay)
    except (AttributeError, TypeError, ValueError) as exc:
        raise BadSpecFile(f"malformed reels or paytable: {exc}") from exc
    return ReelMachine(reels, table, str(doc["mode_pattern"]))


def spec_to_doc(spec: MachineSpec) -> dict:
    dists = []
    for d in spec.dists:
        dists.append({_fmt(x): (_fmt(pr) if not isinstance(pr, float) else pr) for x, pr in d.atoms})
    return {"J": spec.J, "dists": dists}


def reels_to_doc(rm: ReelMachine, J: int | None = None) -> dict:
    doc = {
        "reels": [list(s) for s in rm.reels],
        "paytable": {",".join(map(str, k)): v for k, v in sorted(rm.paytable.items())},
        "mode_pattern": rm.mode_pattern,
    }
    if J is not None:
        doc["J"] = J
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_spec(ref: str) -> MachineSpec:
    """``builtin:<name>`` or a path to a JSON spec file."""
    if ref.startswith("builtin:"):
        name = ref[len("builtin:"):]
        if name not in BUILTINS:
            raise BadSpecFile(f"unknown builtin {name!r}; known: {sorted(BUILTINS)}")
        return BUILTINS[name]()
    try:
        doc = json.loads(Path(ref).read_text())
    except json.JSONDecodeError as exc:
        raise BadSpecFile(f"{ref}: {exc}") from exc
    return spec_from_doc(doc)
