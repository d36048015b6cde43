"""JSON formats.

External documents use 0-based player positions; the library is 1-based.
Integers may be given as JSON numbers or as decimal strings.  Rationals
are always written as ``"p/q"`` strings.
"""
from __future__ import annotations

import json
import sys
from fractions import Fraction
from typing import Any

from .errors import ValidationError
from .game import WeightedVotingGame
from .reductions import CompareInstance, CompareRInstance, RRInstance, SubsetSumInstance
from .x3c import X3CInstance


def parse_int(value: Any, what: str = "integer") -> int:
    if isinstance(value, bool):
        raise ValidationError(f"{what}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        text = value.strip()
        try:
            return int(text, 10)
        except ValueError:
            pass
    raise ValidationError(f"{what}: expected an integer or decimal string, got {value!r}")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))


def load(path: str) -> Any:
    """Read a JSON document from ``path``, or from stdin when ``path`` is ``-``."""
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2)


def _require(doc, key, what):
    if not isinstance(doc, dict) or key not in doc:
        raise ValidationError(f"{what} document needs a {key!r} field")
    return doc[key]


def _int_list(doc, key, what):
    items = _require(doc, key, what)
    if not isinstance(items, list):
        raise ValidationError(f"{what}.{key} must be a list")
    return [parse_int(v, f"{what}.{key}") for v in items]


def game_from_json(doc: Any) -> WeightedVotingGame:
    """Read ``{"weights": [...], "quota": q}``; other keys are ignored."""
    weights = _int_list(doc, "weights", "game")
    return WeightedVotingGame(tuple(weights), parse_int(_require(doc, "quota", "game"), "game.quota"))


def game_to_json(game: WeightedVotingGame, **extra) -> dict:
    return {"weights": list(game.weights), "quota": game.quota, **extra}


def to_positions(players) -> list[int]:
    """1-based players -> sorted 0-based positions."""
    return sorted(p - 1 for p in players)


def from_positions(positions) -> list[int]:
    return [parse_int(p, "player position") + 1 for p in positions]


def subsetsum_from_json(doc: Any) -> SubsetSumInstance:
    return SubsetSumInstance(tuple(_int_list(doc, "values", "subset-sum")),
                             parse_int(_require(doc, "target", "subset-sum"), "target"))


def compare_from_json(doc: Any) -> CompareInstance:
    return CompareInstance(subsetsum_from_json(_require(doc, "left", "compare")),
                           subsetsum_from_json(_require(doc, "right", "compare")))


def compare_r_from_json(doc: Any) -> CompareRInstance:
    return CompareRInstance(tuple(_int_list(doc, "values", "compare-r")),
                            parse_int(_require(doc, "q1", "compare-r"), "q1"),
                            parse_int(_require(doc, "q2", "compare-r"), "q2"))


def rr_from_json(doc: Any) -> RRInstance:
    flipped = doc.get("flipped", False) if isinstance(doc, dict) else False
    if not isinstance(flipped, bool):
        raise ValidationError("rr.flipped must be a boolean")
    return RRInstance(tuple(_int_list(doc, "values", "rr")), flipped)


def x3c_from_json(doc: Any) -> X3CInstance:
    family = _require(doc, "family", "x3c")
    if not isinstance(family, list) or not all(isinstance(s, list) for s in family):
        raise ValidationError("x3c.family must be a list of 3-element lists")
    return X3CInstance(parse_int(_require(doc, "base_size", "x3c"), "base_size"),
                       tuple(tuple(parse_int(e, "x3c element") for e in s) for s in family))
