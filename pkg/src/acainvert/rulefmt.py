"""JSON rule documents.

A rule is stored as::

    {"dimension": 1, "alphabet": 2, "neighborhood": [[-1], [0], [1]],
     "table": [0, 1, ...]}

with the table in mixed-radix order (first listed offset most significant
after canonical sorting).  The shorthand ``{"wolfram": n}`` denotes the
elementary rule ``n``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import Alphabet, LocalRule, Neighborhood, WindowConfig, eca_from_wolfram
from .errors import RuleFormatError

__all__ = [
    "rule_to_dict",
    "rule_from_dict",
    "load_rule",
    "dump_rule",
    "window_to_dict",
    "window_from_dict",
]


def rule_to_dict(rule: LocalRule) -> dict[str, Any]:
    return {
        "dimension": rule.neighborhood.dimension,
        "alphabet": rule.alphabet.size,
        "neighborhood": [list(n) for n in rule.neighborhood.offsets],
        "table": list(rule.table),
    }


def rule_from_dict(doc: Any) -> LocalRule:
    if not isinstance(doc, dict):
        raise RuleFormatError("rule document must be a JSON object")
    if "wolfram" in doc:
        number = doc["wolfram"]
        if not isinstance(number, int):
            raise RuleFormatError("wolfram number must be an integer")
        return eca_from_wolfram(number)
    try:
        dimension = int(doc["dimension"])
        alphabet = int(doc["alphabet"])
        raw_offsets = doc["neighborhood"]
        table = doc["table"]
    except (KeyError, TypeError, ValueError) as exc:
        raise RuleFormatError(f"rule document missing or malformed field: {exc}") from exc
    offsets = []
    for n in raw_offsets:
        offsets.append((int(n),) if isinstance(n, int) else tuple(int(x) for x in n))
    try:
        return LocalRule(Alphabet(alphabet), Neighborhood(dimension, tuple(offsets)), tuple(table))
    except (ValueError, TypeError) as exc:
        raise RuleFormatError(str(exc)) from exc


def load_rule(path: str | Path) -> LocalRule:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise RuleFormatError(f"{path}: {exc}") from exc
    return rule_from_dict(doc)


def dump_rule(rule: LocalRule, path: str | Path, extra: dict[str, Any] | None = None) -> None:
    doc = rule_to_dict(rule)
    if extra:
        doc.update(extra)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def window_to_dict(window: WindowConfig) -> dict[str, Any]:
    return {"cells": [list(c) for c in window.cells], "states": list(window.states)}


def window_from_dict(doc: Any) -> WindowConfig:
    try:
        cells = tuple(tuple(int(x) for x in c) for c in doc["cells"])
        states = tuple(int(s) for s in doc["states"])
        return WindowConfig(cells, states)
    except (KeyError, TypeError, ValueError) as exc:
        raise RuleFormatError(f"window document malformed: {exc}") from exc
