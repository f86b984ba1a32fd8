"""Deterministic ordering and rendering of element labels.

Labels are arbitrary hashable values: ints, strings, and nested tuples or
frozensets of those.  Derived constructions build such nested labels, so we
need a total order and a stable string form that work across types.
"""

from __future__ import annotations

from typing import Any, Hashable

import numpy as np

BOTTOM = "_bot"
APEX_1 = "_a1"
APEX_2 = "_a2"
TOP = "_top"
RESERVED = frozenset({BOTTOM, TOP, APEX_1, APEX_2})


def sort_key(x: Any) -> tuple:
    """Total order over mixed labels (ints < strings < sets < tuples)."""
    if isinstance(x, (bool, np.bool_)):
        return (0, int(x))
    if isinstance(x, (int, np.integer)):
        return (0, int(x))
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, (frozenset, set)):
        return (2, len(x), tuple(sorted(sort_key(e) for e in x)))
    if isinstance(x, tuple):
        return (3, len(x), tuple(sort_key(e) for e in x))
    return (4, repr(x))


def label_str(x: Any) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    if isinstance(x, (frozenset, set)):
        return "{" + ",".join(label_str(e) for e in sorted(x, key=sort_key)) + "}"
    if isinstance(x, tuple):
        return "(" + ",".join(label_str(e) for e in x) + ")"
    return repr(x)


def sorted_labels(xs) -> list[Hashable]:
    return sorted(xs, key=sort_key)
