"""Small shared helpers: equality across carrier types, stable formatting."""
from __future__ import annotations

from typing import Any

import numpy as np


def generic_eq(a: Any, b: Any) -> bool:
    """Equality that works for floats, tuples, frozensets and numpy arrays."""
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(np.asarray(a), np.asarray(b))
    if isinstance(a, tuple) and isinstance(b, tuple):
        return len(a) == len(b) and all(generic_eq(x, y) for x, y in zip(a, b))
    return a == b


def close_eq(rel: float = 1e-9, abs_: float = 1e-12):
    """Tolerant equality for float-based carriers (scalars, tuples, arrays)."""

    def eq(a: Any, b: Any) -> bool:
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            return bool(np.allclose(a, b, rtol=rel, atol=abs_))
        if isinstance(a, tuple) and isinstance(b, tuple):
            return len(a) == len(b) and all(eq(x, y) for x, y in zip(a, b))
        return abs(a - b) <= abs_ + rel * max(abs(a), abs(b))

    return eq


def format_value(v: Any) -> str:
    """Deterministic, compact, single-line rendering for CSV and reports."""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, np.ndarray):
        flat = np.asarray(v).ravel()
        if flat.size > 8:
            head = " ".join(repr(float(x)) for x in flat[:4])
            return f"[{head} ... n={flat.size} sup={repr(float(np.max(np.abs(flat))))}]"
        return "[" + " ".join(repr(float(x)) for x in flat) + "]"
    if isinstance(v, frozenset):
        pairs = sorted(v, key=repr)
        return "{" + ", ".join(f"({format_value(a)},{format_value(b)})" for a, b in pairs) + "}"
    if isinstance(v, tuple):
        return "(" + ", ".join(format_value(x) for x in v) + ")"
    return repr(v)
