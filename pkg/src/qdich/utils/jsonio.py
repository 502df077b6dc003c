"""JSON emitter for machine-readable output.

Floats are printed with 17 significant digits so every double round-trips,
and infinity is spelled ``"Infinite"``.
"""

import json
import math
from typing import Any

INFINITE = "Infinite"


def format_float(value: float) -> str:
    if math.isinf(value):
        return json.dumps(INFINITE)
    if math.isnan(value):
        return "null"
    text = format(value, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _emit(value: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_emit(v, indent, level + 1)}"
            for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(v, (int, float, str, bool)) or v is None for v in value):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in value) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    if hasattr(value, "item"):
        # numpy scalars
        return _emit(value.item(), indent, level)
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dumps(value: Any, indent: int = 2) -> str:
    """Serialise plain data (dicts, lists, numbers, strings) as JSON text."""
    return _emit(value, indent, 0) + "\n"


def error_value(c: float) -> float | str:
    """Multiplicative error as emitted: a number, or ``"Infinite"``."""
    return INFINITE if math.isinf(c) else c
