"""Deterministic JSON/CSV emission.

Floats are written as the shortest decimal that round-trips, capped at 12
significant digits; keys keep insertion order; lines end with LF. Identical
inputs therefore produce byte-identical outputs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, is_dataclass

__all__ = ["fmt_float", "to_jsonable", "dumps_json", "write_csv"]


def fmt_float(x: float) -> str:
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            raise ValueError(f"non-finite float in output: {x}")
        if x == int(x) and abs(x) < 1e15:
            return f"{x:.1f}"
        short = repr(x)
        if len(short.replace("-", "").replace(".", "").replace("e", "").lstrip("0")) <= 12:
            return short
        return f"{x:.12g}"
    return str(x)


def to_jsonable(obj):
    """Recursively convert dataclasses, enums and numpy scalars/arrays."""
    import numpy as np

    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: to_jsonable(v) for k, v in asdict(obj).items()}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    return obj


def _emit(obj, indent: int) -> str:
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{k}": {_emit(v, indent + 2)}' for k, v in obj.items())
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        items = ", ".join(_emit(v, indent) for v in obj)
        return "[" + items + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(obj)}")


def dumps_json(obj) -> str:
    return _emit(to_jsonable(obj), 0) + "\n"


def write_csv(path, header: list[str], rows) -> None:
    """Comma-separated, header row, LF endings, deterministic floats."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(
            fmt_float(v) if isinstance(v, float) else str(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
