from __future__ import annotations

import math
from typing import Callable, List, Sequence

import numpy as np

from ..state import (
    BoolV, Category, CharV, FloatV, IntV, KrustError, RefV, StrV, UnitValue,
)


def format_float(value: float, ty: str) -> str:
    """Display a float the way the reference toolchain does: shortest round-trip, no exponent."""
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    x = np.float32(value) if ty == "f32" else np.float64(value)
    return np.format_float_positional(x, unique=True, trim="-")


def display(v, deref: Callable[[int], object]) -> str:
    cls = type(v)
    if cls is IntV:
        return str(v.value)
    if cls is FloatV:
        return format_float(v.value, v.ty)
    if cls is BoolV:
        return "true" if v.value else "false"
    if cls is CharV or cls is StrV:
        return v.value
    if cls is UnitValue:
        return "()"
    if cls is RefV:
        return display(deref(v.target), deref)
    raise KrustError(Category.TypeMismatch, f"value {v} cannot be formatted with `{{}}`")


def split_format(fmt: str) -> List[str]:
    """Split a format string into literal pieces around ``{}`` placeholders.

    ``{{`` and ``}}`` are literal braces. Returns ``holes + 1`` pieces.
    """
    pieces: List[str] = []
    buf = []
    i = 0
    while i < len(fmt):
        c = fmt[i]
        if c == "{":
            if fmt.startswith("{{", i):
                buf.append("{")
                i += 2
                continue
            if fmt.startswith("{}", i):
                pieces.append("".join(buf))
                buf = []
                i += 2
                continue
            raise KrustError(Category.Stuck, f"unsupported format specifier in {fmt!r}")
        if c == "}":
            if fmt.startswith("}}", i):
                buf.append("}")
                i += 2
                continue
            raise KrustError(Category.Stuck, f"unmatched `}}` in format string {fmt!r}")
        buf.append(c)
        i += 1
    pieces.append("".join(buf))
    return pieces


def render_println(fmt: str, args: Sequence[object], deref: Callable[[int], object], span=None) -> str:
    pieces = split_format(fmt)
    if len(pieces) - 1 != len(args):
        raise KrustError(
            Category.ArityMismatch,
            f"format string has {len(pieces) - 1} placeholder(s) but {len(args)} argument(s) were given",
            span,
        )
    out = [pieces[0]]
    for arg, piece in zip(args, pieces[1:]):
        try:
            out.append(display(arg, deref))
        except KrustError as err:
            raise KrustError(err.diagnostic.category, err.diagnostic.message, span) from None
        out.append(piece)
    return "".join(out) + "\n"
