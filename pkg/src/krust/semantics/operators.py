"""Value typing and primitive operators with debug-build overflow checks."""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from ..state import (
    BOTTOM, ArrayV, BoolV, Category, CharV, ClosureV, FloatV, IntV, KrustError,
    RefV, StrV, StructInstV, UnitValue,
)
from ..syntax import nodes as n

INT_BITS = {
    "i8": 8, "u8": 8, "i16": 16, "u16": 16, "i32": 32, "u32": 32,
    "i64": 64, "u64": 64, "isize": 64, "usize": 64,
}
INT_RANGE = {
    t: ((-(1 << (b - 1)), (1 << (b - 1)) - 1) if t[0] == "i" else (0, (1 << b) - 1))
    for t, b in INT_BITS.items()
}

_BOOL = n.prim("bool")
_CHAR = n.prim("char")
_STR = n.prim("&str")


def fits(value: int, ty: str) -> bool:
    lo, hi = INT_RANGE[ty]
    return lo <= value <= hi


def to_f32(x: float) -> float:
    return float(np.float32(x))


def get_type(v, type_of_loc=None) -> n.TypeExpr:
    """Type of a runtime value; untyped integer literals report their default ``i32``."""
    cls = type(v)
    if cls is IntV or cls is FloatV:
        return n.prim(v.ty)
    if cls is BoolV:
        return _BOOL
    if cls is CharV:
        return _CHAR
    if cls is StrV:
        return _STR
    if cls is UnitValue:
        return n.UNIT
    if cls is StructInstV:
        return n.NamedType(v.type_name)
    if cls is ClosureV:
        return n.FnType(tuple(t for _, t in v.params), v.ret)
    if cls is ArrayV:
        return n.ArrayType(v.elem_type, len(v.elems))
    if cls is RefV:
        inner = type_of_loc(v.target) if type_of_loc is not None else None
        return n.RefType(v.mutable, inner if inner is not None else n.UNIT)
    raise TypeError(f"getType of {v!r}")


def coerce(v, ty: Optional[n.TypeExpr], span=None):
    """Fix the type of an untyped literal against ``ty`` (or its default).

    Returns the value unchanged when it is already typed. An integer literal
    outside the range of the target type is an overflow.
    """
    cls = type(v)
    if cls is IntV and v.lit:
        if type(ty) is n.PrimType and ty.name in INT_BITS:
            target = ty.name
        else:
            target = "i32"
        if not fits(v.value, target):
            raise KrustError(Category.Overflow, f"literal {v.value} out of range for {target}", span)
        return IntV(v.value, target)
    if cls is FloatV and v.lit:
        if type(ty) is n.PrimType and ty.name == "f32":
            return FloatV(to_f32(v.value), "f32")
        return FloatV(v.value, "f64")
    if cls is ArrayV:
        elem_ty = ty.elem if type(ty) is n.ArrayType else None
        elems = tuple(coerce(e, elem_ty, span) for e in v.elems)
        et = get_type(elems[0]) if elems else (elem_ty or v.elem_type)
        return ArrayV(elems, et)
    return v


def _unify(a, b, span):
    """Give two operands a common type, resolving untyped literals."""
    ta, tb = type(a), type(b)
    if ta is IntV and tb is IntV:
        if a.lit and not b.lit:
            a = coerce(a, n.prim(b.ty), span)
        elif b.lit and not a.lit:
            b = coerce(b, n.prim(a.ty), span)
    elif ta is FloatV and tb is FloatV:
        if a.lit and not b.lit:
            a = coerce(a, n.prim(b.ty), span)
        elif b.lit and not a.lit:
            b = coerce(b, n.prim(a.ty), span)
    return a, b


def _type_name(v) -> str:
    try:
        return str(get_type(v))
    except TypeError:
        return type(v).__name__


def _mismatch(op, a, b, span):
    raise KrustError(
        Category.TypeMismatch,
        f"cannot apply `{op}` to {_type_name(a)} and {_type_name(b)}",
        span,
    )


def _check_int(value: int, ty: str, lit: bool, op: str, span) -> IntV:
    if not lit and not fits(value, ty):
        raise KrustError(Category.Overflow, f"attempt to compute `{op}` with overflow ({ty})", span)
    return IntV(value, ty, lit)


def _trunc_div(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _compare(op: str, x, y) -> bool:
    if op == "==":
        return x == y
    if op == "!=":
        return x != y
    if op == "<":
        return x < y
    if op == "<=":
        return x <= y
    if op == ">":
        return x > y
    return x >= y


def eval_binop(op: str, lhs, rhs, span=None):
    """Apply a non-short-circuit binary operator to two defined values."""
    if lhs is BOTTOM or rhs is BOTTOM:
        raise KrustError(Category.UninitializedRead, "use of undefined value", span)
    if op in ("<<", ">>"):
        return _shift(op, lhs, rhs, span)
    if op in ("&&", "||"):
        if type(lhs) is BoolV and type(rhs) is BoolV:
            return BoolV(lhs.value and rhs.value if op == "&&" else lhs.value or rhs.value)
        _mismatch(op, lhs, rhs, span)
    lhs, rhs = _unify(lhs, rhs, span)
    tl = type(lhs)
    if tl is not type(rhs):
        _mismatch(op, lhs, rhs, span)
    if tl is IntV:
        if lhs.ty != rhs.ty:
            _mismatch(op, lhs, rhs, span)
        a, b, ty = lhs.value, rhs.value, lhs.ty
        lit = lhs.lit and rhs.lit
        if op in ("==", "!=", "<", "<=", ">", ">="):
            return BoolV(_compare(op, a, b))
        if op == "+":
            return _check_int(a + b, ty, lit, op, span)
        if op == "-":
            return _check_int(a - b, ty, lit, op, span)
        if op == "*":
            return _check_int(a * b, ty, lit, op, span)
        if op in ("/", "%"):
            if b == 0:
                what = "divide" if op == "/" else "calculate the remainder"
                raise KrustError(Category.DivideByZero, f"attempt to {what} with a divisor of zero", span)
            q = _trunc_div(a, b)
            if op == "/":
                return _check_int(q, ty, lit, op, span)
            if not lit and not fits(q, ty):
                raise KrustError(Category.Overflow, "attempt to calculate the remainder with overflow", span)
            return IntV(a - b * q, ty, lit)
        if op == "&":
            return IntV(a & b, ty, lit)
        if op == "|":
            return IntV(a | b, ty, lit)
    elif tl is FloatV:
        if lhs.ty != rhs.ty:
            _mismatch(op, lhs, rhs, span)
        a, b, ty = lhs.value, rhs.value, lhs.ty
        if op in ("==", "!=", "<", "<=", ">", ">="):
            return BoolV(_compare(op, a, b))
        if op == "+":
            r = a + b
        elif op == "-":
            r = a - b
        elif op == "*":
            r = a * b
        elif op == "/":
            r = _fdiv(a, b)
        elif op == "%":
            if b == 0 or math.isinf(a) or math.isnan(a) or math.isnan(b):
                r = math.nan
            else:
                r = math.fmod(a, b)
        else:
            _mismatch(op, lhs, rhs, span)
        if ty == "f32":
            r = to_f32(r)
        return FloatV(r, ty, lhs.lit and rhs.lit)
    elif tl is BoolV:
        a, b = lhs.value, rhs.value
        if op in ("==", "!=", "<", "<=", ">", ">="):
            return BoolV(_compare(op, a, b))
        if op == "&":
            return BoolV(a and b)
        if op == "|":
            return BoolV(a or b)
    elif tl in (CharV, StrV):
        if op in ("==", "!=", "<", "<=", ">", ">="):
            return BoolV(_compare(op, lhs.value, rhs.value))
    elif tl is UnitValue:
        if op in ("==", "!=", "<=", ">=", "<", ">"):
            return BoolV(op in ("==", "<=", ">="))
    _mismatch(op, lhs, rhs, span)


def _fdiv(a: float, b: float) -> float:
    if b == 0:
        if a == 0 or math.isnan(a):
            return math.nan
        sign = math.copysign(1.0, a) * math.copysign(1.0, b)
        return math.inf * sign
    return a / b


def _shift(op, lhs, rhs, span):
    if type(lhs) is not IntV or type(rhs) is not IntV:
        _mismatch(op, lhs, rhs, span)
    if lhs.lit:
        lhs = coerce(lhs, None, span)
    if rhs.lit:
        rhs = coerce(rhs, None, span)
    bits = INT_BITS[lhs.ty]
    amount = rhs.value
    if amount < 0 or amount >= bits:
        raise KrustError(Category.Overflow, f"attempt to shift {'left' if op == '<<' else 'right'} with overflow", span)
    if op == ">>":
        return IntV(lhs.value >> amount, lhs.ty)
    mask = (1 << bits) - 1
    raw = (lhs.value << amount) & mask
    if lhs.ty[0] == "i" and raw >= 1 << (bits - 1):
        raw -= 1 << bits
    return IntV(raw, lhs.ty)


def eval_neg(v, span=None):
    if v is BOTTOM:
        raise KrustError(Category.UninitializedRead, "use of undefined value", span)
    if type(v) is IntV:
        if v.lit:
            return IntV(-v.value, v.ty, True)
        if v.ty[0] == "u":
            raise KrustError(Category.Overflow, f"cannot negate unsigned {v.ty}", span)
        return _check_int(-v.value, v.ty, False, "-", span)
    if type(v) is FloatV:
        return FloatV(-v.value, v.ty, v.lit)
    raise KrustError(Category.TypeMismatch, f"cannot negate {_type_name(v)}", span)


def eval_not(v, span=None):
    if v is BOTTOM:
        raise KrustError(Category.UninitializedRead, "use of undefined value", span)
    if type(v) is BoolV:
        return BoolV(not v.value)
    if type(v) is IntV:
        if v.lit:
            return IntV(~v.value, v.ty, True)
        if v.ty[0] == "u":
            return IntV(v.value ^ ((1 << INT_BITS[v.ty]) - 1), v.ty)
        return IntV(~v.value, v.ty)
    raise KrustError(Category.TypeMismatch, f"cannot apply `!` to {_type_name(v)}", span)
