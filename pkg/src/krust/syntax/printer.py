"""Pretty-printer producing source that re-parses to the same tree."""

from __future__ import annotations

from typing import List

from . import nodes as n

_STR_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r", "\0": "\\0"}
_CHAR_ESCAPES = {"\\": "\\\\", "'": "\\'", "\n": "\\n", "\t": "\\t", "\r": "\\r", "\0": "\\0"}


def quote_str(s: str) -> str:
    return '"' + "".join(_STR_ESCAPES.get(c, c) for c in s) + '"'


def quote_char(c: str) -> str:
    return "'" + _CHAR_ESCAPES.get(c, c) + "'"


def type_str(t: n.TypeExpr) -> str:
    return str(t)


def expr_str(e: n.Expr) -> str:
    if isinstance(e, n.IntLit):
        return str(e.value)
    if isinstance(e, n.FloatLit):
        return e.text
    if isinstance(e, n.BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, n.StrLit):
        return quote_str(e.value)
    if isinstance(e, n.CharLit):
        return quote_char(e.value)
    if isinstance(e, n.UnitLit):
        return "()"
    if isinstance(e, n.Ident):
        return e.name
    if isinstance(e, n.Deref):
        return f"*{e.name}"
    if isinstance(e, n.ArrayLit):
        return "[" + ", ".join(map(expr_str, e.elements)) + "]"
    if isinstance(e, n.ArrayRepeat):
        return f"[{expr_str(e.element)}; {expr_str(e.count)}]"
    if isinstance(e, n.VecLit):
        return "vec![" + ", ".join(map(expr_str, e.elements)) + "]"
    if isinstance(e, n.Index):
        return f"{e.name}[{expr_str(e.index)}]"
    if isinstance(e, n.Paren):
        return f"({expr_str(e.inner)})"
    if isinstance(e, n.BlockExpr):
        return block_str(e.block, 0)
    if isinstance(e, n.Borrow):
        inner = expr_str(e.operand)
        prefix = "&mut " if e.mutable else "&"
        # keep `& &x` from lexing as `&&x` only where it matters
        if not e.mutable and inner.startswith("&"):
            prefix = "& "
        return prefix + inner
    if isinstance(e, n.StructLit):
        fields = ", ".join(f"{k}: {expr_str(v)}" for k, v in e.fields)
        return f"{e.name} {{ {fields} }}" if fields else f"{e.name} {{}}"
    if isinstance(e, n.Call):
        return f"{e.callee}(" + ", ".join(map(expr_str, e.args)) + ")"
    if isinstance(e, n.Neg):
        return "-" + expr_str(e.operand)
    if isinstance(e, n.Not):
        return "!" + expr_str(e.operand)
    if isinstance(e, n.BinOp):
        return f"{expr_str(e.lhs)} {e.op} {expr_str(e.rhs)}"
    if isinstance(e, n.FieldAccess):
        return f"{e.name}.{e.field}"
    raise TypeError(f"not an expression: {e!r}")


def _typed_ids(pairs) -> str:
    return ", ".join(f"{k}: {type_str(t)}" for k, t in pairs)


def block_str(b: n.Block, indent: int) -> str:
    pad = "    " * (indent + 1)
    lines: List[str] = ["{"]
    for s in b.stmts:
        lines.append(pad + stmt_str(s, indent + 1))
    if b.tail is not None:
        lines.append(pad + expr_str(b.tail))
    lines.append("    " * indent + "}")
    return "\n".join(lines)


def stmt_str(s: n.Stmt, indent: int = 0) -> str:
    if isinstance(s, n.Let):
        out = "let mut " if s.mutable else "let "
        out += s.name
        if s.type is not None:
            out += f": {type_str(s.type)}"
        if s.init is not None:
            out += f" = {expr_str(s.init)}"
        return out + ";"
    if isinstance(s, n.Assign):
        return f"{expr_str(s.target)} {s.op} {expr_str(s.value)};"
    if isinstance(s, n.ExprStmt):
        return expr_str(s.expr) + (";" if s.semi else "")
    if isinstance(s, n.Return):
        return "return;" if s.value is None else f"return {expr_str(s.value)};"
    if isinstance(s, n.If):
        out = f"if {expr_str(s.cond)} {block_str(s.then, indent)}"
        if s.orelse is not None:
            out += f" else {block_str(s.orelse, indent)}"
        return out
    if isinstance(s, n.While):
        return f"while {expr_str(s.cond)} {block_str(s.body, indent)}"
    if isinstance(s, n.Loop):
        return f"loop {block_str(s.body, indent)}"
    if isinstance(s, n.For):
        return f"for {s.var} in {expr_str(s.lo)}..{expr_str(s.hi)} {block_str(s.body, indent)}"
    if isinstance(s, n.BlockStmt):
        return block_str(s.block, indent)
    if isinstance(s, n.Function):
        ret = f" -> {type_str(s.ret)}" if s.ret is not None else ""
        return f"fn {s.name}({_typed_ids(s.params)}){ret} {block_str(s.body, indent)}"
    if isinstance(s, n.StructDecl):
        if not s.fields:
            return f"struct {s.name} {{}}"
        pad = "    " * (indent + 1)
        body = "\n".join(f"{pad}{k}: {type_str(t)}," for k, t in s.fields)
        return f"struct {s.name} {{\n{body}\n{'    ' * indent}}}"
    if isinstance(s, n.ConstStatic):
        kw = "static mut" if s.mutable else s.kind
        return f"{kw} {s.name}: {type_str(s.type)} = {expr_str(s.init)};"
    raise TypeError(f"not a statement: {s!r}")


def pretty(program: n.Program) -> str:
    return "\n\n".join(stmt_str(item) for item in program.items) + "\n"
