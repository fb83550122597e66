"""Recursive-descent parser for the KRust grammar."""

from __future__ import annotations

from typing import List, Optional, Tuple

from . import nodes as n
from .lexer import Token, tokenize
from .nodes import Span


class ParseError(Exception):
    def __init__(self, span: Span, expected: str, found: str):
        super().__init__(f"{span}: expected {expected}, found {found}")
        self.span = span
        self.expected = expected
        self.found = found


# binding power of each binary operator; comparisons are non-associative
_BINARY_PREC = {
    "||": 1,
    "&&": 2,
    "==": 3, "!=": 3, "<": 3, "<=": 3, ">": 3, ">=": 3,
    "|": 4,
    "&": 5,
    "<<": 6, ">>": 6,
    "+": 7, "-": 7,
    "*": 8, "/": 8, "%": 8,
}
_COMPARISONS = frozenset({"==", "!=", "<", "<=", ">", ">="})


class Parser:
    def __init__(self, tokens: List[Token]):
        self.toks = tokens
        self.pos = 0

    # -- token helpers -----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        i = min(self.pos + k, len(self.toks) - 1)
        return self.toks[i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "kw") and t.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        t = self.tok
        self.pos += 1
        return t

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.fail("identifier")
        t = self.tok
        self.pos += 1
        return t

    def fail(self, expected: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(t.span, expected, found)

    # -- items -------------------------------------------------------------

    def program(self) -> n.Program:
        items = []
        while self.tok.kind != "eof":
            if self.at("fn"):
                items.append(self.function())
            elif self.at("struct"):
                items.append(self.struct_decl())
            elif self.at("const") or self.at("static"):
                items.append(self.const_static())
            else:
                self.fail("item (fn, struct, const or static)")
        return n.Program(tuple(items), Span(1, 1))

    def function(self) -> n.Function:
        start = self.expect("fn").span
        name = self.ident().text
        self.expect("(")
        params = self.typed_ids(")")
        self.expect(")")
        ret = self.type_expr() if self.accept("->") else None
        body = self.block()
        return n.Function(name, params, ret, body, start)

    def typed_ids(self, closer: str) -> Tuple[Tuple[str, n.TypeExpr], ...]:
        out = []
        while not self.at(closer):
            name = self.ident().text
            self.expect(":")
            out.append((name, self.type_expr()))
            if not self.accept(","):
                break
        return tuple(out)

    def struct_decl(self) -> n.StructDecl:
        start = self.expect("struct").span
        name = self.ident().text
        self.expect("{")
        fields = self.typed_ids("}")
        self.expect("}")
        return n.StructDecl(name, fields, start)

    def const_static(self) -> n.ConstStatic:
        start = self.tok.span
        kind = self.tok.text
        self.pos += 1
        mutable = kind == "static" and self.accept("mut")
        name = self.ident().text
        self.expect(":")
        ty = self.type_expr()
        self.expect("=")
        init = self.expr()
        self.expect(";")
        return n.ConstStatic(kind, mutable, name, ty, init, start)

    # -- types -------------------------------------------------------------

    def type_expr(self) -> n.TypeExpr:
        t = self.tok
        if t.kind == "ident":
            self.pos += 1
            if t.text in n.PRIMITIVE_TYPES:
                return n.PrimType(t.text, t.span)
            return n.NamedType(t.text, t.span)
        if self.at("&"):
            self.pos += 1
            if self.tok.kind == "ident" and self.tok.text == "str":
                self.pos += 1
                return n.PrimType("&str", t.span)
            mutable = self.accept("mut")
            return n.RefType(mutable, self.type_expr(), t.span)
        if self.at("("):
            self.pos += 1
            self.expect(")")
            return n.UnitType(t.span)
        if self.at("["):
            self.pos += 1
            elem = self.type_expr()
            self.expect(";")
            if self.tok.kind != "int":
                self.fail("array length literal")
            length = self.tok.value
            self.pos += 1
            self.expect("]")
            return n.ArrayType(elem, length, t.span)
        if self.at("fn"):
            self.pos += 1
            self.expect("(")
            params = []
            while not self.at(")"):
                params.append(self.type_expr())
                if not self.accept(","):
                    break
            self.expect(")")
            ret = self.type_expr() if self.accept("->") else n.UnitType(t.span)
            return n.FnType(tuple(params), ret, t.span)
        self.fail("type")

    # -- blocks and statements ---------------------------------------------

    def block(self) -> n.Block:
        start = self.expect("{").span
        stmts: List[n.Stmt] = []
        tail: Optional[n.Expr] = None
        while not self.at("}"):
            if self.tok.kind == "eof":
                self.fail("'}'")
            stmt = self.statement()
            if isinstance(stmt, n.ExprStmt) and not stmt.semi:
                if self.at("}"):
                    tail = stmt.expr
                    break
                if not _block_like(stmt.expr):
                    self.fail("';'")
            stmts.append(stmt)
        self.expect("}")
        # a trailing block statement is the block's value, as in `{ stmts { e } }`
        if tail is None and stmts and isinstance(stmts[-1], n.BlockStmt) and stmts[-1].block.tail is not None:
            last = stmts.pop()
            tail = n.BlockExpr(last.block, last.span)
        return n.Block(tuple(stmts), tail, start)

    def statement(self) -> n.Stmt:
        t = self.tok
        if self.at("let"):
            return self.let_stmt()
        if self.at("fn"):
            return self.function()
        if self.at("struct"):
            return self.struct_decl()
        if self.at("const") or self.at("static"):
            return self.const_static()
        if self.at("return"):
            self.pos += 1
            value = None if self.at(";") else self.expr()
            self.expect(";")
            return n.Return(value, t.span)
        if self.at("if"):
            s = self.if_stmt()
            self.accept(";")
            return s
        if self.at("while"):
            self.pos += 1
            cond = self.expr(no_struct=True)
            body = self.block()
            self.accept(";")
            return n.While(cond, body, t.span)
        if self.at("loop"):
            self.pos += 1
            body = self.block()
            self.accept(";")
            return n.Loop(body, t.span)
        if self.at("for"):
            self.pos += 1
            var = self.ident().text
            self.expect("in")
            lo = self.expr(no_struct=True)
            self.expect("..")
            hi = self.expr(no_struct=True)
            body = self.block()
            self.accept(";")
            return n.For(var, lo, hi, body, t.span)
        if self.at("{"):
            b = self.block()
            if self.accept(";"):
                return n.ExprStmt(n.BlockExpr(b, t.span), True, t.span)
            return n.BlockStmt(b, t.span)
        expr = self.expr()
        if self.tok.kind == "op" and self.tok.text in n.ASSIGN_OPS:
            op = self.tok.text
            if not isinstance(expr, (n.Ident, n.Index, n.Deref, n.FieldAccess)):
                raise ParseError(t.span, "assignable place", "expression")
            self.pos += 1
            value = self.expr()
            self.expect(";")
            return n.Assign(expr, op, value, t.span)
        if self.accept(";"):
            return n.ExprStmt(expr, True, t.span)
        return n.ExprStmt(expr, False, t.span)

    def let_stmt(self) -> n.Let:
        start = self.expect("let").span
        mutable = self.accept("mut")
        name = self.ident().text
        ty = self.type_expr() if self.accept(":") else None
        init = self.expr() if self.accept("=") else None
        self.expect(";")
        return n.Let(mutable, name, ty, init, start)

    def if_stmt(self) -> n.If:
        start = self.expect("if").span
        cond = self.expr(no_struct=True)
        then = self.block()
        orelse = None
        if self.accept("else"):
            if self.at("if"):
                inner = self.if_stmt()
                orelse = n.Block((inner,), None, inner.span)
            else:
                orelse = self.block()
        return n.If(cond, then, orelse, start)

    # -- expressions -------------------------------------------------------

    def expr(self, no_struct: bool = False) -> n.Expr:
        return self.binary(1, no_struct)

    def binary(self, min_prec: int, no_struct: bool) -> n.Expr:
        lhs = self.unary(no_struct)
        while True:
            t = self.tok
            prec = _BINARY_PREC.get(t.text) if t.kind == "op" else None
            if prec is None or prec < min_prec:
                return lhs
            self.pos += 1
            rhs = self.binary(prec + 1, no_struct)
            lhs = n.BinOp(t.text, lhs, rhs, _span_of(lhs))
            if t.text in _COMPARISONS and self.tok.kind == "op" and self.tok.text in _COMPARISONS:
                self.fail("end of comparison (comparison operators are non-associative)")

    def unary(self, no_struct: bool) -> n.Expr:
        t = self.tok
        if self.at("-"):
            self.pos += 1
            return n.Neg(self.unary(no_struct), t.span)
        if self.at("!"):
            self.pos += 1
            return n.Not(self.unary(no_struct), t.span)
        if self.at("*"):
            self.pos += 1
            return n.Deref(self.ident().text, t.span)
        if self.at("&&"):
            # `&&x` is two borrows
            self.pos += 1
            mutable = self.accept("mut")
            inner = n.Borrow(mutable, self.unary(no_struct), t.span)
            return n.Borrow(False, inner, t.span)
        if self.at("&"):
            self.pos += 1
            mutable = self.accept("mut")
            return n.Borrow(mutable, self.unary(no_struct), t.span)
        return self.primary(no_struct)

    def primary(self, no_struct: bool) -> n.Expr:
        t = self.tok
        if t.kind == "int":
            self.pos += 1
            return n.IntLit(t.value, t.span)
        if t.kind == "float":
            self.pos += 1
            return n.FloatLit(t.text, t.span)
        if t.kind == "str":
            self.pos += 1
            return n.StrLit(t.value, t.span)
        if t.kind == "char":
            self.pos += 1
            return n.CharLit(t.value, t.span)
        if self.at("true") or self.at("false"):
            self.pos += 1
            return n.BoolLit(t.text == "true", t.span)
        if t.kind == "macro":
            self.pos += 1
            if t.text == "vec!":
                self.expect("[")
                elems = self.expr_list("]")
                self.expect("]")
                return n.VecLit(elems, t.span)
            self.expect("(")
            args = self.expr_list(")")
            self.expect(")")
            if not args or not isinstance(args[0], n.StrLit):
                raise ParseError(t.span, "format string literal", "println! without one")
            return n.Call("println!", args, t.span)
        if t.kind == "ident":
            return self.ident_expr(no_struct)
        if self.at("("):
            self.pos += 1
            if self.accept(")"):
                return n.UnitLit(t.span)
            inner = self.expr()
            self.expect(")")
            return n.Paren(inner, t.span)
        if self.at("["):
            self.pos += 1
            if self.accept("]"):
                return n.ArrayLit((), t.span)
            first = self.expr()
            if self.accept(";"):
                count = self.expr()
                self.expect("]")
                return n.ArrayRepeat(first, count, t.span)
            elems = [first]
            while self.accept(","):
                if self.at("]"):
                    break
                elems.append(self.expr())
            self.expect("]")
            return n.ArrayLit(tuple(elems), t.span)
        if self.at("{"):
            return n.BlockExpr(self.block(), t.span)
        self.fail("expression")

    def ident_expr(self, no_struct: bool) -> n.Expr:
        t = self.ident()
        if self.at("("):
            self.pos += 1
            args = self.expr_list(")")
            self.expect(")")
            return n.Call(t.text, args, t.span)
        if self.at("["):
            self.pos += 1
            idx = self.expr()
            self.expect("]")
            return n.Index(t.text, idx, t.span)
        if self.at("."):
            self.pos += 1
            return n.FieldAccess(t.text, self.ident().text, t.span)
        if not no_struct and self.at("{") and self._struct_lit_ahead():
            self.pos += 1
            fields = []
            while not self.at("}"):
                fname = self.ident().text
                self.expect(":")
                fields.append((fname, self.expr()))
                if not self.accept(","):
                    break
            self.expect("}")
            return n.StructLit(t.text, tuple(fields), t.span)
        return n.Ident(t.text, t.span)

    def _struct_lit_ahead(self) -> bool:
        nxt = self.peek(1)
        if nxt.kind == "op" and nxt.text == "}":
            return True
        after = self.peek(2)
        return nxt.kind == "ident" and after.kind == "op" and after.text == ":"

    def expr_list(self, closer: str) -> Tuple[n.Expr, ...]:
        out = []
        while not self.at(closer):
            out.append(self.expr())
            if not self.accept(","):
                break
        return tuple(out)


def _block_like(expr: n.Expr) -> bool:
    return isinstance(expr, n.BlockExpr)


def _span_of(node) -> Span:
    return getattr(node, "span", n.NO_SPAN)


def parse(tokens: List[Token]) -> n.Program:
    return Parser(tokens).program()


def parse_source(source: str) -> n.Program:
    return parse(tokenize(source))
