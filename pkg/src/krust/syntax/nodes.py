"""Abstract syntax for the KRust subset.

Every node carries a ``span`` that is excluded from equality, so two trees
parsed from differently formatted sources compare equal when their structure
matches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union


@dataclass(frozen=True)
class Span:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


NO_SPAN = Span(0, 0)


def _span() -> Span:
    return field(default=NO_SPAN, compare=False, repr=False)


# -- types -----------------------------------------------------------------

PRIMITIVE_TYPES = (
    "i8", "u8", "i16", "u16", "i32", "u32", "i64", "u64",
    "f32", "f64", "isize", "usize", "char", "&str", "bool",
)
INT_TYPES = ("i8", "u8", "i16", "u16", "i32", "u32", "i64", "u64", "isize", "usize")
FLOAT_TYPES = ("f32", "f64")


@dataclass(frozen=True)
class PrimType:
    name: str
    span: Span = _span()

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class NamedType:
    name: str
    span: Span = _span()

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class UnitType:
    span: Span = _span()

    def __str__(self) -> str:
        return "()"


@dataclass(frozen=True)
class ArrayType:
    elem: "TypeExpr"
    length: int
    span: Span = _span()

    def __str__(self) -> str:
        return f"[{self.elem}; {self.length}]"


@dataclass(frozen=True)
class FnType:
    params: Tuple["TypeExpr", ...]
    ret: "TypeExpr"
    span: Span = _span()

    def __str__(self) -> str:
        return f"fn({', '.join(map(str, self.params))}) -> {self.ret}"


@dataclass(frozen=True)
class RefType:
    mutable: bool
    inner: "TypeExpr"
    span: Span = _span()

    def __str__(self) -> str:
        return f"&mut {self.inner}" if self.mutable else f"&{self.inner}"


TypeExpr = Union[PrimType, NamedType, UnitType, ArrayType, FnType, RefType]

_PRIM_CACHE = {name: PrimType(name) for name in PRIMITIVE_TYPES}
UNIT = UnitType()


def prim(name: str) -> PrimType:
    return _PRIM_CACHE[name]


# -- expressions -----------------------------------------------------------

@dataclass(frozen=True)
class IntLit:
    value: int
    span: Span = _span()


@dataclass(frozen=True)
class FloatLit:
    text: str
    span: Span = _span()

    @property
    def value(self) -> float:
        return float(self.text.replace("_", ""))


@dataclass(frozen=True)
class BoolLit:
    value: bool
    span: Span = _span()


@dataclass(frozen=True)
class StrLit:
    value: str
    span: Span = _span()


@dataclass(frozen=True)
class CharLit:
    value: str
    span: Span = _span()


@dataclass(frozen=True)
class UnitLit:
    span: Span = _span()


@dataclass(frozen=True)
class Ident:
    name: str
    span: Span = _span()


@dataclass(frozen=True)
class Deref:
    name: str
    span: Span = _span()


@dataclass(frozen=True)
class ArrayLit:
    elements: Tuple["Expr", ...]
    span: Span = _span()


@dataclass(frozen=True)
class ArrayRepeat:
    element: "Expr"
    count: "Expr"
    span: Span = _span()


@dataclass(frozen=True)
class VecLit:
    elements: Tuple["Expr", ...]
    span: Span = _span()


@dataclass(frozen=True)
class Index:
    name: str
    index: "Expr"
    span: Span = _span()


@dataclass(frozen=True)
class Paren:
    inner: "Expr"
    span: Span = _span()


@dataclass(frozen=True)
class BlockExpr:
    block: "Block"
    span: Span = _span()


@dataclass(frozen=True)
class Borrow:
    mutable: bool
    operand: "Expr"
    span: Span = _span()


@dataclass(frozen=True)
class StructLit:
    name: str
    fields: Tuple[Tuple[str, "Expr"], ...]
    span: Span = _span()


@dataclass(frozen=True)
class Call:
    callee: str
    args: Tuple["Expr", ...]
    span: Span = _span()


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    span: Span = _span()


@dataclass(frozen=True)
class Not:
    operand: "Expr"
    span: Span = _span()


@dataclass(frozen=True)
class BinOp:
    op: str
    lhs: "Expr"
    rhs: "Expr"
    span: Span = _span()


@dataclass(frozen=True)
class FieldAccess:
    name: str
    field: str
    span: Span = _span()


Expr = Union[
    IntLit, FloatLit, BoolLit, StrLit, CharLit, UnitLit, Ident, Deref,
    ArrayLit, ArrayRepeat, VecLit, Index, Paren, BlockExpr, Borrow,
    StructLit, Call, Neg, Not, BinOp, FieldAccess,
]

BINARY_OPS = (
    "+", "-", "*", "/", "%", "|", "&", ">>", "<<",
    "<", "<=", ">", ">=", "==", "!=", "||", "&&",
)
ASSIGN_OPS = ("=", "+=", "-=", "*=", "/=")


# -- statements and items --------------------------------------------------

@dataclass(frozen=True)
class Block:
    stmts: Tuple["Stmt", ...]
    tail: Optional[Expr] = None
    span: Span = _span()


@dataclass(frozen=True)
class Let:
    mutable: bool
    name: str
    type: Optional[TypeExpr]
    init: Optional[Expr]
    span: Span = _span()


@dataclass(frozen=True)
class Assign:
    target: Expr  # Ident | Index | Deref | FieldAccess
    op: str
    value: Expr
    span: Span = _span()


@dataclass(frozen=True)
class ExprStmt:
    expr: Expr
    semi: bool = True
    span: Span = _span()


@dataclass(frozen=True)
class Return:
    value: Optional[Expr]
    span: Span = _span()


@dataclass(frozen=True)
class If:
    cond: Expr
    then: Block
    orelse: Optional[Block]
    span: Span = _span()


@dataclass(frozen=True)
class While:
    cond: Expr
    body: Block
    span: Span = _span()


@dataclass(frozen=True)
class Loop:
    body: Block
    span: Span = _span()


@dataclass(frozen=True)
class For:
    var: str
    lo: Expr
    hi: Expr
    body: Block
    span: Span = _span()


@dataclass(frozen=True)
class BlockStmt:
    block: Block
    span: Span = _span()


@dataclass(frozen=True)
class Function:
    name: str
    params: Tuple[Tuple[str, TypeExpr], ...]
    ret: Optional[TypeExpr]
    body: Block
    span: Span = _span()


@dataclass(frozen=True)
class StructDecl:
    name: str
    fields: Tuple[Tuple[str, TypeExpr], ...]
    span: Span = _span()


@dataclass(frozen=True)
class ConstStatic:
    kind: str  # "const" | "static"
    mutable: bool
    name: str
    type: TypeExpr
    init: Expr
    span: Span = _span()


Item = Union[Function, StructDecl, ConstStatic]
Stmt = Union[Let, Assign, ExprStmt, Return, If, While, Loop, For, BlockStmt, Function, StructDecl, ConstStatic]


@dataclass(frozen=True)
class Program:
    items: Tuple[Item, ...]
    span: Span = _span()

    def function(self, name: str) -> Optional[Function]:
        for item in self.items:
            if isinstance(item, Function) and item.name == name:
                return item
        return None
