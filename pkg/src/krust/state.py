"""Machine configuration: the cells of the KRust state and their bookkeeping.

Locations are plain ints handed out by a monotonically increasing ``next_loc``
counter. Undefined cell entries (bottom) are ``None`` in the
location-keyed maps and :data:`BOTTOM` in the store.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Set, Tuple

from .syntax import nodes as n
from .syntax.printer import expr_str, quote_char, quote_str, stmt_str

Location = int


# -- values ----------------------------------------------------------------

@dataclass(slots=True)
class IntV:
    value: int
    ty: str
    lit: bool = False  # untyped literal that may still adopt a declared type

    def __str__(self) -> str:
        return str(self.value)


@dataclass(slots=True)
class FloatV:
    value: float
    ty: str
    lit: bool = False

    def __str__(self) -> str:
        return repr(self.value)


@dataclass(slots=True)
class BoolV:
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


@dataclass(slots=True)
class CharV:
    value: str

    def __str__(self) -> str:
        return quote_char(self.value)


@dataclass(slots=True)
class StrV:
    value: str

    def __str__(self) -> str:
        return quote_str(self.value)


class UnitValue:
    __slots__ = ()

    def __str__(self) -> str:
        return "()"

    __repr__ = __str__


class Undefined:
    __slots__ = ()

    def __str__(self) -> str:
        return "⊥"

    __repr__ = __str__


UNIT = UnitValue()
BOTTOM = Undefined()


@dataclass(slots=True, eq=False)
class ClosureV:
    """A function value: parameters, body statements and return type."""

    name: str
    params: Tuple[Tuple[str, n.TypeExpr], ...]
    body: n.Block
    ret: n.TypeExpr

    def __str__(self) -> str:
        ps = ", ".join(f"{k}: {t}" for k, t in self.params)
        return f"λ(({ps}), {self.name}, {self.ret})"


@dataclass(slots=True, eq=False)
class StructDescV:
    name: str
    fields: Tuple[Tuple[str, n.TypeExpr], ...]

    def __str__(self) -> str:
        return "F1(" + ", ".join(f"{k}: {t}" for k, t in self.fields) + ")"


@dataclass(slots=True)
class StructInstV:
    type_name: str

    def __str__(self) -> str:
        return f"{self.type_name} {{..}}"


@dataclass(slots=True)
class RefV:
    target: Location
    mutable: bool
    src: Optional[Location] = None  # location the reference was read from, if any

    def __str__(self) -> str:
        return f"&mut {self.target}" if self.mutable else f"&{self.target}"


@dataclass(slots=True)
class ArrayV:
    """Transient array value; arrays live in the store element-by-element."""

    elems: Tuple[Any, ...]
    elem_type: n.TypeExpr

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.elems)) + "]"


Value = Any  # one of the classes above

CODE_VALUES = (ClosureV, StructDescV)


def render_value(v) -> str:
    return str(v)


# -- diagnostics -----------------------------------------------------------

class Category(str, enum.Enum):
    ParseError = "ParseError"
    UnboundIdentifier = "UnboundIdentifier"
    AssignToImmutable = "AssignToImmutable"
    TypeMismatch = "TypeMismatch"
    UseAfterMove = "UseAfterMove"
    MutBorrowOfImmutable = "MutBorrowOfImmutable"
    BorrowConflict = "BorrowConflict"
    LifetimeError = "LifetimeError"
    WriteThroughSharedRef = "WriteThroughSharedRef"
    NotAReference = "NotAReference"
    UninitializedRead = "UninitializedRead"
    IndexOutOfBounds = "IndexOutOfBounds"
    ArityMismatch = "ArityMismatch"
    Overflow = "Overflow"
    DivideByZero = "DivideByZero"
    MissingMain = "MissingMain"
    DuplicateDefinition = "DuplicateDefinition"
    Stuck = "Stuck"

    def __str__(self) -> str:
        return self.value


RUNTIME_CATEGORIES = frozenset({
    Category.IndexOutOfBounds, Category.Overflow,
    Category.DivideByZero, Category.UninitializedRead,
})


@dataclass(frozen=True)
class Diagnostic:
    category: Category
    message: str
    span: Optional[n.Span] = None

    @property
    def line(self) -> Optional[int]:
        return self.span.line if self.span is not None and self.span.line > 0 else None

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{self.category}: {where}{self.message}"


class KrustError(Exception):
    """Raised by rule preconditions; carries the Diagnostic that names the failure."""

    def __init__(self, category: Category, message: str, span: Optional[n.Span] = None):
        super().__init__(message)
        self.diagnostic = Diagnostic(category, message, span)


# -- configuration ---------------------------------------------------------

@dataclass
class ScopeRecord:
    saved_env: Dict[str, Location]
    allocs: List[Location] = field(default_factory=list)


@dataclass
class Frame:
    saved_env: Dict[str, Location]
    saved_scopes: List[ScopeRecord]
    saved_kont: List[Any]
    return_type: n.TypeExpr
    fn_name: str


@dataclass
class Configuration:
    kont: List[Any] = field(default_factory=list)
    env: Dict[str, Location] = field(default_factory=dict)
    scopes: List[ScopeRecord] = field(default_factory=list)
    genv: Dict[str, Location] = field(default_factory=dict)
    fstack: List[Frame] = field(default_factory=list)
    store: Dict[Location, Any] = field(default_factory=dict)
    type_env: Dict[Location, Optional[n.TypeExpr]] = field(default_factory=dict)
    mut_type: Dict[Location, int] = field(default_factory=dict)
    next_loc: Location = 0
    borrow: Dict[Location, Optional[int]] = field(default_factory=dict)
    ref: Dict[Location, Optional[Location]] = field(default_factory=dict)
    ref_type: Dict[Location, Optional[int]] = field(default_factory=dict)
    moved: Dict[Location, int] = field(default_factory=dict)
    out: List[str] = field(default_factory=list)
    time: Dict[str, int] = field(default_factory=dict)
    time_enabled: bool = False
    # bookkeeping outside the rendered cells
    global_scope: ScopeRecord = field(default_factory=lambda: ScopeRecord({}))
    referrers: Dict[Location, Set[Location]] = field(default_factory=dict)
    dead: Set[Location] = field(default_factory=set)
    result: Any = None

    @property
    def output(self) -> str:
        return "".join(self.out)

    def current_scope(self) -> ScopeRecord:
        return self.scopes[-1] if self.scopes else self.global_scope

    def lookup_loc(self, name: str) -> Optional[Location]:
        loc = self.env.get(name)
        if loc is None:
            loc = self.genv.get(name)
        return loc


def fresh_configuration() -> Configuration:
    return Configuration()


def allocate(cfg: Configuration, ty: Optional[n.TypeExpr], mutable: bool) -> Location:
    """Allocate one location with every location-keyed cell initialized."""
    loc = cfg.next_loc
    cfg.next_loc = loc + 1
    cfg.store[loc] = BOTTOM
    cfg.type_env[loc] = ty
    cfg.mut_type[loc] = 1 if mutable else 0
    cfg.borrow[loc] = None
    cfg.ref[loc] = None
    cfg.ref_type[loc] = None
    cfg.moved[loc] = 0
    cfg.current_scope().allocs.append(loc)
    return loc


def allocate_array(cfg: Configuration, elem_type: n.TypeExpr, count: int, mutable: bool) -> Location:
    """Allocate ``count`` consecutive element locations; the base carries the array type.

    A zero-length array still reserves its base location so that no two
    allocations share a location.
    """
    if count < 0:
        raise ValueError("negative array length")
    base = allocate(cfg, n.ArrayType(elem_type, count), mutable)
    for i in range(1, count):
        cfg.store[base + i] = BOTTOM
    cfg.next_loc = base + max(count, 1)
    return base


def allocate_code(cfg: Configuration, value) -> Location:
    """Allocate a location holding a function or struct descriptor (store only)."""
    loc = cfg.next_loc
    cfg.next_loc = loc + 1
    cfg.store[loc] = value
    cfg.current_scope().allocs.append(loc)
    return loc


# -- rendering -------------------------------------------------------------

CELL_NAMES = (
    "k", "env", "genv", "typeEnv", "store", "mutType", "nextLoc", "borrow",
    "ref", "refType", "moved", "fstack", "out", "time",
)


def _bottom(v) -> str:
    return "⊥" if v is None else str(v)


def _map(name: str, entries) -> str:
    body = " ".join(f"{k} |-> {v}" for k, v in entries)
    return f"<{name}> {body} </{name}>" if body else f"<{name}> </{name}>"


def describe(item) -> str:
    """Human-readable form of one continuation item."""
    if isinstance(item, (n.Let, n.Assign, n.ExprStmt, n.Return, n.If, n.While, n.Loop,
                         n.For, n.BlockStmt, n.Function, n.StructDecl, n.ConstStatic)):
        return " ".join(stmt_str(item).split())
    if hasattr(item, "__dataclass_fields__") and type(item).__module__.endswith("nodes"):
        try:
            return " ".join(expr_str(item).split())
        except TypeError:
            return repr(item)
    return str(item)


def render_cell(cfg: Configuration, cell: str, show_code: bool = False) -> str:
    """Render one cell as ``<name> key |-> value ... </name>`` with sorted keys.

    Function and struct descriptors are left out of the store unless
    ``show_code`` is set.
    """
    if cell == "k":
        body = " ~> ".join(describe(item) for item in reversed(cfg.kont))
        return f"<k> {body} </k>" if body else "<k> </k>"
    if cell == "env":
        return _map("env", sorted(cfg.env.items()))
    if cell == "genv":
        return _map("genv", sorted(cfg.genv.items()))
    if cell == "typeEnv":
        return _map("typeEnv", ((k, _bottom(v)) for k, v in sorted(cfg.type_env.items())))
    if cell == "store":
        entries = sorted(
            (k, v) for k, v in cfg.store.items() if show_code or not isinstance(v, CODE_VALUES)
        )
        return _map("store", entries)
    if cell == "mutType":
        return _map("mutType", sorted(cfg.mut_type.items()))
    if cell == "nextLoc":
        return f"<nextLoc> {cfg.next_loc} </nextLoc>"
    if cell == "borrow":
        return _map("borrow", ((k, _bottom(v)) for k, v in sorted(cfg.borrow.items())))
    if cell == "ref":
        return _map("ref", ((k, _bottom(v)) for k, v in sorted(cfg.ref.items())))
    if cell == "refType":
        return _map("refType", ((k, _bottom(v)) for k, v in sorted(cfg.ref_type.items())))
    if cell == "moved":
        return _map("moved", sorted(cfg.moved.items()))
    if cell == "fstack":
        frames = " ".join(
            f"({_map('env', sorted(f.saved_env.items()))}, {f.fn_name}, {f.return_type})"
            for f in reversed(cfg.fstack)
        )
        return f"<fstack> {frames} </fstack>" if frames else "<fstack> </fstack>"
    if cell == "out":
        return f"<out> {quote_str(cfg.output)} </out>"
    if cell == "time":
        return _map("time", sorted(cfg.time.items()))
    raise ValueError(f"unknown cell {cell!r}; expected one of {', '.join(CELL_NAMES)}")
