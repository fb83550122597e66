"""Small-step rewrite engine over :class:`~krust.state.Configuration`.

The continuation ``cfg.kont`` is a stack whose last element is the redex.
It holds three kinds of items:

* AST statements and expressions still to be executed or evaluated,
* runtime values produced by a finished evaluation, and
* context frames (``K*`` classes) waiting for the value above them.

``step`` applies exactly one rule and reports its name. Rule preconditions
that fail raise :class:`~krust.state.KrustError`, which ``step`` turns into a
``Failed`` result naming the violated precondition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

from ..state import (
    BOTTOM, UNIT, ArrayV, BoolV, Category, CharV, ClosureV, Configuration, Diagnostic,
    FloatV, Frame, IntV, KrustError, RefV, ScopeRecord, StrV, StructDescV, StructInstV,
    UnitValue, allocate, allocate_array, allocate_code, fresh_configuration,
)
from ..syntax import nodes as n
from .formatting import render_println
from .operators import coerce, eval_binop, eval_neg, eval_not, get_type

VALUE_TYPES = frozenset({
    IntV, FloatV, BoolV, CharV, StrV, UnitValue, ClosureV, RefV, ArrayV, StructInstV,
})
SCALAR_TYPES = (n.PrimType,)

# The named memory-model rules; every other tag is control-flow or operator plumbing.
CORE_RULES = frozenset({
    "Declaration-of-Immutable-Variable", "Declaration-of-Mutable-Variable",
    "Lookup-of-Variable", "Assignment", "Declaration-of-Mutable-Array",
    "Updating-of-Array-Element", "Evaluation-of-Array-Element",
    "Mutable-Reference", "Immutable-Reference", "Dereference",
    "Function-Definition-with-Return-Type", "mkDecls-Helper-Function", "Function-Call",
    "Function-Definition-without-Return-Type", "Function-Definition-Return-by-Last-Expression",
    "Return", "Struct-Definition", "Declaration-of-Struct-Instance", "F1-F2-Helper-Function",
    "Ownership-Move", "F3-Helper-Function", "F4-Helper-Function",
    "Evaluation-of-Struct-Field", "Updating-of-Struct-Field",
})


# -- step results ----------------------------------------------------------

@dataclass
class Continue:
    cfg: Configuration
    tag: str


@dataclass
class Done:
    cfg: Configuration


@dataclass
class Failed:
    diagnostic: Diagnostic
    cfg: Configuration


StepResult = Any  # Continue | Done | Failed


# -- context frames and internal tasks -------------------------------------

class _Item:
    __slots__ = ("span",)

    def __str__(self) -> str:
        return type(self).__name__


class KLet(_Item):
    __slots__ = ("stmt",)

    def __init__(self, stmt: n.Let):
        self.stmt = stmt
        self.span = stmt.span

    def __str__(self):
        return f"let {self.stmt.name} = []"


class KAssign(_Item):
    __slots__ = ("stmt",)

    def __init__(self, stmt: n.Assign):
        self.stmt = stmt
        self.span = stmt.span

    def __str__(self):
        return "[] =: " + type(self.stmt.target).__name__


class KAssignIndex(_Item):
    __slots__ = ("stmt", "value")

    def __init__(self, stmt: n.Assign, value):
        self.stmt = stmt
        self.value = value
        self.span = stmt.span

    def __str__(self):
        return f"{self.stmt.target.name}[[]] = {self.value}"


class KDiscard(_Item):
    __slots__ = ()

    def __init__(self, span):
        self.span = span

    def __str__(self):
        return "[];"


class KReturn(_Item):
    __slots__ = ()

    def __init__(self, span):
        self.span = span

    def __str__(self):
        return "return [];"


class KIf(_Item):
    __slots__ = ("stmt",)

    def __init__(self, stmt: n.If):
        self.stmt = stmt
        self.span = stmt.span

    def __str__(self):
        return "if [] {..}"


class KWhile(_Item):
    __slots__ = ("stmt",)

    def __init__(self, stmt: n.While):
        self.stmt = stmt
        self.span = stmt.span

    def __str__(self):
        return "while [] {..}"


class KForLo(_Item):
    __slots__ = ("stmt",)

    def __init__(self, stmt: n.For):
        self.stmt = stmt
        self.span = stmt.span


class KForHi(_Item):
    __slots__ = ("stmt", "lo")

    def __init__(self, stmt: n.For, lo):
        self.stmt = stmt
        self.lo = lo
        self.span = stmt.span


class ForIter(_Item):
    __slots__ = ("stmt", "cur", "hi", "ty")

    def __init__(self, stmt: n.For, cur: int, hi: int, ty: str):
        self.stmt = stmt
        self.cur = cur
        self.hi = hi
        self.ty = ty
        self.span = stmt.span

    def __str__(self):
        return f"for {self.stmt.var} in {self.cur}..{self.hi}"


class BlockExit(_Item):
    __slots__ = ("scope",)

    def __init__(self, scope: ScopeRecord, span):
        self.scope = scope
        self.span = span

    def __str__(self):
        return "exitBlock"


class KBinL(_Item):
    __slots__ = ("op", "rhs")

    def __init__(self, node: n.BinOp):
        self.op = node.op
        self.rhs = node.rhs
        self.span = node.span

    def __str__(self):
        return f"[] {self.op} .."


class KBinR(_Item):
    __slots__ = ("op", "lhs")

    def __init__(self, op: str, lhs, span):
        self.op = op
        self.lhs = lhs
        self.span = span

    def __str__(self):
        return f"{self.lhs} {self.op} []"


class KShort(_Item):
    __slots__ = ("op", "rhs")

    def __init__(self, node: n.BinOp):
        self.op = node.op
        self.rhs = node.rhs
        self.span = node.span


class KBoolRhs(_Item):
    __slots__ = ("op",)

    def __init__(self, op: str, span):
        self.op = op
        self.span = span


class KUnary(_Item):
    __slots__ = ("op",)

    def __init__(self, op: str, span):
        self.op = op
        self.span = span

    def __str__(self):
        return f"{self.op}[]"


class KIndex(_Item):
    __slots__ = ("name",)

    def __init__(self, node: n.Index):
        self.name = node.name
        self.span = node.span

    def __str__(self):
        return f"{self.name}[[]]"


class KArray(_Item):
    __slots__ = ("elems", "vals")

    def __init__(self, elems, span):
        self.elems = elems
        self.vals: List[Any] = []
        self.span = span

    def __str__(self):
        return f"[{len(self.vals)}/{len(self.elems)} ..]"


class KRepeatElem(_Item):
    __slots__ = ("count",)

    def __init__(self, node: n.ArrayRepeat):
        self.count = node.count
        self.span = node.span


class KRepeatCount(_Item):
    __slots__ = ("elem",)

    def __init__(self, elem, span):
        self.elem = elem
        self.span = span


class KCall(_Item):
    __slots__ = ("args", "closure", "vals")

    def __init__(self, node: n.Call):
        self.args = node.args
        self.closure: Optional[ClosureV] = None
        self.vals: List[Any] = []
        self.span = node.span

    def __str__(self):
        return f"call({len(self.vals)}/{len(self.args)})"


class Apply(_Item):
    __slots__ = ("closure", "args")

    def __init__(self, closure: ClosureV, args, span):
        self.closure = closure
        self.args = args
        self.span = span

    def __str__(self):
        return f"{self.closure}({', '.join(map(str, self.args))})"


class KPrintln(_Item):
    __slots__ = ("fmt", "args", "vals")

    def __init__(self, node: n.Call):
        self.fmt = node.args[0].value
        self.args = node.args[1:]
        self.vals: List[Any] = []
        self.span = node.span

    def __str__(self):
        return "println!(..)"


class MkDecls(_Item):
    __slots__ = ("params", "vals", "i")

    def __init__(self, params, vals, i, span):
        self.params = params
        self.vals = vals
        self.i = i
        self.span = span

    def __str__(self):
        rest = self.params[self.i:]
        return "mkDecls(" + ", ".join(f"{k}: {t}" for k, t in rest) + ")"


class DeclBind(_Item):
    """``let X: T = V;`` with an already evaluated value."""

    __slots__ = ("name", "mutable", "type", "value")

    def __init__(self, name, mutable, ty, value, span):
        self.name = name
        self.mutable = mutable
        self.type = ty
        self.value = value
        self.span = span

    def __str__(self):
        return f"let {self.name}: {self.type} = {self.value};"


class InitLoc(_Item):
    __slots__ = ("loc", "value")

    def __init__(self, loc, value, span):
        self.loc = loc
        self.value = value
        self.span = span

    def __str__(self):
        return f"init({self.loc}, {self.value})"


class KStructFields(_Item):
    """Evaluates struct-literal field initializers, in source order."""

    __slots__ = ("stmt", "lit", "vals")

    def __init__(self, stmt, lit: n.StructLit):
        self.stmt = stmt
        self.lit = lit
        self.vals: List[Any] = []
        self.span = lit.span


class DeclStruct(_Item):
    __slots__ = ("name", "mutable", "type_name", "inits")

    def __init__(self, name, mutable, type_name, inits, span):
        self.name = name
        self.mutable = mutable
        self.type_name = type_name
        self.inits = inits  # tuple of (field, value) pairs or None
        self.span = span

    def __str__(self):
        return f"let {self.name} = {self.type_name} {{..}};"


class F2(_Item):
    __slots__ = ("var", "fields", "vals", "i", "mutable")

    def __init__(self, var, fields, vals, mutable, span):
        self.var = var
        self.fields = fields
        self.vals = vals
        self.i = 0
        self.mutable = mutable
        self.span = span

    def __str__(self):
        return f"F2(F1({', '.join(f for f, _ in self.fields[self.i:])}), {self.var})"


class F3(_Item):
    __slots__ = ("dst", "src", "fields", "i", "init")

    def __init__(self, dst, src, fields, init, span):
        self.dst = dst
        self.src = src
        self.fields = fields
        self.i = 0
        self.init = init
        self.span = span

    def __str__(self):
        return f"F3({self.dst}, {self.src}, {', '.join(f for f, _ in self.fields[self.i:])})"


class F4(_Item):
    __slots__ = ("src",)

    def __init__(self, src, span):
        self.src = src
        self.span = span

    def __str__(self):
        return f"F4({self.src})"


class FieldStore(_Item):
    __slots__ = ("var", "field", "init")

    def __init__(self, var, field, init, span):
        self.var = var
        self.field = field
        self.init = init
        self.span = span

    def __str__(self):
        return f"{self.var}.{self.field} = [];"


class KConst(_Item):
    __slots__ = ("loc",)

    def __init__(self, loc, span):
        self.loc = loc
        self.span = span


class KHalt(_Item):
    __slots__ = ()

    def __init__(self):
        self.span = None

    def __str__(self):
        return "halt"


# -- helpers ---------------------------------------------------------------

def _err(cat: Category, msg: str, span=None):
    raise KrustError(cat, msg, span)


def resolve(cfg: Configuration, name: str, span=None) -> int:
    loc = cfg.env.get(name)
    if loc is None:
        loc = cfg.genv.get(name)
        if loc is None:
            _err(Category.UnboundIdentifier, f"cannot find value `{name}` in this scope", span)
    return loc


def _is_struct_type(ty) -> bool:
    return type(ty) is n.NamedType


def _struct_desc(cfg: Configuration, name: str, span) -> StructDescV:
    loc = cfg.env.get(name)
    if loc is None:
        loc = cfg.genv.get(name)
    desc = cfg.store.get(loc) if loc is not None else None
    if not isinstance(desc, StructDescV):
        _err(Category.UnboundIdentifier, f"cannot find struct `{name}` in this scope", span)
    return desc


def read_loc(cfg: Configuration, loc: int, span=None):
    """Value held at ``loc``, gathering arrays element by element."""
    ty = cfg.type_env.get(loc)
    if type(ty) is n.ArrayType:
        elems = []
        for i in range(ty.length):
            v = cfg.store.get(loc + i, BOTTOM)
            if v is BOTTOM:
                _err(Category.UninitializedRead, f"use of possibly-uninitialized array element {i}", span)
            elems.append(v)
        return ArrayV(tuple(elems), ty.elem)
    v = cfg.store[loc]
    if v is BOTTOM:
        _err(Category.UninitializedRead, "use of possibly-uninitialized variable", span)
    return v



def _binding_scope_has(cfg: Configuration, name: str) -> bool:
    """Whether ``name`` was defined in the innermost scope (or globally at top level)."""
    if not cfg.scopes:
        return name in cfg.genv
    loc = cfg.env.get(name)
    return loc is not None and loc in cfg.scopes[-1].allocs


def _bind(cfg: Configuration, name: str, loc: int) -> None:
    if cfg.scopes:
        cfg.env[name] = loc
    else:
        cfg.genv[name] = loc


def _checked_value(cfg: Configuration, ty, value, span):
    """Coerce ``value`` to the location type ``ty`` and check the two agree."""
    v = coerce(value, ty, span)
    if ty is None:
        return v
    vt = get_type(v, cfg.type_env.get)
    if vt != ty:
        _err(Category.TypeMismatch, f"mismatched types: expected `{ty}`, found `{vt}`", span)
    return v


def recompute_borrow(cfg: Configuration, target: int) -> None:
    state = None
    for r in cfg.referrers.get(target, ()):
        if cfg.moved.get(r):
            continue
        if cfg.ref_type[r] == 1:
            state = 1
            break
        state = 0
    cfg.borrow[target] = state


def _unlink_ref(cfg: Configuration, loc: int) -> None:
    old = cfg.ref.get(loc)
    if old is not None:
        holders = cfg.referrers.get(old)
        if holders is not None:
            holders.discard(loc)
        recompute_borrow(cfg, old)


def kill_scope(cfg: Configuration, scope: ScopeRecord) -> None:
    """Drop every location allocated in ``scope``; borrows they held are released."""
    for loc in scope.allocs:
        cfg.dead.add(loc)
        if cfg.ref.get(loc) is not None:
            _unlink_ref(cfg, loc)


def _borrow_state(cfg: Configuration, target: int, exclude: int):
    state = None
    for r in cfg.referrers.get(target, ()):
        if r == exclude or cfg.moved.get(r):
            continue
        if cfg.ref_type[r] == 1:
            return 1
        state = 0
    return state


def bind_reference(cfg: Configuration, l1: int, ref: RefV, span, assign_form: bool) -> str:
    """Mutable-Reference / Immutable-Reference: make ``l1`` refer to ``ref.target``."""
    l2 = ref.target
    if assign_form and cfg.mut_type.get(l1) != 1:
        _err(Category.AssignToImmutable, "cannot assign twice to immutable variable", span)
    if cfg.moved.get(l1):
        _err(Category.UseAfterMove, "use of moved reference", span)
    if cfg.moved.get(l2):
        _err(Category.UseAfterMove, "borrow of moved value", span)
    if l2 in cfg.dead:
        _err(Category.LifetimeError, "borrowed value does not live long enough", span)
    src = ref.src if ref.mutable else None
    if src is not None:
        if cfg.moved.get(src):
            _err(Category.UseAfterMove, "use of moved mutable reference", span)
        # a mutable reference is moved, not copied, into its new holder
        cfg.moved[src] = 1
        holders = cfg.referrers.get(l2)
        if holders is not None:
            holders.discard(src)
        recompute_borrow(cfg, l2)
    state = _borrow_state(cfg, l2, l1)
    if ref.mutable:
        if cfg.mut_type.get(l2) != 1:
            _err(Category.MutBorrowOfImmutable, "cannot borrow immutable variable as mutable", span)
        if state is not None:
            _err(Category.BorrowConflict, "cannot borrow as mutable because it is already borrowed", span)
    elif state == 1:
        _err(Category.BorrowConflict, "cannot borrow as immutable because it is also borrowed as mutable", span)
    if not l1 > l2:
        _err(Category.LifetimeError, "borrowed value does not live long enough", span)
    want = n.RefType(ref.mutable, cfg.type_env.get(l2) or n.UNIT)
    ty = cfg.type_env.get(l1)
    if ty is None:
        cfg.type_env[l1] = want
    elif ty != want:
        _err(Category.TypeMismatch, f"mismatched types: expected `{ty}`, found `{want}`", span)
    _unlink_ref(cfg, l1)
    cfg.ref[l1] = l2
    cfg.ref_type[l1] = 1 if ref.mutable else 0
    cfg.referrers.setdefault(l2, set()).add(l1)
    recompute_borrow(cfg, l2)
    cfg.store[l1] = RefV(l2, ref.mutable)
    return "Mutable-Reference" if ref.mutable else "Immutable-Reference"


def _store_array(cfg: Configuration, base: int, value: ArrayV, span) -> None:
    ty = cfg.type_env.get(base)
    v = _checked_value(cfg, ty, value, span)
    for i, e in enumerate(v.elems):
        cfg.store[base + i] = e


def _store_value(cfg: Configuration, loc: int, value, span) -> None:
    """Store into an already-checked scalar location, fixing an unknown type."""
    ty = cfg.type_env.get(loc)
    if type(value) is ArrayV:
        if type(ty) is not n.ArrayType:
            _err(Category.TypeMismatch, f"mismatched types: expected `{ty}`, found array", span)
        _store_array(cfg, loc, value, span)
        return
    v = _checked_value(cfg, ty, value, span)
    if ty is None:
        if type(v) is StructInstV:
            _err(Category.Stuck, "struct values can only be moved between struct variables", span)
        cfg.type_env[loc] = get_type(v, cfg.type_env.get)
    cfg.store[loc] = v



# -- statements ------------------------------------------------------------

def _push_block(cfg: Configuration, block: n.Block, as_value: bool) -> None:
    scope = ScopeRecord(dict(cfg.env))
    cfg.scopes.append(scope)
    kont = cfg.kont
    if not as_value and block.tail is not None:
        kont.append(KDiscard(block.span))
    kont.append(BlockExit(scope, block.span))
    if as_value:
        kont.append(block.tail if block.tail is not None else UNIT)
    elif block.tail is not None:
        kont.append(block.tail)
    _push_stmts(kont, block.stmts)


def _push_stmts(kont: List[Any], stmts) -> None:
    items = [s for s in stmts if type(s) is n.Function or type(s) is n.StructDecl]
    if items:
        rest = [s for s in stmts if not (type(s) is n.Function or type(s) is n.StructDecl)]
        kont.extend(reversed(rest))
        kont.extend(reversed(items))
    else:
        kont.extend(reversed(stmts))


def exec_block(cfg, item):
    cfg.kont.pop()
    _push_block(cfg, item, as_value=False)
    return "Block-Entry"


def exec_block_stmt(cfg, item: n.BlockStmt):
    cfg.kont.pop()
    _push_block(cfg, item.block, as_value=False)
    return "Block-Entry"


def exec_block_exit(cfg, item: BlockExit):
    cfg.kont.pop()
    exit_block(cfg, item.scope)
    return "Block-Exit"


def exit_block(cfg: Configuration, scope: ScopeRecord) -> None:
    """Leave the innermost block: restore the entry environment and drop its locations."""
    if not cfg.scopes or cfg.scopes[-1] is not scope:
        _err(Category.Stuck, "block exit does not match the innermost scope")
    cfg.scopes.pop()
    cfg.env = scope.saved_env
    kill_scope(cfg, scope)


def plug_block_exit(cfg, frame: BlockExit, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    exit_block(cfg, frame.scope)
    kont.append(value)
    return "Block-Exit"


def _declared_mut_tag(mutable: bool) -> str:
    return "Declaration-of-Mutable-Variable" if mutable else "Declaration-of-Immutable-Variable"


def exec_let(cfg, stmt: n.Let):
    kont = cfg.kont
    init = stmt.init
    if init is None:
        kont.pop()
        return declare_uninit(cfg, stmt.name, stmt.mutable, stmt.type, stmt.span)
    if type(init) is n.StructLit:
        kont.pop()
        if stmt.type is not None and stmt.type != n.NamedType(init.name):
            _err(Category.TypeMismatch, f"mismatched types: expected `{stmt.type}`, found `{init.name}`", stmt.span)
        kont.append(KStructFields(stmt, init))
        kont.append(init.fields[0][1] if init.fields else UNIT)
        return "Struct-Literal-Heat"
    if type(init) is n.Ident:
        src = cfg.env.get(init.name)
        if src is None:
            src = cfg.genv.get(init.name)
        if src is not None and _is_struct_type(cfg.type_env.get(src)):
            src_ty = cfg.type_env[src]
            if stmt.type is not None and stmt.type != src_ty:
                _err(Category.TypeMismatch, f"mismatched types: expected `{stmt.type}`, found `{src_ty}`", stmt.span)
            desc = _struct_desc(cfg, src_ty.name, stmt.span)
            kont.pop()
            kont.append(F4(init.name, stmt.span))
            kont.append(F3(stmt.name, init.name, desc.fields, True, stmt.span))
            kont.append(DeclStruct(stmt.name, stmt.mutable, src_ty.name, None, stmt.span))
            return "Ownership-Move"
    kont.pop()
    kont.append(KLet(stmt))
    kont.append(init)
    return "Let-Heat"


def declare_uninit(cfg: Configuration, name: str, mutable: bool, ty, span) -> str:
    """``let [mut] X [: T];`` without an initializer."""
    if type(ty) is n.ArrayType:
        _check_elem_type(ty.elem, span)
        loc = allocate_array(cfg, ty.elem, ty.length, mutable)
        _bind(cfg, name, loc)
        return "Declaration-of-Mutable-Array" if mutable else "Declaration-of-Immutable-Array"
    if type(ty) is n.NamedType:
        desc = _struct_desc(cfg, ty.name, span)
        cfg.kont.append(DeclStruct(name, mutable, desc.name, None, span))
        return "Struct-Declaration"
    loc = allocate(cfg, ty, mutable)
    _bind(cfg, name, loc)
    return _declared_mut_tag(mutable)


def _check_elem_type(ty, span) -> None:
    if type(ty) is not n.PrimType:
        _err(Category.Stuck, f"array elements must be primitive values, not `{ty}`", span)


def declare(cfg: Configuration, name: str, mutable: bool, ty, value, span) -> str:
    """Allocate a variable for an evaluated initializer and queue its initialization."""
    if type(value) is ArrayV:
        if ty is not None and type(ty) is not n.ArrayType:
            _err(Category.TypeMismatch, f"mismatched types: expected `{ty}`, found array", span)
        if ty is not None and ty.length != len(value.elems):
            _err(Category.TypeMismatch,
                 f"mismatched types: expected an array with {ty.length} elements, found {len(value.elems)}", span)
        value = coerce(value, ty, span)
        elem = ty.elem if ty is not None else value.elem_type
        if elem is None:
            elem = n.prim("i32")
        _check_elem_type(elem, span)
        loc = allocate_array(cfg, elem, len(value.elems), mutable)
        _bind(cfg, name, loc)
        cfg.kont.append(InitLoc(loc, value, span))
        return "Declaration-of-Mutable-Array" if mutable else "Declaration-of-Immutable-Array"
    if type(value) is StructInstV:
        _err(Category.Stuck, "struct values can only be moved between struct variables", span)
    loc = allocate(cfg, ty, mutable)
    _bind(cfg, name, loc)
    cfg.kont.append(InitLoc(loc, value, span))
    return _declared_mut_tag(mutable)


def plug_let(cfg, frame: KLet, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    s = frame.stmt
    return declare(cfg, s.name, s.mutable, s.type, value, s.span)


def exec_decl_bind(cfg, item: DeclBind):
    cfg.kont.pop()
    return declare(cfg, item.name, item.mutable, item.type, item.value, item.span)


def exec_init(cfg, item: InitLoc):
    cfg.kont.pop()
    value = item.value
    if type(value) is RefV:
        return bind_reference(cfg, item.loc, value, item.span, assign_form=False)
    _store_value(cfg, item.loc, value, item.span)
    return "Initialization"


def _check_writable(cfg: Configuration, loc: int, span) -> None:
    if cfg.mut_type.get(loc) != 1:
        _err(Category.AssignToImmutable, "cannot assign twice to immutable variable", span)
    b = cfg.borrow.get(loc)
    if b is not None:
        kind = "mutably" if b == 1 else "immutably"
        _err(Category.BorrowConflict, f"cannot assign because it is {kind} borrowed", span)


def exec_assign(cfg, stmt: n.Assign):
    kont = cfg.kont
    target = stmt.target
    if stmt.op != "=":
        kont.pop()
        kont.append(n.Assign(target, "=", n.BinOp(stmt.op[0], target, stmt.value, stmt.span), stmt.span))
        return "Compound-Assignment"
    if type(target) is n.Ident:
        dst = cfg.env.get(target.name)
        if dst is None:
            dst = cfg.genv.get(target.name)
        if dst is not None and _is_struct_type(cfg.type_env.get(dst)):
            dst_ty = cfg.type_env[dst]
            value = stmt.value
            if type(value) is n.StructLit:
                if value.name != dst_ty.name:
                    _err(Category.TypeMismatch, f"mismatched types: expected `{dst_ty}`, found `{value.name}`", stmt.span)
                kont.pop()
                kont.append(KStructFields(stmt, value))
                kont.append(value.fields[0][1] if value.fields else UNIT)
                return "Struct-Literal-Heat"
            if type(value) is not n.Ident:
                _err(Category.Stuck, "struct values can only be moved between struct variables", stmt.span)
            src = resolve(cfg, value.name, value.span)
            src_ty = cfg.type_env.get(src)
            if cfg.mut_type.get(dst) != 1:
                _err(Category.AssignToImmutable, "cannot assign twice to immutable variable", stmt.span)
            if src_ty != dst_ty:
                _err(Category.TypeMismatch, f"mismatched types: expected `{dst_ty}`, found `{src_ty}`", stmt.span)
            desc = _struct_desc(cfg, dst_ty.name, stmt.span)
            kont.pop()
            kont.append(F4(value.name, stmt.span))
            kont.append(F3(target.name, value.name, desc.fields, False, stmt.span))
            return "Ownership-Move"
    kont.pop()
    kont.append(KAssign(stmt))
    kont.append(stmt.value)
    return "Assign-Heat"


def plug_assign(cfg, frame: KAssign, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    stmt = frame.stmt
    target = stmt.target
    span = stmt.span
    tt = type(target)
    if tt is n.Ident:
        loc = resolve(cfg, target.name, span)
        # the first assignment to a declared-but-uninitialized immutable is its initialization
        deferred = cfg.mut_type.get(loc) == 0 and cfg.store.get(loc) is BOTTOM
        if deferred:
            if type(value) is RefV:
                return bind_reference(cfg, loc, value, span, assign_form=False)
            _store_value(cfg, loc, value, span)
            return "Initialization"
        if type(value) is RefV:
            _check_writable(cfg, loc, span)
            return bind_reference(cfg, loc, value, span, assign_form=True)
        _check_writable(cfg, loc, span)
        if cfg.ref.get(loc) is not None:
            _err(Category.TypeMismatch, f"mismatched types: expected `{cfg.type_env.get(loc)}`, found `{get_type(coerce(value, None))}`", span)
        _store_value(cfg, loc, value, span)
        return "Assignment"
    if tt is n.Deref:
        deref_write(cfg, target.name, value, span)
        return "Dereference-Assignment"
    if tt is n.FieldAccess:
        struct_field_write(cfg, target.name, target.field, value, span, init=False)
        return "Updating-of-Struct-Field"
    if tt is n.Index:
        kont.append(KAssignIndex(stmt, value))
        kont.append(target.index)
        return "Index-Heat"
    _err(Category.Stuck, "invalid assignment target", span)


def plug_assign_index(cfg, frame: KAssignIndex, index):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    array_write(cfg, frame.stmt.target.name, index, frame.value, frame.span)
    return "Updating-of-Array-Element"


def deref_write(cfg: Configuration, name: str, value, span) -> None:
    """``*X = V;`` through an exclusive reference."""
    l1 = resolve(cfg, name, span)
    l2 = cfg.ref.get(l1)
    if l2 is None:
        _err(Category.NotAReference, f"type of `{name}` cannot be dereferenced", span)
    if cfg.moved.get(l1):
        _err(Category.UseAfterMove, f"use of moved value: `{name}`", span)
    if cfg.ref_type.get(l1) != 1:
        _err(Category.WriteThroughSharedRef, f"cannot assign to `*{name}`, which is behind a `&` reference", span)
    if l2 in cfg.dead:
        _err(Category.LifetimeError, "borrowed value does not live long enough", span)
    _store_value(cfg, l2, value, span)


def _array_slot(cfg: Configuration, name: str, index, span) -> Tuple[int, int, n.ArrayType]:
    loc = resolve(cfg, name, span)
    ty = cfg.type_env.get(loc)
    if type(ty) is n.RefType:
        loc = cfg.ref[loc]
        ty = cfg.type_env.get(loc)
    if type(ty) is not n.ArrayType:
        _err(Category.TypeMismatch, f"cannot index into a value of type `{ty}`", span)
    if index is BOTTOM:
        _err(Category.UninitializedRead, "use of undefined index", span)
    if type(index) is not IntV:
        _err(Category.TypeMismatch, "the type `[T]` cannot be indexed by a non-integer", span)
    index = coerce(index, n.prim("usize"), span)
    if index.ty != "usize":
        _err(Category.TypeMismatch, f"the type `[T]` cannot be indexed by `{index.ty}`", span)
    i = index.value
    if not 0 <= i < ty.length:
        _err(Category.IndexOutOfBounds,
             f"index out of bounds: the len is {ty.length} but the index is {i}", span)
    return loc, i, ty


def array_read(cfg: Configuration, name: str, index, span=None):
    loc, i, _ = _array_slot(cfg, name, index, span)
    v = cfg.store.get(loc + i, BOTTOM)
    if v is BOTTOM:
        _err(Category.UninitializedRead, f"use of possibly-uninitialized `{name}[{i}]`", span)
    return v


def array_write(cfg: Configuration, name: str, index, value, span=None) -> None:
    base = resolve(cfg, name, span)
    through_ref = type(cfg.type_env.get(base)) is n.RefType
    loc, i, ty = _array_slot(cfg, name, index, span)
    if through_ref:
        if cfg.ref_type.get(base) != 1:
            _err(Category.WriteThroughSharedRef, f"cannot assign to `{name}[..]`, which is behind a `&` reference", span)
    else:
        _check_writable(cfg, loc, span)
    cfg.store[loc + i] = _checked_value(cfg, ty.elem, value, span)


def struct_field_read(cfg: Configuration, var: str, field: str, span=None):
    owner = resolve(cfg, var, span)
    floc = cfg.env.get(f"{var}.{field}")
    if floc is None:
        floc = cfg.genv.get(f"{var}.{field}")
        if floc is None:
            _err(Category.UnboundIdentifier, f"no field `{field}` on `{var}`", span)
    if cfg.moved.get(owner):
        _err(Category.UseAfterMove, f"borrow of moved value: `{var}`", span)
    v = cfg.store[floc]
    if v is BOTTOM:
        _err(Category.UninitializedRead, f"use of possibly-uninitialized `{var}.{field}`", span)
    return v


def struct_field_write(cfg: Configuration, var: str, field: str, value, span=None, init=False) -> None:
    owner = resolve(cfg, var, span)
    floc = cfg.env.get(f"{var}.{field}")
    if floc is None:
        floc = cfg.genv.get(f"{var}.{field}")
        if floc is None:
            _err(Category.UnboundIdentifier, f"no field `{field}` on `{var}`", span)
    if not init:
        if cfg.mut_type.get(owner) != 1:
            _err(Category.AssignToImmutable, f"cannot assign to `{var}.{field}`, as `{var}` is not declared as mutable", span)
        if cfg.borrow.get(owner) is not None or cfg.borrow.get(floc) is not None:
            _err(Category.BorrowConflict, f"cannot assign to `{var}.{field}` because it is borrowed", span)
    if cfg.moved.get(owner):
        _err(Category.UseAfterMove, f"assign to part of moved value: `{var}`", span)
    cfg.store[floc] = _checked_value(cfg, cfg.type_env.get(floc), value, span)


def exec_expr_stmt(cfg, stmt: n.ExprStmt):
    kont = cfg.kont
    kont.pop()
    kont.append(KDiscard(stmt.span))
    kont.append(stmt.expr)
    return "Expression-Statement"


def plug_discard(cfg, frame, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    return "Discard"


def exec_return(cfg, stmt: n.Return):
    kont = cfg.kont
    kont.pop()
    kont.append(KReturn(stmt.span))
    kont.append(stmt.value if stmt.value is not None else UNIT)
    return "Return-Heat"


def plug_return(cfg, frame: KReturn, value):
    return return_from(cfg, value, frame.span)


def return_from(cfg: Configuration, value, span=None) -> str:
    """Return: check the value against the frame's type, drop callee state, resume the caller."""
    if not cfg.fstack:
        _err(Category.Stuck, "`return` outside of a function", span)
    fr = cfg.fstack[-1]
    if type(value) is StructInstV:
        _err(Category.Stuck, "struct values cannot be returned from functions", span)
    v = coerce(value, fr.return_type, span)
    vt = get_type(v, cfg.type_env.get)
    if vt != fr.return_type:
        _err(Category.TypeMismatch, f"mismatched types: expected `{fr.return_type}`, found `{vt}`", span)
    if type(v) is RefV:
        v = RefV(v.target, v.mutable)
    cfg.fstack.pop()
    for scope in reversed(cfg.scopes):
        kill_scope(cfg, scope)
    cfg.env = fr.saved_env
    cfg.scopes = fr.saved_scopes
    cfg.kont = fr.saved_kont
    cfg.kont.append(v)
    return "Return"


def exec_if(cfg, stmt: n.If):
    kont = cfg.kont
    kont.pop()
    kont.append(KIf(stmt))
    kont.append(stmt.cond)
    return "If-Heat"


def _expect_bool(v, what, span):
    if type(v) is not BoolV:
        if v is BOTTOM:
            _err(Category.UninitializedRead, "use of undefined value", span)
        _err(Category.TypeMismatch, f"mismatched types: expected `bool` {what}, found `{get_type(coerce(v, None))}`", span)
    return v.value


def plug_if(cfg, frame: KIf, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    stmt = frame.stmt
    if _expect_bool(value, "condition", stmt.span):
        _push_block(cfg, stmt.then, as_value=False)
        return "If-True"
    if stmt.orelse is not None:
        _push_block(cfg, stmt.orelse, as_value=False)
    return "If-False"


def exec_while(cfg, stmt: n.While):
    kont = cfg.kont
    kont.pop()
    kont.append(KWhile(stmt))
    kont.append(stmt.cond)
    return "While-Heat"


def plug_while(cfg, frame: KWhile, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    stmt = frame.stmt
    if _expect_bool(value, "condition", stmt.span):
        kont.append(stmt)
        _push_block(cfg, stmt.body, as_value=False)
        return "While-Unfold"
    return "While-Exit"


def exec_loop(cfg, stmt: n.Loop):
    # the loop statement stays beneath its body
    _push_block(cfg, stmt.body, as_value=False)
    return "Loop-Unfold"


def exec_for(cfg, stmt: n.For):
    kont = cfg.kont
    kont.pop()
    kont.append(KForLo(stmt))
    kont.append(stmt.lo)
    return "For-Heat"


def plug_for_lo(cfg, frame: KForLo, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    kont.append(KForHi(frame.stmt, value))
    kont.append(frame.stmt.hi)
    return "For-Heat"


def plug_for_hi(cfg, frame: KForHi, hi):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    lo = frame.lo
    span = frame.span
    if type(lo) is not IntV or type(hi) is not IntV:
        _err(Category.TypeMismatch, "range bounds must be integers", span)
    if lo.lit and not hi.lit:
        lo = coerce(lo, n.prim(hi.ty), span)
    elif hi.lit and not lo.lit:
        hi = coerce(hi, n.prim(lo.ty), span)
    else:
        lo, hi = coerce(lo, None, span), coerce(hi, None, span)
    if lo.ty != hi.ty:
        _err(Category.TypeMismatch, f"mismatched range bound types `{lo.ty}` and `{hi.ty}`", span)
    kont.append(ForIter(frame.stmt, lo.value, hi.value, lo.ty))
    return "For-Range"


def exec_for_iter(cfg, item: ForIter):
    kont = cfg.kont
    kont.pop()
    if item.cur >= item.hi:
        return "For-Exit"
    stmt = item.stmt
    kont.append(ForIter(stmt, item.cur + 1, item.hi, item.ty))
    _push_block(cfg, stmt.body, as_value=False)
    kont.append(DeclBind(stmt.var, False, n.prim(item.ty), IntV(item.cur, item.ty), stmt.span))
    return "For-Iterate"


# -- items -----------------------------------------------------------------

def exec_function(cfg, fn: n.Function):
    """Function definition: desugar missing return type and tail expression, then bind."""
    kont = cfg.kont
    if fn.ret is None:
        kont[-1] = n.Function(fn.name, fn.params, n.UnitType(fn.span), fn.body, fn.span)
        return "Function-Definition-without-Return-Type"
    if fn.body.tail is not None:
        tail = fn.body.tail
        body = n.Block(fn.body.stmts + (n.Return(tail, getattr(tail, "span", fn.span)),), None, fn.body.span)
        kont[-1] = n.Function(fn.name, fn.params, fn.ret, body, fn.span)
        return "Function-Definition-Return-by-Last-Expression"
    define_function(cfg, fn)
    kont.pop()
    return "Function-Definition-with-Return-Type"


def define_function(cfg: Configuration, fn: n.Function) -> int:
    if _binding_scope_has(cfg, fn.name):
        _err(Category.DuplicateDefinition, f"the name `{fn.name}` is defined multiple times", fn.span)
    seen = set()
    for pname, _ in fn.params:
        if pname in seen:
            _err(Category.DuplicateDefinition, f"identifier `{pname}` is bound more than once in this parameter list", fn.span)
        seen.add(pname)
    ret = fn.ret if fn.ret is not None else n.UNIT
    loc = allocate_code(cfg, ClosureV(fn.name, fn.params, fn.body, ret))
    _bind(cfg, fn.name, loc)
    return loc


def exec_struct(cfg, decl: n.StructDecl):
    cfg.kont.pop()
    define_struct(cfg, decl)
    return "Struct-Definition"


def define_struct(cfg: Configuration, decl: n.StructDecl) -> int:
    if _binding_scope_has(cfg, decl.name):
        _err(Category.DuplicateDefinition, f"the name `{decl.name}` is defined multiple times", decl.span)
    seen = set()
    for fname, fty in decl.fields:
        if fname in seen:
            _err(Category.DuplicateDefinition, f"field `{fname}` is already declared", decl.span)
        seen.add(fname)
        if type(fty) is not n.PrimType:
            _err(Category.Stuck, f"struct field `{fname}` must have a primitive type, not `{fty}`", decl.span)
    loc = allocate_code(cfg, StructDescV(decl.name, decl.fields))
    _bind(cfg, decl.name, loc)
    return loc


def exec_const(cfg, item: n.ConstStatic):
    kont = cfg.kont
    kont.pop()
    if _binding_scope_has(cfg, item.name):
        _err(Category.DuplicateDefinition, f"the name `{item.name}` is defined multiple times", item.span)
    if type(item.type) is not n.PrimType:
        _err(Category.Stuck, f"constants must have a primitive type, not `{item.type}`", item.span)
    loc = allocate(cfg, item.type, item.kind == "static" and item.mutable)
    _bind(cfg, item.name, loc)
    kont.append(KConst(loc, item.span))
    kont.append(item.init)
    return "Const-Declaration"


def plug_const(cfg, frame: KConst, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    if type(value) is RefV or type(value) is ArrayV:
        _err(Category.Stuck, "constants must hold primitive values", frame.span)
    _store_value(cfg, frame.loc, value, frame.span)
    return "Initialization"


# -- structs and ownership -------------------------------------------------

def plug_struct_fields(cfg, frame: KStructFields, value):
    kont = cfg.kont
    kont.pop()
    fields = frame.lit.fields
    if fields:
        frame.vals.append(value)
    if len(frame.vals) < len(fields):
        kont.append(fields[len(frame.vals)][1])
        return "Struct-Literal-Field"
    kont.pop()
    inits = tuple((fname, v) for (fname, _), v in zip(fields, frame.vals))
    stmt = frame.stmt
    if type(stmt) is n.Let:
        kont.append(DeclStruct(stmt.name, stmt.mutable, frame.lit.name, inits, stmt.span))
    else:
        desc = _struct_desc(cfg, frame.lit.name, stmt.span)
        _check_field_inits(desc, inits, stmt.span)
        by_name = dict(inits)
        var = stmt.target.name
        for fname, _ in reversed(desc.fields):
            kont.append(FieldStore(var, fname, False, stmt.span))
            kont.append(by_name[fname])
    return "Struct-Literal-Field"


def _check_field_inits(desc: StructDescV, inits, span) -> None:
    declared = [f for f, _ in desc.fields]
    seen = set()
    for fname, _ in inits:
        if fname in seen:
            _err(Category.TypeMismatch, f"field `{fname}` specified more than once", span)
        if fname not in declared:
            _err(Category.TypeMismatch, f"struct `{desc.name}` has no field named `{fname}`", span)
        seen.add(fname)
    missing = [f for f in declared if f not in seen]
    if missing:
        _err(Category.TypeMismatch, f"missing field(s) {', '.join(f'`{m}`' for m in missing)} in initializer of `{desc.name}`", span)


def exec_decl_struct(cfg, item: DeclStruct):
    """Declaration-of-Struct-Instance: allocate the owner, then F2 allocates the fields."""
    kont = cfg.kont
    desc = _struct_desc(cfg, item.type_name, item.span)
    if item.inits is not None:
        _check_field_inits(desc, item.inits, item.span)
        by_name = dict(item.inits)
        vals = [by_name[f] for f, _ in desc.fields]
    else:
        vals = [BOTTOM] * len(desc.fields)
    kont.pop()
    loc = allocate(cfg, n.NamedType(desc.name), item.mutable)
    cfg.store[loc] = StructInstV(desc.name)
    _bind(cfg, item.name, loc)
    kont.append(F2(item.name, desc.fields, vals, item.mutable, item.span))
    return "Declaration-of-Struct-Instance"


def exec_f2(cfg, item: F2):
    kont = cfg.kont
    i = item.i
    if i >= len(item.fields):
        kont.pop()
        return "F1-F2-Helper-Function"
    fname, fty = item.fields[i]
    value = item.vals[i]
    if value is not BOTTOM:
        value = _checked_value(cfg, fty, value, item.span)
    loc = allocate(cfg, fty, item.mutable)
    cfg.store[loc] = value
    _bind(cfg, f"{item.var}.{fname}", loc)
    item.i = i + 1
    return "F1-F2-Helper-Function"


def exec_f3(cfg, item: F3):
    kont = cfg.kont
    i = item.i
    if i >= len(item.fields):
        kont.pop()
        return "F3-Helper-Function"
    fname = item.fields[i][0]
    item.i = i + 1
    kont.append(FieldStore(item.dst, fname, item.init, item.span))
    kont.append(n.FieldAccess(item.src, fname, item.span))
    return "F3-Helper-Function"


def exec_f4(cfg, item: F4):
    cfg.kont.pop()
    loc = resolve(cfg, item.src, item.span)
    if cfg.moved.get(loc):
        _err(Category.UseAfterMove, f"use of moved value: `{item.src}`", item.span)
    cfg.moved[loc] = 1
    return "F4-Helper-Function"


def plug_field_store(cfg, frame: FieldStore, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    struct_field_write(cfg, frame.var, frame.field, value, frame.span, init=frame.init)
    return "Updating-of-Struct-Field"



# -- expressions -----------------------------------------------------------

def exec_lit_int(cfg, e: n.IntLit):
    cfg.kont[-1] = IntV(e.value, "i32", True)
    return "Literal"


def exec_lit_float(cfg, e: n.FloatLit):
    cfg.kont[-1] = FloatV(e.value, "f64", True)
    return "Literal"


def exec_lit_bool(cfg, e: n.BoolLit):
    cfg.kont[-1] = BoolV(e.value)
    return "Literal"


def exec_lit_str(cfg, e: n.StrLit):
    cfg.kont[-1] = StrV(e.value)
    return "Literal"


def exec_lit_char(cfg, e: n.CharLit):
    cfg.kont[-1] = CharV(e.value)
    return "Literal"


def exec_lit_unit(cfg, e):
    cfg.kont[-1] = UNIT
    return "Literal"


def lookup(cfg: Configuration, name: str, span=None):
    """Lookup-of-Variable."""
    loc = resolve(cfg, name, span)
    ty = cfg.type_env.get(loc)
    tt = type(ty)
    if tt is n.NamedType:
        if cfg.moved.get(loc):
            _err(Category.UseAfterMove, f"use of moved value: `{name}`", span)
        _err(Category.Stuck, f"struct value `{name}` can only be moved into another struct variable", span)
    if tt is n.ArrayType:
        return read_loc(cfg, loc, span)
    v = cfg.store[loc]
    if v is BOTTOM:
        _err(Category.UninitializedRead, f"used binding `{name}` isn't initialized", span)
    cls = type(v)
    if cls is RefV:
        if cfg.moved.get(loc):
            _err(Category.UseAfterMove, f"use of moved value: `{name}`", span)
        return RefV(v.target, v.mutable, loc)
    if cls is StructDescV:
        _err(Category.Stuck, f"expected value, found struct `{name}`", span)
    return v


def exec_ident(cfg, e: n.Ident):
    cfg.kont[-1] = lookup(cfg, e.name, e.span)
    return "Lookup-of-Variable"


def deref_read(cfg: Configuration, name: str, span=None):
    """Dereference."""
    l1 = resolve(cfg, name, span)
    l2 = cfg.ref.get(l1)
    if l2 is None:
        _err(Category.NotAReference, f"type `{cfg.type_env.get(l1)}` cannot be dereferenced", span)
    if cfg.moved.get(l1):
        _err(Category.UseAfterMove, f"use of moved value: `{name}`", span)
    if l2 in cfg.dead:
        _err(Category.LifetimeError, "borrowed value does not live long enough", span)
    if _is_struct_type(cfg.type_env.get(l2)):
        _err(Category.Stuck, "cannot move a struct out of a reference", span)
    return read_loc(cfg, l2, span)


def exec_deref(cfg, e: n.Deref):
    cfg.kont[-1] = deref_read(cfg, e.name, e.span)
    return "Dereference"


def exec_paren(cfg, e: n.Paren):
    cfg.kont[-1] = e.inner
    return "Paren"


def exec_block_expr(cfg, e: n.BlockExpr):
    cfg.kont.pop()
    _push_block(cfg, e.block, as_value=True)
    return "Block-Entry"


def exec_borrow(cfg, e: n.Borrow):
    """Evaluate ``&Y`` / ``&mut Y`` to a reference value; the borrow is recorded when it is bound."""
    op = e.operand
    to = type(op)
    if to is n.Paren:
        cfg.kont[-1] = n.Borrow(e.mutable, op.inner, e.span)
        return "Paren"
    if to is n.Ident:
        loc = resolve(cfg, op.name, e.span)
        owner = loc
        if type(cfg.store.get(loc)) in (ClosureV, StructDescV):
            _err(Category.Stuck, f"cannot borrow item `{op.name}`", e.span)
    elif to is n.FieldAccess:
        owner = resolve(cfg, op.name, e.span)
        loc = cfg.env.get(f"{op.name}.{op.field}")
        if loc is None:
            _err(Category.UnboundIdentifier, f"no field `{op.field}` on `{op.name}`", e.span)
    else:
        _err(Category.Stuck, "only variables and struct fields can be borrowed", e.span)
    if cfg.moved.get(owner):
        _err(Category.UseAfterMove, f"borrow of moved value: `{op.name}`", e.span)
    if e.mutable and cfg.mut_type.get(owner) != 1:
        _err(Category.MutBorrowOfImmutable, f"cannot borrow `{op.name}` as mutable, as it is not declared as mutable", e.span)
    cfg.kont[-1] = RefV(loc, e.mutable)
    return "Borrow-Expression"


def exec_struct_lit(cfg, e: n.StructLit):
    _err(Category.Stuck, "struct literals may only initialize or be assigned to a struct variable", e.span)


def exec_field(cfg, e: n.FieldAccess):
    cfg.kont[-1] = struct_field_read(cfg, e.name, e.field, e.span)
    return "Evaluation-of-Struct-Field"


def exec_array(cfg, e):
    kont = cfg.kont
    kont.pop()
    if not e.elements:
        kont.append(ArrayV((), None))
        return "Array-Literal"
    kont.append(KArray(e.elements, e.span))
    kont.append(e.elements[0])
    return "Array-Heat"



def plug_array(cfg, frame: KArray, value):
    kont = cfg.kont
    kont.pop()
    frame.vals.append(value)
    if len(frame.vals) < len(frame.elems):
        kont.append(frame.elems[len(frame.vals)])
        return "Array-Heat"
    kont.pop()
    kont.append(_array_literal(frame.vals, frame.span))
    return "Array-Literal"


def _array_literal(vals, span) -> ArrayV:
    """Elements share one type; untyped literals stay adoptable until declared."""
    for v in vals:
        if type(v) not in (IntV, FloatV, BoolV, CharV, StrV):
            if v is BOTTOM:
                _err(Category.UninitializedRead, "use of undefined value", span)
            _err(Category.Stuck, "array elements must be primitive values", span)
    typed = next((v for v in vals if not getattr(v, "lit", False)), None)
    if typed is not None:
        ty = get_type(typed)
        vals = [coerce(v, ty, span) for v in vals]
    else:
        ty = get_type(vals[0])
    for v in vals:
        if type(v) is not type(vals[0]) or (not getattr(v, "lit", False) and get_type(v) != ty):
            _err(Category.TypeMismatch, f"mismatched types in array: expected `{ty}`, found `{get_type(v)}`", span)
    return ArrayV(tuple(vals), ty)


def exec_repeat(cfg, e: n.ArrayRepeat):
    kont = cfg.kont
    kont.pop()
    kont.append(KRepeatElem(e))
    kont.append(e.element)
    return "Array-Heat"


def plug_repeat_elem(cfg, frame: KRepeatElem, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    kont.append(KRepeatCount(value, frame.span))
    kont.append(frame.count)
    return "Array-Heat"


def plug_repeat_count(cfg, frame: KRepeatCount, count):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    if type(count) is not IntV:
        _err(Category.TypeMismatch, "array repeat count must be an integer", frame.span)
    count = coerce(count, n.prim("usize"), frame.span)
    if count.ty != "usize":
        _err(Category.TypeMismatch, f"array repeat count must be `usize`, found `{count.ty}`", frame.span)
    kont.append(_array_literal([frame.elem] * count.value, frame.span) if count.value else ArrayV((), None))
    return "Array-Literal"


def exec_index(cfg, e: n.Index):
    kont = cfg.kont
    kont.pop()
    kont.append(KIndex(e))
    kont.append(e.index)
    return "Index-Heat"


def plug_index(cfg, frame: KIndex, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    kont.append(array_read(cfg, frame.name, value, frame.span))
    return "Evaluation-of-Array-Element"


def exec_call(cfg, e: n.Call):
    kont = cfg.kont
    kont.pop()
    if e.callee == "println!":
        frame = KPrintln(e)
        kont.append(frame)
        if frame.args:
            kont.append(frame.args[0])
        else:
            kont.append(UNIT)  # placeholder value, dropped by the frame
        return "Println-Heat"
    kont.append(KCall(e))
    kont.append(n.Ident(e.callee, e.span))
    return "Call-Heat"


def plug_println(cfg, frame: KPrintln, value):
    kont = cfg.kont
    kont.pop()
    if frame.args:
        frame.vals.append(value)
        if len(frame.vals) < len(frame.args):
            kont.append(frame.args[len(frame.vals)])
            return "Println-Heat"
    kont.pop()
    println(cfg, frame.fmt, frame.vals, frame.span)
    kont.append(UNIT)
    return "Println"


def println(cfg: Configuration, fmt: str, args, span=None) -> None:
    cfg.out.append(render_println(fmt, args, lambda loc: read_loc(cfg, loc, span), span))


def plug_call(cfg, frame: KCall, value):
    kont = cfg.kont
    kont.pop()
    if frame.closure is None:
        if type(value) is not ClosureV:
            _err(Category.TypeMismatch, "expected function, found a non-function value", frame.span)
        frame.closure = value
    else:
        frame.vals.append(value)
    if len(frame.vals) < len(frame.args):
        kont.append(frame.args[len(frame.vals)])
        return "Call-Argument"
    kont.pop()
    kont.append(Apply(frame.closure, tuple(frame.vals), frame.span))
    return "Call-Argument"


def exec_apply(cfg, item: Apply):
    cfg.kont.pop()
    call_function(cfg, item.closure, item.args, item.span)
    return "Function-Call"


def call_function(cfg: Configuration, closure: ClosureV, args, span=None) -> None:
    """Function-Call: save the caller, clear the environment, run mkDecls, body and ``return ();``."""
    if len(args) != len(closure.params):
        _err(Category.ArityMismatch,
             f"function `{closure.name}` takes {len(closure.params)} argument(s) but {len(args)} were supplied", span)
    for v in args:
        if type(v) is StructInstV:
            _err(Category.Stuck, "struct values cannot be passed to functions", span)
    cfg.fstack.append(Frame(cfg.env, cfg.scopes, cfg.kont, closure.ret, closure.name))
    cfg.env = {}
    cfg.scopes = [ScopeRecord({})]
    body = closure.body
    kont: List[Any] = [n.Return(n.UnitLit(body.span), body.span)]
    _push_stmts(kont, body.stmts)
    kont.append(MkDecls(closure.params, args, 0, span))
    cfg.kont = kont
    if cfg.time_enabled:
        cfg.time[closure.name] = cfg.time.get(closure.name, 0) + 1


def exec_mkdecls(cfg, item: MkDecls):
    kont = cfg.kont
    kont.pop()
    i = item.i
    if i < len(item.params):
        name, ty = item.params[i]
        kont.append(MkDecls(item.params, item.vals, i + 1, item.span))
        kont.append(DeclBind(name, False, ty, item.vals[i], item.span))
    return "mkDecls-Helper-Function"


def exec_neg(cfg, e: n.Neg):
    kont = cfg.kont
    kont.pop()
    kont.append(KUnary("-", e.span))
    kont.append(e.operand)
    return "Unary-Heat"


def exec_not(cfg, e: n.Not):
    kont = cfg.kont
    kont.pop()
    kont.append(KUnary("!", e.span))
    kont.append(e.operand)
    return "Unary-Heat"


def _auto_deref(cfg, v, span):
    if type(v) is RefV:
        return read_loc(cfg, v.target, span)
    return v


def plug_unary(cfg, frame: KUnary, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    value = _auto_deref(cfg, value, frame.span)
    if frame.op == "-":
        kont.append(eval_neg(value, frame.span))
        return "Negation"
    kont.append(eval_not(value, frame.span))
    return "Logical-Not"


def exec_binop(cfg, e: n.BinOp):
    kont = cfg.kont
    kont.pop()
    if e.op == "&&" or e.op == "||":
        kont.append(KShort(e))
    else:
        kont.append(KBinL(e))
    kont.append(e.lhs)
    return "BinOp-Heat"


def plug_binl(cfg, frame: KBinL, value):
    kont = cfg.kont
    kont.pop()
    kont[-1] = KBinR(frame.op, value, frame.span)
    kont.append(frame.rhs)
    return "BinOp-Heat"


def plug_binr(cfg, frame: KBinR, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    lhs = frame.lhs
    if type(lhs) is RefV or type(value) is RefV:
        if frame.op in ("==", "!=", "<", "<=", ">", ">=") and (type(lhs) is RefV) != (type(value) is RefV):
            _err(Category.TypeMismatch, f"cannot compare a reference with a value using `{frame.op}`", frame.span)
        lhs = _auto_deref(cfg, lhs, frame.span)
        value = _auto_deref(cfg, value, frame.span)
    kont.append(eval_binop(frame.op, lhs, value, frame.span))
    return "Binary-Operation"


def plug_short(cfg, frame: KShort, value):
    kont = cfg.kont
    kont.pop()
    b = _expect_bool(value, f"operand of `{frame.op}`", frame.span)
    if (frame.op == "&&" and not b) or (frame.op == "||" and b):
        kont[-1] = BoolV(b)
        return "Short-Circuit"
    kont[-1] = KBoolRhs(frame.op, frame.span)
    kont.append(frame.rhs)
    return "Short-Circuit-Continue"


def plug_bool_rhs(cfg, frame: KBoolRhs, value):
    kont = cfg.kont
    kont.pop()
    kont[-1] = BoolV(_expect_bool(value, f"operand of `{frame.op}`", frame.span))
    return "Short-Circuit"


def plug_halt(cfg, frame: KHalt, value):
    kont = cfg.kont
    kont.pop()
    kont.pop()
    cfg.result = value
    return "Halt"


# -- dispatch --------------------------------------------------------------

EXEC = {
    n.Let: exec_let,
    n.Assign: exec_assign,
    n.ExprStmt: exec_expr_stmt,
    n.Return: exec_return,
    n.If: exec_if,
    n.While: exec_while,
    n.Loop: exec_loop,
    n.For: exec_for,
    n.BlockStmt: exec_block_stmt,
    n.Block: exec_block,
    n.Function: exec_function,
    n.StructDecl: exec_struct,
    n.ConstStatic: exec_const,
    n.IntLit: exec_lit_int,
    n.FloatLit: exec_lit_float,
    n.BoolLit: exec_lit_bool,
    n.StrLit: exec_lit_str,
    n.CharLit: exec_lit_char,
    n.UnitLit: exec_lit_unit,
    n.Ident: exec_ident,
    n.Deref: exec_deref,
    n.ArrayLit: exec_array,
    n.VecLit: exec_array,
    n.ArrayRepeat: exec_repeat,
    n.Index: exec_index,
    n.Paren: exec_paren,
    n.BlockExpr: exec_block_expr,
    n.Borrow: exec_borrow,
    n.StructLit: exec_struct_lit,
    n.Call: exec_call,
    n.Neg: exec_neg,
    n.Not: exec_not,
    n.BinOp: exec_binop,
    n.FieldAccess: exec_field,
    BlockExit: exec_block_exit,
    ForIter: exec_for_iter,
    Apply: exec_apply,
    MkDecls: exec_mkdecls,
    DeclBind: exec_decl_bind,
    InitLoc: exec_init,
    DeclStruct: exec_decl_struct,
    F2: exec_f2,
    F3: exec_f3,
    F4: exec_f4,
}

PLUG = {
    KLet: plug_let,
    KAssign: plug_assign,
    KAssignIndex: plug_assign_index,
    KDiscard: plug_discard,
    KReturn: plug_return,
    KIf: plug_if,
    KWhile: plug_while,
    KForLo: plug_for_lo,
    KForHi: plug_for_hi,
    BlockExit: plug_block_exit,
    KBinL: plug_binl,
    KBinR: plug_binr,
    KShort: plug_short,
    KBoolRhs: plug_bool_rhs,
    KUnary: plug_unary,
    KIndex: plug_index,
    KArray: plug_array,
    KRepeatElem: plug_repeat_elem,
    KRepeatCount: plug_repeat_count,
    KCall: plug_call,
    KPrintln: plug_println,
    KStructFields: plug_struct_fields,
    FieldStore: plug_field_store,
    KConst: plug_const,
    KHalt: plug_halt,
}


def _span_of(item):
    return getattr(item, "span", None)


def step(cfg: Configuration) -> StepResult:
    """Apply one rewrite to the head of the continuation."""
    kont = cfg.kont
    if not kont:
        if cfg.fstack:
            return Failed(Diagnostic(Category.Stuck, "empty continuation inside a call"), cfg)
        return Done(cfg)
    item = kont[-1]
    cls = type(item)
    depth = len(kont)
    saved = kont[-2:]
    try:
        if cls in VALUE_TYPES:
            if depth < 2:
                return Failed(Diagnostic(Category.Stuck, f"value {item} has no consumer"), cfg)
            frame = kont[-2]
            plug = PLUG.get(type(frame))
            if plug is None:
                return Failed(Diagnostic(Category.Stuck, f"value {item} cannot be used here", _span_of(frame)), cfg)
            tag = plug(cfg, frame, item)
        else:
            handler = EXEC.get(cls)
            if handler is None:
                return Failed(Diagnostic(Category.Stuck, f"no rule for {item!r}", _span_of(item)), cfg)
            tag = handler(cfg, item)
    except KrustError as err:
        d = err.diagnostic
        if d.span is None or d.span.line == 0:
            origin = saved[0] if cls in VALUE_TYPES and len(saved) == 2 else item
            d = Diagnostic(d.category, d.message, _span_of(origin))
        if kont is cfg.kont:
            # put the redex back so the failed configuration shows where it stopped
            del kont[max(depth - 2, 0):]
            kont.extend(saved)
        return Failed(d, cfg)
    return Continue(cfg, tag)


def _drain(cfg: Configuration, floor: int) -> None:
    """Step until the continuation shrinks to ``floor`` items; raises on failure."""
    while len(cfg.kont) > floor:
        r = step(cfg)
        if type(r) is Failed:
            raise KrustError(r.diagnostic.category, r.diagnostic.message, r.diagnostic.span)
        if type(r) is Done:
            return


def exec_control(cfg: Configuration, stmt) -> None:
    """Execute one control statement (if/while/for/loop/block) to completion."""
    floor = len(cfg.kont)
    cfg.kont.append(stmt)
    _drain(cfg, floor)


# -- program loading -------------------------------------------------------


def load_program(program: n.Program, entry: Optional[str] = "main", time_enabled: bool = False,
                 trace: Optional[List[str]] = None, max_steps: Optional[int] = None) -> Configuration:
    """Bind every top-level item in order, then seed the continuation with a call to ``entry``.

    With ``entry=None`` the continuation is left empty (the caller seeds it).
    Definition steps run here; their rule names are appended to ``trace``.
    """
    names = set()
    for item in program.items:
        if item.name in names:
            raise KrustError(Category.DuplicateDefinition, f"the name `{item.name}` is defined multiple times", item.span)
        names.add(item.name)
    if entry is not None:
        main = program.function(entry)
        if main is None or main.params:
            raise KrustError(Category.MissingMain, f"`{entry}` function not found (it must take no parameters)")
    cfg = fresh_configuration()
    cfg.time_enabled = time_enabled
    cfg.kont = list(reversed(program.items))
    count = 0
    while cfg.kont:
        r = step(cfg)
        if type(r) is Failed:
            raise KrustError(r.diagnostic.category, r.diagnostic.message, r.diagnostic.span)
        if type(r) is Continue and trace is not None:
            trace.append(r.tag)
        count += 1
        if max_steps is not None and count > max_steps:
            raise KrustError(Category.Stuck, "step budget exhausted while loading")
    cfg.load_steps = count  # type: ignore[attr-defined]
    if entry is not None:
        span = program.function(entry).span
        cfg.kont = [KHalt(), n.Call(entry, (), span)]
    return cfg


def seed_call(cfg: Configuration, name: str, args, span=None) -> None:
    """Seed an empty continuation with a direct call of function ``name``."""
    loc = resolve(cfg, name, span)
    closure = cfg.store.get(loc)
    if type(closure) is not ClosureV:
        _err(Category.TypeMismatch, f"`{name}` is not a function", span)
    cfg.kont = [KHalt(), Apply(closure, tuple(args), span)]
