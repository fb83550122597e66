"""Grammar-production coverage: which rows of the KRust grammar a program uses."""

from __future__ import annotations

from dataclasses import fields, is_dataclass
from typing import Iterable, Set

from . import nodes as n

ALL_PRODUCTIONS = frozenset(
    [f"Type:{t}" for t in n.PRIMITIVE_TYPES]
    + ["Type:Id", "Type:()", "Type:[Type;Exp]", "Type:fn(Types)->Type"]
    + ["DeclExp:let", "DeclExp:let mut", "DeclExp:[: Type]", "DeclExp:[= Exp]",
       "ConstAndStatic:const", "ConstAndStatic:static", "ConstAndStatic:static mut"]
    + [f"Op:{op}" for op in n.BINARY_OPS]
    + ["Exp:Int", "Exp:Bool", "Exp:Float", "Exp:String", "Exp:Char", "Exp:Id", "Exp:*Id",
       "Exp:[Exps]", "Exp:[Exp;Exp]", "Exp:vec![Exps]", "Exp:(Exp)", "Exp:Exp[Exp]",
       "Exp:{Exp}", "Ref:&", "Ref:&mut", "Exp:Id{StructValues}", "Exp:Exp(Exp)",
       "Exp:-Exp", "Exp:!Exp", "Exp:Exp Op Exp"]
    + [f"AssignOp:{op}" for op in n.ASSIGN_OPS]
    + ["AssignmentStmt:Id", "AssignmentStmt:Id[Exp]", "AssignmentStmt:*Id", "AssignmentStmt:Id.Id"]
    + ["If:if", "If:else", "While", "Loop:loop",
       "Block:{}", "Block:{Stmts}", "Block:{Stmts Exp}",
       "Struct", "For", "Function", "Function:-> Type",
       "Stmts:Exp;", "Stmts:return;", "Stmts:return Exp;", "Stmts:Block",
       "Stmts:Function", "Stmts:Struct"]
)


def productions(program: n.Program) -> Set[str]:
    """Return the set of grammar productions exercised by ``program``."""
    used: Set[str] = set()
    for item in program.items:
        _walk(item, used, top=True)
    return used


def _walk(node, used: Set[str], top: bool = False) -> None:
    kind = type(node)
    if kind is n.PrimType:
        used.add(f"Type:{node.name}")
    elif kind is n.NamedType:
        used.add("Type:Id")
    elif kind is n.UnitType:
        used.add("Type:()")
    elif kind is n.ArrayType:
        used.add("Type:[Type;Exp]")
    elif kind is n.FnType:
        used.add("Type:fn(Types)->Type")
    elif kind is n.Let:
        used.add("DeclExp:let mut" if node.mutable else "DeclExp:let")
        if node.type is not None:
            used.add("DeclExp:[: Type]")
        if node.init is not None:
            used.add("DeclExp:[= Exp]")
    elif kind is n.ConstStatic:
        if node.kind == "const":
            used.add("ConstAndStatic:const")
        else:
            used.add("ConstAndStatic:static mut" if node.mutable else "ConstAndStatic:static")
    elif kind is n.IntLit:
        used.add("Exp:Int")
    elif kind is n.BoolLit:
        used.add("Exp:Bool")
    elif kind is n.FloatLit:
        used.add("Exp:Float")
    elif kind is n.StrLit:
        used.add("Exp:String")
    elif kind is n.CharLit:
        used.add("Exp:Char")
    elif kind is n.Ident:
        used.add("Exp:Id")
    elif kind is n.Deref:
        used.add("Exp:*Id")
    elif kind is n.ArrayLit:
        used.add("Exp:[Exps]")
    elif kind is n.ArrayRepeat:
        used.add("Exp:[Exp;Exp]")
    elif kind is n.VecLit:
        used.add("Exp:vec![Exps]")
    elif kind is n.Paren:
        used.add("Exp:(Exp)")
    elif kind is n.Index:
        used.add("Exp:Exp[Exp]")
    elif kind is n.BlockExpr:
        used.add("Exp:{Exp}")
    elif kind is n.Borrow:
        used.add("Ref:&mut" if node.mutable else "Ref:&")
    elif kind is n.StructLit:
        used.add("Exp:Id{StructValues}")
    elif kind is n.Call:
        if node.callee != "println!":
            used.add("Exp:Exp(Exp)")
    elif kind is n.Neg:
        used.add("Exp:-Exp")
    elif kind is n.Not:
        used.add("Exp:!Exp")
    elif kind is n.BinOp:
        used.add("Exp:Exp Op Exp")
        used.add(f"Op:{node.op}")
    elif kind is n.Assign:
        used.add(f"AssignOp:{node.op}")
        target = {n.Ident: "Id", n.Index: "Id[Exp]", n.Deref: "*Id", n.FieldAccess: "Id.Id"}[type(node.target)]
        used.add(f"AssignmentStmt:{target}")
        # the place itself is not an rvalue occurrence
        if isinstance(node.target, n.Index):
            _walk(node.target.index, used)
        _walk(node.value, used)
        return
    elif kind is n.If:
        used.add("If:if")
        if node.orelse is not None:
            used.add("If:else")
    elif kind is n.While:
        used.add("While")
    elif kind is n.Loop:
        used.add("Loop:loop")
    elif kind is n.Block:
        if not node.stmts and node.tail is None:
            used.add("Block:{}")
        elif node.tail is None:
            used.add("Block:{Stmts}")
        else:
            used.add("Block:{Stmts Exp}")
    elif kind is n.StructDecl:
        used.add("Struct")
        if not top:
            used.add("Stmts:Struct")
    elif kind is n.For:
        used.add("For")
    elif kind is n.Function:
        used.add("Function")
        if node.ret is not None:
            used.add("Function:-> Type")
        if not top:
            used.add("Stmts:Function")
    elif kind is n.ExprStmt:
        if node.semi:
            used.add("Stmts:Exp;")
    elif kind is n.Return:
        used.add("Stmts:return;" if node.value is None else "Stmts:return Exp;")
    elif kind is n.BlockStmt:
        used.add("Stmts:Block")
    _children(node, used)


def _children(node, used: Set[str]) -> None:
    if not is_dataclass(node):
        return
    for f in fields(node):
        if f.name == "span":
            continue
        _visit(getattr(node, f.name), used)


def _visit(value, used: Set[str]) -> None:
    if isinstance(value, tuple):
        for v in value:
            _visit(v, used)
    elif is_dataclass(value):
        _walk(value, used)


def union(programs: Iterable[n.Program]) -> Set[str]:
    out: Set[str] = set()
    for p in programs:
        out |= productions(p)
    return out
