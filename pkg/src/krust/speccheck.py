"""Bounded concrete checking of call-count specifications.

A spec names one function, its integer parameters, a precondition, a
postcondition and a finite domain per parameter::

    gcd(X:Int, Y:Int)
    <time> T1 => T2 </time>
    requires X > 0, Y > 0
    ensures T2 - T1 <= maxInt(X, Y)
    domain X in 1..=50, Y in 1..=50

``calls(f)`` may be written instead of the time-cell difference. Commas in
``requires``/``ensures`` are conjunctions. Every assignment of the domains'
Cartesian product is run in a fresh configuration with the time cell enabled.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .semantics.machine import load_program, seed_call
from .semantics.operators import INT_BITS, fits
from .semantics.run import OK, default_max_steps, drive
from .state import IntV, KrustError
from .syntax import nodes as n
from .syntax.lexer import LexError, Token, tokenize


class SpecError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        where = f"{line}:{col}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.col = col


# -- expressions -----------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Calls:
    fn: str
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Builtin:
    name: str
    args: Tuple


@dataclass(frozen=True)
class Unary:
    op: str
    operand: object


@dataclass(frozen=True)
class Binary:
    op: str
    lhs: object
    rhs: object


BUILTINS = {"maxInt": max, "minInt": min}
COMPARISONS = ("==", "!=", "<", "<=", ">", ">=")


class _ExprParser:
    """Precedence climbing over krust tokens; `,` at top level separates conjuncts."""

    LEVELS = [("||",), ("&&",), COMPARISONS, ("+", "-"), ("*", "/", "%")]

    def __init__(self, text: str, line: int):
        self.line = line
        try:
            self.toks: List[Token] = tokenize(text)
        except LexError as err:
            raise SpecError(str(err), line) from None
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.take()
        if t.text != text:
            raise SpecError(f"expected `{text}`, found `{t.text or 'end of line'}`", self.line, t.span.col)
        return t

    def conjunction(self):
        parts = [self.expr(0)]
        while self.peek().text == ",":
            self.take()
            parts.append(self.expr(0))
        t = self.peek()
        if t.kind != "eof":
            raise SpecError(f"unexpected `{t.text}`", self.line, t.span.col)
        out = parts[0]
        for p in parts[1:]:
            out = Binary("&&", out, p)
        return out

    def expr(self, level: int):
        if level == len(self.LEVELS):
            return self.unary()
        lhs = self.expr(level + 1)
        ops = self.LEVELS[level]
        while self.peek().kind == "op" and self.peek().text in ops:
            op = self.take().text
            rhs = self.expr(level + 1)
            lhs = Binary(op, lhs, rhs)
            if ops is COMPARISONS and self.peek().text in COMPARISONS:
                t = self.peek()
                raise SpecError("comparison operators cannot be chained", self.line, t.span.col)
        return lhs

    def unary(self):
        t = self.peek()
        if t.text in ("-", "!"):
            self.take()
            return Unary(t.text, self.unary())
        return self.primary()

    def primary(self):
        t = self.take()
        if t.kind == "int":
            return Num(t.value)
        if t.kind == "kw" and t.text in ("true", "false"):
            return Num(1 if t.text == "true" else 0)
        if t.text == "(":
            e = self.expr(0)
            self.expect(")")
            return e
        if t.kind == "ident":
            if self.peek().text == "(":
                self.take()
                args = []
                if self.peek().text != ")":
                    args.append(self.expr(0))
                    while self.peek().text == ",":
                        self.take()
                        args.append(self.expr(0))
                self.expect(")")
                if t.text == "calls":
                    if len(args) != 1 or type(args[0]) is not Var:
                        raise SpecError("calls() takes one function name", self.line, t.span.col)
                    return Calls(args[0].name, self.line, t.span.col)
                if t.text not in BUILTINS:
                    raise SpecError(f"unknown function `{t.text}`", self.line, t.span.col)
                if len(args) != 2:
                    raise SpecError(f"{t.text} takes two arguments", self.line, t.span.col)
                return Builtin(t.text, tuple(args))
            return Var(t.text, self.line, t.span.col)
        raise SpecError(f"expected expression, found `{t.text or 'end of line'}`", self.line, t.span.col)


def parse_expr(text: str, line: int = 0):
    return _ExprParser(text, line).conjunction()


def evaluate(e, env: Dict[str, int], calls: int) -> int:
    cls = type(e)
    if cls is Num:
        return e.value
    if cls is Var:
        return env[e.name]
    if cls is Calls:
        return calls
    if cls is Builtin:
        return BUILTINS[e.name](*(evaluate(a, env, calls) for a in e.args))
    if cls is Unary:
        v = evaluate(e.operand, env, calls)
        return -v if e.op == "-" else int(not v)
    a = evaluate(e.lhs, env, calls)
    if e.op == "&&":
        return int(bool(a) and bool(evaluate(e.rhs, env, calls)))
    if e.op == "||":
        return int(bool(a) or bool(evaluate(e.rhs, env, calls)))
    b = evaluate(e.rhs, env, calls)
    op = e.op
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op in ("/", "%"):
        if b == 0:
            raise ZeroDivisionError("division by zero in spec expression")
        q = abs(a) // abs(b) * (1 if (a >= 0) == (b >= 0) else -1)
        return q if op == "/" else a - b * q
    return int({"==": a == b, "!=": a != b, "<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op])


def _names(e, out: List[Tuple[str, int, int]], fns: List[Tuple[str, int, int]]) -> None:
    cls = type(e)
    if cls is Var:
        out.append((e.name, e.line, e.col))
    elif cls is Calls:
        fns.append((e.fn, e.line, e.col))
    elif cls is Builtin:
        for a in e.args:
            _names(a, out, fns)
    elif cls is Unary:
        _names(e.operand, out, fns)
    elif cls is Binary:
        _names(e.lhs, out, fns)
        _names(e.rhs, out, fns)


# -- specs -----------------------------------------------------------------

@dataclass
class CallCountSpec:
    function: str
    params: List[str]
    requires: object = Num(1)
    ensures: object = Num(1)
    domains: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    time_vars: Optional[Tuple[str, str]] = None

    def domain_text(self) -> str:
        return ", ".join(f"{p} in {lo}..={hi}" for p, (lo, hi) in
                         ((p, self.domains[p]) for p in self.params))


_HEADER = re.compile(r"^(?:fn\s+)?([A-Za-z_]\w*)\s*\((.*)\)\s*$")
_PARAM = re.compile(r"^([A-Za-z_]\w*)\s*:\s*Int$")
_TIME = re.compile(r"^<time>\s*([A-Za-z_]\w*)\s*=>\s*([A-Za-z_]\w*)\s*</time>$")
_DOMAIN = re.compile(r"^([A-Za-z_]\w*)\s+in\s+(-?\d+)\s*\.\.=\s*(-?\d+)$")


def parse_spec(text: str) -> CallCountSpec:
    header = None
    requires: List[object] = []
    ensures: List[object] = []
    domains: Dict[str, Tuple[int, int]] = {}
    time_vars = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        word = line.split(None, 1)[0]
        rest = line[len(word):].strip()
        if word in ("requires", "ensures"):
            if header is None:
                raise SpecError(f"`{word}` before the function header", lineno)
            if rest:
                (requires if word == "requires" else ensures).append(parse_expr(rest, lineno))
        elif word == "domain":
            for part in rest.split(","):
                m = _DOMAIN.match(part.strip())
                if not m:
                    raise SpecError(f"expected `<param> in <lo>..=<hi>`, found `{part.strip()}`", lineno)
                name, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
                if lo > hi:
                    raise SpecError(f"empty domain for `{name}`", lineno)
                domains[name] = (lo, hi)
        elif line.startswith("<time>"):
            m = _TIME.match(line)
            if not m:
                raise SpecError("expected `<time> T1 => T2 </time>`", lineno)
            time_vars = (m.group(1), m.group(2))
        else:
            m = _HEADER.match(line)
            if not m or header is not None:
                raise SpecError(f"unexpected line `{line}`", lineno)
            params = []
            if m.group(2).strip():
                for p in m.group(2).split(","):
                    pm = _PARAM.match(p.strip())
                    if not pm:
                        raise SpecError(f"expected `<name>:Int`, found `{p.strip()}`", lineno)
                    params.append(pm.group(1))
            if len(set(params)) != len(params):
                raise SpecError("duplicate parameter name", lineno)
            header = (m.group(1), params)
    if header is None:
        raise SpecError("missing function header `name(X:Int, ...)`")
    fn, params = header
    spec = CallCountSpec(fn, params, _conj(requires), _conj(ensures), domains, time_vars)
    _validate(spec)
    return spec


def _conj(parts: List[object]):
    if not parts:
        return Num(1)
    out = parts[0]
    for p in parts[1:]:
        out = Binary("&&", out, p)
    return out


def _validate(spec: CallCountSpec) -> None:
    allowed = set(spec.params)
    if spec.time_vars:
        allowed |= set(spec.time_vars)
    for which, e in (("requires", spec.requires), ("ensures", spec.ensures)):
        names: List[Tuple[str, int, int]] = []
        fns: List[Tuple[str, int, int]] = []
        _names(e, names, fns)
        for name, line, col in names:
            if name not in allowed:
                raise SpecError(f"undeclared variable `{name}` in {which}", line, col)
            if which == "requires" and spec.time_vars and name in spec.time_vars:
                raise SpecError(f"`{name}` is a post-state quantity and cannot appear in requires", line, col)
        for name, line, col in fns:
            if name != spec.function:
                raise SpecError(f"calls({name}) does not name the specified function `{spec.function}`", line, col)
            if which == "requires":
                raise SpecError("calls() cannot appear in requires", line, col)
    for name in spec.domains:
        if name not in spec.params:
            raise SpecError(f"domain given for undeclared parameter `{name}`")


# -- checking --------------------------------------------------------------

@dataclass
class Verified:
    cases_checked: int
    domain: str = ""

    def machine_line(self) -> str:
        return f"VERIFIED {self.cases_checked}"


@dataclass
class Falsified:
    counterexample: Dict[str, int]
    observed_calls: int
    bound_value: Optional[int] = None

    def machine_line(self) -> str:
        return "FALSIFIED " + " ".join(f"{k}={v}" for k, v in self.counterexample.items())


@dataclass
class Inapplicable:
    reason: str
    assignment: Optional[Dict[str, int]] = None

    def machine_line(self) -> str:
        return f"INAPPLICABLE {self.reason}"


def _bound(e, env, calls) -> Optional[int]:
    """Right-hand side of the (last) comparison in ``e``, for reporting."""
    while type(e) is Binary and e.op == "&&":
        e = e.rhs
    if type(e) is Binary and e.op in COMPARISONS:
        return evaluate(e.rhs, env, calls)
    return None


def _first_failing(e, env, calls):
    """The conjunct that fails, so reports cite the violated clause."""
    if type(e) is Binary and e.op == "&&":
        if not evaluate(e.lhs, env, calls):
            return _first_failing(e.lhs, env, calls)
        return _first_failing(e.rhs, env, calls)
    return e


def check(program: n.Program, spec: CallCountSpec, max_steps: Optional[int] = None):
    """Enumerate the domains in lexicographic order; stop at the first violation."""
    fn = program.function(spec.function)
    if fn is None:
        return Inapplicable(f"function `{spec.function}` is not defined")
    if len(fn.params) != len(spec.params):
        return Inapplicable(f"`{spec.function}` takes {len(fn.params)} parameter(s), spec declares {len(spec.params)}")
    ptypes = []
    for pname, pty in fn.params:
        if type(pty) is not n.PrimType or pty.name not in INT_BITS:
            return Inapplicable(f"parameter `{pname}` of `{spec.function}` is not an integer")
        ptypes.append(pty.name)
    missing = [p for p in spec.params if p not in spec.domains]
    if missing:
        return Inapplicable(f"no domain given for {', '.join(missing)}")
    for p, ty in zip(spec.params, ptypes):
        lo, hi = spec.domains[p]
        if not (fits(lo, ty) and fits(hi, ty)):
            return Inapplicable(f"domain of `{p}` does not fit parameter type {ty}")
    limit = default_max_steps() if max_steps is None else max_steps
    ranges = [range(spec.domains[p][0], spec.domains[p][1] + 1) for p in spec.params]
    checked = 0
    for values in itertools.product(*ranges):
        env = dict(zip(spec.params, values))
        if not evaluate(spec.requires, env, 0):
            continue
        try:
            cfg = load_program(program, entry=None, time_enabled=True)
            seed_call(cfg, spec.function, [IntV(v, t) for v, t in zip(values, ptypes)], fn.span)
        except KrustError as err:
            return Inapplicable(f"cannot load program: {err.diagnostic}", env)
        outcome = drive(cfg, limit)
        if outcome.status != OK:
            return Inapplicable(f"run ended in {outcome.status}: {outcome.diagnostic}", env)
        calls = cfg.time.get(spec.function, 0)
        full = dict(env)
        if spec.time_vars:
            full[spec.time_vars[0]] = 0
            full[spec.time_vars[1]] = calls
        checked += 1
        if not evaluate(spec.ensures, full, calls):
            failing = _first_failing(spec.ensures, full, calls)
            return Falsified(env, calls, _bound(failing, full, calls))
    return Verified(checked, spec.domain_text())
