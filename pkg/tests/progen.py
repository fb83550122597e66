"""Seeded generator of well-formed straight-line programs.

Programs mostly type-check and respect the borrow rules, with a small share of
deliberate violations so error paths are exercised too. There are no loops;
nesting comes only from blocks and a helper-function call.
"""

import random

PRELUDE = """struct Point { x: i32, y: i32 }
fn add(a: i32, b: i32) -> i32 { a + b }
fn bump(r: &mut i32) { *r = *r + 1; }
fn peek(r: &i32) -> i32 { *r }
"""


class _Gen:
    def __init__(self, seed):
        self.rng = random.Random(seed)
        self.counter = 0
        self.lines = []

    def fresh(self, prefix):
        self.counter += 1
        return f"{prefix}{self.counter}"

    def chance(self, p):
        return self.rng.random() < p

    def int_expr(self, scope, depth=0):
        r = self.rng.random()
        ints = scope["int"]
        if depth > 1 or r < 0.35 or not ints:
            if ints and r < 0.6:
                return self.rng.choice(ints)[0]
            return str(self.rng.randint(-20, 40))
        op = self.rng.choice(["+", "-", "*", "+", "-", "/", "%"])
        rhs = self.int_expr(scope, depth + 1)
        if op in "/%":
            rhs = str(self.rng.randint(1, 7)) if not self.chance(0.05) else rhs
        return f"{self.int_expr(scope, depth + 1)} {op} {rhs}"

    def bool_expr(self, scope):
        if scope["bool"] and self.chance(0.3):
            name = self.rng.choice(scope["bool"])[0]
            return f"!{name}" if self.chance(0.5) else name
        op = self.rng.choice(["<", "<=", "==", "!=", ">", ">="])
        lhs = f"{self.int_expr(scope)} {op} {self.int_expr(scope)}"
        if self.chance(0.2):
            return f"{lhs} && {self.bool_expr_simple(scope)}"
        return lhs

    def bool_expr_simple(self, scope):
        return self.rng.choice(["true", "false"])

    def emit(self, indent, text):
        self.lines.append("    " * indent + text)

    def mutable_ints(self, scope):
        return [v for v in scope["int"] if v[1]]

    def stmt(self, scope, indent, depth):
        kinds = ["let_int", "let_int", "let_bool", "assign", "println", "array", "struct",
                 "borrow_block", "shared", "call", "shadow", "nested"]
        kind = self.rng.choice(kinds)
        if kind == "let_int":
            name = self.fresh("v")
            mut = self.chance(0.6)
            ann = ": i32" if self.chance(0.3) else ""
            self.emit(indent, f"let {'mut ' if mut else ''}{name}{ann} = {self.int_expr(scope)};")
            scope["int"].append((name, mut))
        elif kind == "let_bool":
            name = self.fresh("b")
            self.emit(indent, f"let {name} = {self.bool_expr(scope)};")
            scope["bool"].append((name, False))
        elif kind == "assign":
            targets = self.mutable_ints(scope)
            if self.chance(0.05) and scope["int"]:
                targets = scope["int"]  # may hit an immutable
            if targets:
                name = self.rng.choice(targets)[0]
                op = self.rng.choice(["=", "+=", "-=", "="])
                self.emit(indent, f"{name} {op} {self.int_expr(scope)};")
        elif kind == "println":
            self.emit(indent, f'println!("{{}}", {self.int_expr(scope)});')
        elif kind == "array":
            name = self.fresh("a")
            mut = self.chance(0.5)
            elems = ", ".join(self.int_expr(scope) for _ in range(3))
            self.emit(indent, f"let {'mut ' if mut else ''}{name} = [{elems}];")
            idx = 3 if self.chance(0.04) else self.rng.randint(0, 2)
            if mut:
                self.emit(indent, f"{name}[{self.rng.randint(0, 2)}] = {self.int_expr(scope)};")
            got = self.fresh("v")
            self.emit(indent, f"let {got} = {name}[{idx}];")
            scope["int"].append((got, False))
        elif kind == "struct":
            p, q = self.fresh("p"), self.fresh("q")
            self.emit(indent, f"let {p} = Point {{ x: {self.int_expr(scope)}, y: {self.int_expr(scope)} }};")
            self.emit(indent, f'println!("{{}}", {p}.x);')
            if self.chance(0.7):
                self.emit(indent, f"let mut {q} = {p};")
                self.emit(indent, f"{q}.y = {self.int_expr(scope)};")
                self.emit(indent, f'println!("{{}} {{}}", {q}.x, {q}.y);')
                if self.chance(0.08):
                    self.emit(indent, f'println!("{{}}", {p}.y);')  # use after move
        elif kind == "borrow_block":
            targets = self.mutable_ints(scope)
            if targets:
                name = self.rng.choice(targets)[0]
                r = self.fresh("r")
                self.emit(indent, "{")
                self.emit(indent + 1, f"let {r} = &mut {name};")
                self.emit(indent + 1, f"*{r} = *{r} + {self.rng.randint(0, 5)};")
                if self.chance(0.5):
                    self.emit(indent + 1, f"bump({r});")
                if self.chance(0.06):
                    self.emit(indent + 1, f"{name} = 0;")  # assignment while borrowed
                self.emit(indent, "}")
        elif kind == "shared":
            if scope["int"]:
                name = self.rng.choice(scope["int"])[0]
                r, s, v = self.fresh("r"), self.fresh("r"), self.fresh("v")
                self.emit(indent, "{")
                self.emit(indent + 1, f"let {r} = &{name};")
                self.emit(indent + 1, f"let {s} = &{name};")
                self.emit(indent + 1, f"let {v} = *{r} + peek({s});")
                if self.chance(0.05):
                    self.emit(indent + 1, f"*{r} = 1;")  # write through shared
                self.emit(indent + 1, f'println!("{{}}", {v});')
                self.emit(indent, "}")
        elif kind == "call":
            name = self.fresh("v")
            self.emit(indent, f"let {name} = add({self.int_expr(scope)}, {self.int_expr(scope)});")
            scope["int"].append((name, False))
        elif kind == "shadow":
            if scope["int"]:
                name = self.rng.choice(scope["int"])[0]
                self.emit(indent, f"let {name} = {self.int_expr(scope)};")
                scope["int"] = [v for v in scope["int"] if v[0] != name] + [(name, False)]
        elif kind == "nested" and depth < 2:
            inner = {"int": list(scope["int"]), "bool": list(scope["bool"])}
            self.emit(indent, "{")
            for _ in range(self.rng.randint(1, 4)):
                self.stmt(inner, indent + 1, depth + 1)
            self.emit(indent, "}")

    def program(self, length):
        scope = {"int": [], "bool": []}
        self.lines = [PRELUDE + "fn main() {"]
        for _ in range(length):
            self.stmt(scope, 1, 0)
        if scope["int"]:
            self.emit(1, f'println!("{{}}", {scope["int"][-1][0]});')
        self.lines.append("}")
        return "\n".join(self.lines) + "\n"


def generate(seed, length=None):
    gen = _Gen(seed)
    return gen.program(length if length is not None else gen.rng.randint(4, 16))
