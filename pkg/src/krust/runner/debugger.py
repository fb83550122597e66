"""Interactive single-step debugger over the machine configuration."""

from __future__ import annotations

import shlex
from typing import Iterable, List, Optional, Set, TextIO

from ..semantics.machine import Continue, Done, Failed, load_program, step
from ..state import CELL_NAMES, Diagnostic, describe, render_cell
from ..syntax import nodes as n

HELP = """commands:
  step [n]        apply n rewrites (default 1), printing each rule applied
  print <cell>    show one cell ({cells})
  print all       show every cell
  break <line>    stop `run` when a statement on <line> is next
  run             step until a breakpoint, completion or failure
  where           show the source line of the next computation
  quit            leave the debugger""".format(cells=", ".join(CELL_NAMES))

STATEMENTS = (
    n.Let, n.Assign, n.ExprStmt, n.Return, n.If, n.While, n.Loop, n.For,
    n.BlockStmt, n.Function, n.StructDecl, n.ConstStatic,
)


class DebugSession:
    """A paused run of one program; every command advances or inspects ``cfg``."""

    def __init__(self, program: n.Program, max_steps: int = 10_000_000):
        self.cfg = load_program(program)
        self.history: List[str] = []
        self.breakpoints: Set[int] = set()
        self.max_steps = max_steps
        self.finished = False
        self.diagnostic: Optional[Diagnostic] = None

    @property
    def steps(self) -> int:
        return len(self.history)

    def current_line(self) -> Optional[int]:
        for item in reversed(self.cfg.kont):
            span = getattr(item, "span", None)
            if span is not None and span.line > 0:
                return span.line
        return None

    def _at_breakpoint(self) -> bool:
        if not self.cfg.kont:
            return False
        head = self.cfg.kont[-1]
        return isinstance(head, STATEMENTS) and head.span.line in self.breakpoints

    def _advance(self) -> Optional[str]:
        """One rewrite; returns the line to print."""
        if self.finished:
            return None
        r = step(self.cfg)
        if type(r) is Continue:
            self.history.append(r.tag)
            return f"[{self.steps}] {r.tag}"
        self.finished = True
        if type(r) is Done:
            return "program finished"
        self.diagnostic = r.diagnostic
        return f"error: {r.diagnostic}"

    def do_step(self, count: int = 1) -> List[str]:
        out = []
        for _ in range(count):
            line = self._advance()
            if line is None:
                out.append("program is not running")
                break
            out.append(line)
            if self.finished:
                break
        if count == 0:
            out.append(self.show_where())
        return out

    def do_run(self) -> List[str]:
        if self.finished:
            return ["program is not running"]
        moved = False
        while not self.finished:
            if moved and self._at_breakpoint():
                return [f"breakpoint at line {self.cfg.kont[-1].span.line} after {self.steps} steps"]
            if self.steps >= self.max_steps:
                return [f"step budget of {self.max_steps} exhausted"]
            line = self._advance()
            moved = True
        return [line]

    def show_where(self) -> str:
        line = self.current_line()
        head = describe(self.cfg.kont[-1]) if self.cfg.kont else "(empty)"
        return f"line {line}: {head}" if line is not None else head

    def do_print(self, cell: str) -> List[str]:
        if cell == "all":
            return [render_cell(self.cfg, c) for c in CELL_NAMES]
        return [render_cell(self.cfg, cell)]

    def execute(self, command: str) -> List[str]:
        """Run one command line and return the lines it prints."""
        try:
            words = shlex.split(command)
        except ValueError:
            words = command.split()
        if not words:
            return []
        cmd, args = words[0], words[1:]
        try:
            if cmd == "step":
                return self.do_step(int(args[0]) if args else 1)
            if cmd == "run":
                return self.do_run()
            if cmd == "print" and len(args) == 1:
                return self.do_print(args[0])
            if cmd == "break" and len(args) == 1:
                self.breakpoints.add(int(args[0]))
                return [f"breakpoint set at line {int(args[0])}"]
            if cmd == "where":
                return [self.show_where()]
            if cmd == "help":
                return HELP.splitlines()
        except ValueError as err:
            return [f"error: {err}", *HELP.splitlines()]
        return [f"unknown command: {command.strip()}", *HELP.splitlines()]


def repl(session: DebugSession, commands: Iterable[str], out: TextIO, prompt: str = "") -> None:
    for raw in commands:
        command = raw.strip()
        if prompt:
            out.write(prompt)
        if command in ("quit", "exit", "q"):
            break
        for line in session.execute(command):
            out.write(line + "\n")
        out.flush()
