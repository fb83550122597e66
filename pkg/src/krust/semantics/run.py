"""Drive the machine to completion and classify the outcome."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from ..state import RUNTIME_CATEGORIES, Category, Configuration, Diagnostic, KrustError
from ..syntax import LexError, ParseError, Program, parse_source
from .machine import Continue, Done, Failed, load_program, step

DEFAULT_MAX_STEPS = 10_000_000

OK = "ok"
SEMANTIC_ERROR = "semantic_error"
RUNTIME_ERROR = "runtime_error"
TIMEOUT = "timeout"
PARSE_ERROR = "parse_error"


def default_max_steps() -> int:
    raw = os.environ.get("KRUST_MAX_STEPS")
    return int(raw) if raw else DEFAULT_MAX_STEPS


@dataclass
class Outcome:
    status: str
    diagnostic: Optional[Diagnostic] = None
    output: str = ""
    steps: int = 0
    trace: List[str] = field(default_factory=list)
    config: Optional[Configuration] = None

    @property
    def ok(self) -> bool:
        return self.status == OK


def classify(category: Category) -> str:
    if category is Category.ParseError:
        return PARSE_ERROR
    return RUNTIME_ERROR if category in RUNTIME_CATEGORIES else SEMANTIC_ERROR


def drive(cfg: Configuration, max_steps: int, trace: Optional[List[str]] = None,
          observer: Optional[Callable[[Configuration, str], None]] = None, steps: int = 0) -> Outcome:
    """Step ``cfg`` until it is done, fails or exceeds ``max_steps``."""
    while True:
        if steps >= max_steps:
            diag = Diagnostic(Category.Stuck, f"step budget of {max_steps} exhausted")
            return Outcome(TIMEOUT, diag, cfg.output, steps, trace or [], cfg)
        r = step(cfg)
        if type(r) is Continue:
            steps += 1
            if trace is not None:
                trace.append(r.tag)
            if observer is not None:
                observer(cfg, r.tag)
            continue
        if type(r) is Done:
            return Outcome(OK, None, cfg.output, steps, trace or [], cfg)
        d = r.diagnostic
        return Outcome(classify(d.category), d, cfg.output, steps, trace or [], cfg)


def run(program: Program, max_steps: Optional[int] = None, trace: bool = False,
        time_enabled: bool = False,
        observer: Optional[Callable[[Configuration, str], None]] = None) -> Outcome:
    """Load ``program`` and run ``main`` to completion."""
    limit = default_max_steps() if max_steps is None else max_steps
    tags: Optional[List[str]] = [] if trace else None
    try:
        cfg = load_program(program, time_enabled=time_enabled, trace=tags)
    except KrustError as err:
        d = err.diagnostic
        return Outcome(classify(d.category), d, "", 0, tags or [], None)
    return drive(cfg, limit, tags, observer, steps=getattr(cfg, "load_steps", 0))


def run_source(source: str, **kwargs) -> Outcome:
    try:
        program = parse_source(source)
    except (LexError, ParseError) as err:
        return Outcome(PARSE_ERROR, Diagnostic(Category.ParseError, str(err), err.span))
    return run(program, **kwargs)
