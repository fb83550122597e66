"""Executable semantics for a small Rust subset."""

from .semantics import Outcome, run, run_source
from .state import Category, Configuration, Diagnostic
from .syntax import parse_source

__all__ = ["Category", "Configuration", "Diagnostic", "Outcome", "parse_source", "run", "run_source"]
