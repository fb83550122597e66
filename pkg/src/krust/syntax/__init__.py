"""Lexing, parsing and pretty-printing for the KRust subset."""

from .lexer import LexError, Token, tokenize
from .nodes import Program, Span
from .parser import ParseError, parse, parse_source
from .printer import pretty

__all__ = [
    "LexError", "ParseError", "Program", "Span", "Token",
    "parse", "parse_source", "pretty", "tokenize",
]
