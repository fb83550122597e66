from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .nodes import Span

KEYWORDS = frozenset({
    "let", "mut", "fn", "return", "if", "else", "while", "loop", "for", "in",
    "struct", "const", "static", "true", "false",
})
MACROS = frozenset({"println", "vec"})

# longest first
PUNCTUATION = (
    "..=", "->", "..", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=",
    "+", "-", "*", "/", "%", "|", "&", "<", ">", "=", "!",
    "(", ")", "[", "]", "{", "}", ",", ";", ":", ".",
)

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "0": "\0", "\\": "\\", "'": "'", '"': '"'}


class LexError(Exception):
    def __init__(self, span: Span, message: str):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.message = message


@dataclass(frozen=True)
class Token:
    kind: str  # int | float | str | char | ident | kw | macro | op | eof
    text: str
    span: Span
    value: object = None

    def __repr__(self) -> str:
        if self.kind in ("op", "kw"):
            return self.text
        if self.kind == "eof":
            return "<eof>"
        return f"{self.kind}({self.text})"


class _Cursor:
    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def peek(self, k: int = 0) -> str:
        i = self.pos + k
        return self.src[i] if i < len(self.src) else ""

    def advance(self, n: int = 1) -> str:
        out = self.src[self.pos:self.pos + n]
        for ch in out:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return out

    def span(self) -> Span:
        return Span(self.line, self.col)


def _read_escape(cur: _Cursor, start: Span) -> str:
    ch = cur.advance()
    if ch in _ESCAPES:
        return _ESCAPES[ch]
    if ch == "u" and cur.peek() == "{":
        cur.advance()
        digits = ""
        while cur.peek() and cur.peek() != "}":
            digits += cur.advance()
        if not cur.peek():
            raise LexError(start, "unterminated unicode escape")
        cur.advance()
        try:
            return chr(int(digits, 16))
        except ValueError:
            raise LexError(start, f"bad unicode escape {digits!r}") from None
    raise LexError(start, f"unknown escape \\{ch}")


def tokenize(source: str) -> List[Token]:
    """Split source text into tokens, dropping whitespace and comments."""
    cur = _Cursor(source)
    tokens: List[Token] = []
    while True:
        ch = cur.peek()
        if not ch:
            break
        if ch.isspace():
            cur.advance()
            continue
        if ch == "/" and cur.peek(1) == "/":
            while cur.peek() and cur.peek() != "\n":
                cur.advance()
            continue
        if ch == "/" and cur.peek(1) == "*":
            start = cur.span()
            cur.advance(2)
            while not (cur.peek() == "*" and cur.peek(1) == "/"):
                if not cur.peek():
                    raise LexError(start, "unterminated block comment")
                cur.advance()
            cur.advance(2)
            continue
        start = cur.span()
        if ch.isdigit():
            tokens.append(_number(cur, start))
        elif ch.isalpha() or ch == "_":
            word = ""
            while cur.peek() and (cur.peek().isalnum() or cur.peek() == "_"):
                word += cur.advance()
            if word in MACROS and cur.peek() == "!":
                cur.advance()
                tokens.append(Token("macro", word + "!", start))
            elif word in KEYWORDS:
                tokens.append(Token("kw", word, start))
            else:
                tokens.append(Token("ident", word, start))
        elif ch == '"':
            cur.advance()
            text = ""
            while True:
                c = cur.peek()
                if not c:
                    raise LexError(start, "unterminated string literal")
                cur.advance()
                if c == '"':
                    break
                text += _read_escape(cur, start) if c == "\\" else c
            tokens.append(Token("str", text, start, text))
        elif ch == "'":
            cur.advance()
            c = cur.peek()
            if not c or c == "\n":
                raise LexError(start, "unterminated char literal")
            cur.advance()
            value = _read_escape(cur, start) if c == "\\" else c
            if cur.peek() != "'":
                raise LexError(start, "unterminated char literal")
            cur.advance()
            tokens.append(Token("char", value, start, value))
        else:
            op = _punct(cur)
            if op is None:
                raise LexError(start, f"unrecognized character {ch!r}")
            cur.advance(len(op))
            tokens.append(Token("op", op, start))
    tokens.append(Token("eof", "", cur.span()))
    return tokens


def _punct(cur: _Cursor) -> Optional[str]:
    rest = cur.src[cur.pos:cur.pos + 3]
    for p in PUNCTUATION:
        if rest.startswith(p):
            return p
    return None


def _number(cur: _Cursor, start: Span) -> Token:
    text = ""
    while cur.peek().isdigit() or cur.peek() == "_":
        text += cur.advance()
    is_float = False
    # `0..3` is a range, not a float
    if cur.peek() == "." and cur.peek(1).isdigit():
        is_float = True
        text += cur.advance()
        while cur.peek().isdigit() or cur.peek() == "_":
            text += cur.advance()
    if cur.peek() in ("e", "E") and (cur.peek(1).isdigit() or (cur.peek(1) in "+-" and cur.peek(2).isdigit())):
        is_float = True
        text += cur.advance()
        if cur.peek() in "+-":
            text += cur.advance()
        while cur.peek().isdigit():
            text += cur.advance()
    if cur.peek().isalpha() or cur.peek() == "_":
        raise LexError(start, f"unsupported literal suffix after {text!r}")
    if is_float:
        return Token("float", text, start, float(text.replace("_", "")))
    return Token("int", text, start, int(text.replace("_", "")))
