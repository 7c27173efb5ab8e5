from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import NamedTuple, Optional


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class SourceDiagnostic:
    severity: Severity
    file: str
    line: int
    column: int
    code: str
    message: str

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def __str__(self):
        return f"{self.file}:{self.line}:{self.column}: {self.severity.value}: {self.message} [{self.code}]"


class ParseError(Exception):
    """Raised when a source text cannot be turned into a model."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


class Token(NamedTuple):
    kind: str  # id | int | string | sym | eof
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\f\v﻿]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<int>-?[0-9]+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym><->|<<|>>|->|\.\.|[{}();:,=<>.*])
""", re.VERBOSE)


def decode_source(source, file: str) -> str:
    if isinstance(source, (bytes, bytearray)):
        try:
            return bytes(source).decode("utf-8")
        except UnicodeDecodeError as e:
            prefix = bytes(source)[:e.start].decode("utf-8", "replace")
            line = prefix.count("\n") + 1
            col = len(prefix) - (prefix.rfind("\n") + 1) + 1
            raise ParseError([SourceDiagnostic(Severity.ERROR, file, line, col, "encoding",
                                               "source is not valid UTF-8")])
    return source


def tokenize(text: str, file: str = "<string>") -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            if text[pos] == '"':
                msg, code = "unterminated string literal", "unterminated-string"
            else:
                msg, code = f"unexpected character {text[pos]!r}", "bad-character"
            raise ParseError([SourceDiagnostic(Severity.ERROR, file, line, col, code, msg)])
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def unquote(literal: str) -> str:
    out, i = [], 1
    while i < len(literal) - 1:
        ch = literal[i]
        if ch == "\\":
            i += 1
            ch = {"n": "\n", "t": "\t"}.get(literal[i], literal[i])
        out.append(ch)
        i += 1
    return "".join(out)


class TokenStream:
    """Cursor over a token list with the usual recursive-descent helpers."""

    def __init__(self, text: str, file: str):
        self.file = file
        self.tokens = tokenize(text, file)
        self.i = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, text: str, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok.kind in ("id", "sym") and tok.text == text

    def accept(self, text: str) -> Optional[Token]:
        if self.at(text):
            return self.next()
        return None

    def expect(self, text: str) -> Token:
        if self.at(text):
            return self.next()
        self.fail(f"'{text}'")

    def expect_id(self, what: str = "identifier") -> Token:
        if self.peek().kind == "id":
            return self.next()
        self.fail(what)

    def expect_int(self) -> int:
        if self.peek().kind == "int":
            return int(self.next().text)
        self.fail("integer")

    def fail(self, expected: str):
        tok = self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError([self.diag("syntax", f"expected {expected}, found {found}", tok)])

    def diag(self, code, message, tok=None, pos=None, severity=Severity.ERROR):
        if pos is None:
            tok = tok or self.peek()
            pos = (tok.line, tok.col)
        return SourceDiagnostic(severity, self.file, pos[0], pos[1], code, message)
