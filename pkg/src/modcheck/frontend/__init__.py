"""Textual ``.cd`` / ``.od`` frontend."""

from .context import bind_pattern, check_context, text_literals
from .lexer import ParseError, Severity, SourceDiagnostic
from .parser import parse_cd, parse_mod
from .printer import print_cd, print_mod, print_mods, print_object_model

__all__ = [
    "ParseError", "Severity", "SourceDiagnostic",
    "bind_pattern", "check_context", "text_literals",
    "parse_cd", "parse_mod",
    "print_cd", "print_mod", "print_mods", "print_object_model",
]
