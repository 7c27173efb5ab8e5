"""DIMACS CNF export and import."""

from __future__ import annotations


def export_dimacs(problem, comments: bool = True) -> str:
    """Standard DIMACS text: role comments, ``p cnf`` header, zero-terminated clauses."""
    out = []
    if comments:
        for v in sorted(problem.meaning):
            out.append(f"c {v} {problem.meaning[v]}")
    out.append(f"p cnf {problem.variable_count} {len(problem.clauses)}")
    for c in problem.clauses:
        out.append(" ".join(map(str, c)) + (" 0" if c else "0"))
    return "\n".join(out) + "\n"


class DimacsError(ValueError):
    pass


def parse_dimacs(text: str):
    """Return ``(variable count, clauses, comment lines)``.

    Clauses may span lines; each ends at its ``0``.
    """
    header = None
    clauses, comments, current = [], [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or header is not None:
                raise DimacsError(f"line {lineno}: bad header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: bad header {line!r}") from None
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                x = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: not a literal: {tok!r}") from None
            if x == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(x) > header[0]:
                    raise DimacsError(f"line {lineno}: literal {x} exceeds {header[0]} variables")
                current.append(x)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        clauses.append(tuple(current))
    if len(clauses) != header[1]:
        raise DimacsError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return header[0], clauses, comments
