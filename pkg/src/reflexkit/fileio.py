"""Polytope text files and JSON reports.

A polytope file holds one or more blocks. Each block is a header line
``v n`` followed by ``v`` rows of ``n`` integers, one vertex per row. Lines
starting with ``#`` are comments; blank lines separate blocks.

The lenient importer also accepts PALP-style column blocks (header ``n v``
followed by ``n`` rows of ``v`` integers). A full-dimensional polytope has
more vertices than its dimension, so a header ``a b`` with ``a < b`` can only
be the column layout; ``a == b`` is rejected in both readers.
"""

from __future__ import annotations

from fractions import Fraction

from .polytope import Polytope

__all__ = ["ParseError", "parse", "import_polytopes", "emit", "exact"]

SCHEMA = 1


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def _blocks(text):
    """Yield (header_line, (a, b), [(lineno, row), ...]) for each block."""
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        raw = lines[i].strip()
        i += 1
        if not raw or raw.startswith("#"):
            continue
        header_line = i
        head = _ints(raw.split(), i)
        if len(head) != 2 or head[0] <= 0 or head[1] <= 0:
            raise ParseError(i, f"header must be two positive integers, got {raw!r}")
        a, b = head
        rows = []
        while len(rows) < a:
            if i >= len(lines):
                raise ParseError(i, f"block starting at line {header_line} needs {a} rows, found {len(rows)}")
            raw = lines[i].strip()
            i += 1
            if raw.startswith("#"):
                continue
            if not raw:
                raise ParseError(i, f"block starting at line {header_line} ended after {len(rows)} of {a} rows")
            row = _ints(raw.split(), i)
            if len(row) != b:
                raise ParseError(i, f"expected {b} entries, got {len(row)}")
            rows.append((i, row))
        yield header_line, (a, b), rows


def parse(text: str) -> list[list[tuple[int, ...]]]:
    """Strict reader: vertex lists, one per block, vertices as rows."""
    out = []
    for line, (v, n), rows in _blocks(text):
        if v <= n:
            raise ParseError(line, f"header '{v} {n}' declares too few vertices for dimension {n}")
        out.append([tuple(r) for _, r in rows])
    return out


def import_polytopes(text: str) -> list[list[tuple[int, ...]]]:
    """Lenient reader that also accepts vertices stored as columns."""
    out = []
    for line, (a, b), rows in _blocks(text):
        if a == b:
            raise ParseError(line, f"header '{a} {b}' is ambiguous")
        mat = [r for _, r in rows]
        if a < b:
            mat = [tuple(col) for col in zip(*mat)]
        out.append([tuple(r) for r in mat])
    return out


def emit(polytopes, comment: str | None = None) -> str:
    """Write polytopes (or plain vertex lists) in the row layout."""
    parts = []
    if comment:
        parts.extend(f"# {c}" for c in comment.splitlines())
    blocks = []
    for P in polytopes:
        verts = P.vertices if isinstance(P, Polytope) else P
        lines = [f"{len(verts)} {len(verts[0])}"]
        lines.extend(" ".join(str(x) for x in v) for v in verts)
        blocks.append("\n".join(lines))
    body = "\n\n".join(blocks)
    return "\n".join(parts + [body]) + "\n" if parts else body + "\n"


def exact(x):
    """JSON-safe exact number: int when integral, ``"p/q"`` string otherwise."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return [exact(y) for y in x]
    if isinstance(x, dict):
        return {str(k): exact(v) for k, v in x.items()}
    raise TypeError(f"not an exact number: {x!r}")
