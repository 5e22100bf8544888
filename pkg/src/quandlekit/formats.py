"""Text formats for quandle tables and 2-cochains.

Quandle table::

    quandle <name> <n>
    <n rows of n space-separated integers; row a lists a*0 .. a*(n-1)>

Cochain (only nonzero values, sorted by (x, y))::

    cocycle <quandle-name> <group, e.g. Z2 or Z2xZ4>
    <x> <y> <a>

``#`` starts a comment in both.  Writers emit LF line endings with no
trailing spaces, so reading then writing a canonical file is byte-exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .homology import Cochain2, FiniteAbelianGroup
from .quandle import FiniteQuandle


class MalformedInputError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ":".join(str(p) for p in (source, line) if p is not None)
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.source = source


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


@dataclass(frozen=True)
class TableFile:
    name: str
    table: np.ndarray


def read_table(text: str, source: str | None = None) -> TableFile:
    """Parse a quandle table file without checking the axioms."""
    recs = list(_records(text))
    if not recs:
        raise MalformedInputError("empty quandle file", None, source)
    lineno, head = recs[0]
    if len(head) != 3 or head[0] != "quandle":
        raise MalformedInputError("expected header 'quandle <name> <n>'", lineno, source)
    try:
        n = int(head[2])
    except ValueError:
        raise MalformedInputError(f"bad size {head[2]!r}", lineno, source) from None
    if n < 1:
        raise MalformedInputError("size must be positive", lineno, source)
    rows = recs[1:]
    if len(rows) != n:
        last = rows[-1][0] if rows else lineno
        raise MalformedInputError(f"expected {n} rows, found {len(rows)}", last, source)
    table = np.empty((n, n), dtype=np.int64)
    for i, (lineno, fields) in enumerate(rows):
        if len(fields) != n:
            raise MalformedInputError(f"row {i} has {len(fields)} entries, expected {n}", lineno, source)
        try:
            table[i] = [int(f) for f in fields]
        except ValueError:
            raise MalformedInputError(f"row {i} has a non-integer entry", lineno, source) from None
        bad = [v for v in table[i] if not 0 <= v < n]
        if bad:
            raise MalformedInputError(f"row {i}: entry {bad[0]} out of range 0..{n - 1}", lineno, source)
    return TableFile(head[1], table)


def parse_quandle(text: str, source: str | None = None) -> FiniteQuandle:
    """Parse and validate; axiom failures raise QuandleAxiomError."""
    f = read_table(text, source)
    return FiniteQuandle(f.table, f.name)


def file_name(label: str) -> str:
    return "".join(label.split()) or "X"


def serialize_quandle(X: FiniteQuandle, name: str | None = None) -> str:
    lines = [f"quandle {file_name(name or X.label)} {X.size}"]
    lines += [" ".join(map(str, row)) for row in X.table.tolist()]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CochainFile:
    quandle_name: str
    cochain: Cochain2


def parse_cochain(text: str, X: FiniteQuandle, source: str | None = None) -> CochainFile:
    """Parse against the quandle X; the cocycle condition is not checked here."""
    recs = list(_records(text))
    if not recs:
        raise MalformedInputError("empty cochain file", None, source)
    lineno, head = recs[0]
    if len(head) != 3 or head[0] != "cocycle":
        raise MalformedInputError("expected header 'cocycle <quandle-name> <group>'", lineno, source)
    try:
        A = FiniteAbelianGroup.parse(head[2])
    except ValueError as exc:
        raise MalformedInputError(str(exc), lineno, source) from None
    n = X.size
    values = np.zeros((n, n), dtype=np.int64)
    seen = set()
    for lineno, fields in recs[1:]:
        if len(fields) != 3:
            raise MalformedInputError("expected 'x y a'", lineno, source)
        try:
            x, y = int(fields[0]), int(fields[1])
            a = A.parse_element(fields[2])
        except ValueError as exc:
            raise MalformedInputError(f"bad entry: {exc}", lineno, source) from None
        if not (0 <= x < n and 0 <= y < n):
            raise MalformedInputError(f"pair ({x}, {y}) outside the {n}-element quandle", lineno, source)
        if (x, y) in seen:
            raise MalformedInputError(f"pair ({x}, {y}) listed twice", lineno, source)
        if x == y and a:
            raise MalformedInputError(f"quandle cochains vanish on ({x}, {x})", lineno, source)
        seen.add((x, y))
        values[x, y] = a
    return CochainFile(head[1], Cochain2(X, A, values))


def serialize_cochain(phi: Cochain2, quandle_name: str | None = None) -> str:
    A = phi.group
    lines = [f"cocycle {file_name(quandle_name or phi.quandle.label)} {A}"]
    lines += [f"{x} {y} {A.element_str(a)}" for x, y, a in sorted(phi.nonzero_terms())]
    return "\n".join(lines) + "\n"


__all__ = [
    "CochainFile",
    "MalformedInputError",
    "TableFile",
    "parse_cochain",
    "parse_quandle",
    "read_table",
    "serialize_cochain",
    "serialize_quandle",
]
