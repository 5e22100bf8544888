"""Oriented link diagrams as crossing lists over arcs.

An arc runs from one under-passage to the next.  A crossing records its sign,
the over arc, and the under arcs entering (``under_in``) and leaving
(``under_out``) along the orientation.  Co-orientation convention: at a
positive crossing the over arc's normal points from ``under_in`` to
``under_out``, so the r_1 arc is ``under_in``; at a negative crossing it is
``under_out``.

File format::

    link <name>
    arcs <n>
    x <+|-> over=<a> in=<b> out=<c>
    component base=<arc> trace=<arc,arc,...>
"""

from __future__ import annotations

from dataclasses import dataclass


class DiagramParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class Crossing:
    sign: int
    over: int
    under_in: int
    under_out: int

    @property
    def r1(self) -> int:
        """Under arc on the tail side of the over arc's normal."""
        return self.under_in if self.sign > 0 else self.under_out

    @property
    def r2(self) -> int:
        return self.under_out if self.sign > 0 else self.under_in


@dataclass(frozen=True)
class Component:
    base: int
    trace: tuple[int, ...]


@dataclass(frozen=True)
class TraversalEvent:
    arc: int
    crossing: int
    sign: int
    next_arc: int


@dataclass(frozen=True)
class LinkDiagram:
    name: str
    arc_count: int
    crossings: tuple[Crossing, ...]
    components: tuple[Component, ...]

    def __post_init__(self):
        problems = _check(self)
        if problems:
            raise DiagramParseError(problems[0][0])

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def component_of(self, arc: int) -> int:
        for i, comp in enumerate(self.components):
            if arc in comp.trace:
                return i
        raise KeyError(arc)


def _check(D: LinkDiagram) -> list[tuple[str, tuple[str, int] | None]]:
    """Invariant violations as (message, (record kind, record index))."""
    out = []
    n = D.arc_count
    if n < 1:
        out.append(("diagram needs at least one arc", None))
    for k, c in enumerate(D.crossings):
        if c.sign not in (1, -1):
            out.append((f"crossing {k}: sign must be +1 or -1", ("x", k)))
        for a in (c.over, c.under_in, c.under_out):
            if not 0 <= a < n:
                out.append((f"crossing {k}: dangling arc {a}", ("x", k)))
    if out:
        return out
    owner = {}
    for i, comp in enumerate(D.components):
        if comp.base not in comp.trace:
            out.append((f"component {i}: base arc {comp.base} is not on its trace", ("component", i)))
        for a in comp.trace:
            if not 0 <= a < n:
                out.append((f"component {i}: dangling arc {a}", ("component", i)))
            elif a in owner:
                out.append((f"arc {a} appears in components {owner[a]} and {i}", ("component", i)))
            else:
                owner[a] = i
    missing = [a for a in range(n) if a not in owner]
    if missing:
        out.append((f"arc {missing[0]} belongs to no component", None))
    succ: dict[int, int] = {}
    incoming: dict[int, int] = {}
    for k, c in enumerate(D.crossings):
        if c.under_in in succ:
            out.append((f"arc {c.under_in} enters two under-passages", ("x", k)))
        if c.under_out in incoming:
            out.append((f"arc {c.under_out} leaves two under-passages", ("x", k)))
        succ[c.under_in] = c.under_out
        incoming[c.under_out] = k
    if out:
        return out
    for i, comp in enumerate(D.components):
        tr = comp.trace
        if len(tr) == 1 and tr[0] not in succ:
            if tr[0] in incoming:
                out.append((f"component {i}: arc {tr[0]} leaves an under-passage it never enters", ("component", i)))
            continue
        for j, a in enumerate(tr):
            nxt = tr[(j + 1) % len(tr)]
            if succ.get(a) != nxt:
                out.append((f"component {i}: trace step {a} -> {nxt} does not match the crossings", ("component", i)))
                break
    return out


def parse_diagram(text: str) -> LinkDiagram:
    name = None
    arcs = None
    crossings: list[Crossing] = []
    components: list[Component] = []
    cross_lines: list[int] = []
    comp_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "link":
                if len(rest) != 1:
                    raise ValueError("expected 'link <name>'")
                name = rest[0]
            elif head == "arcs":
                arcs = int(rest[0])
            elif head == "x":
                sign = {"+": 1, "-": -1}[rest[0]]
                fields = dict(kv.split("=", 1) for kv in rest[1:])
                crossings.append(Crossing(sign, int(fields["over"]), int(fields["in"]), int(fields["out"])))
                cross_lines.append(lineno)
            elif head == "component":
                fields = dict(kv.split("=", 1) for kv in rest)
                trace = tuple(int(a) for a in fields["trace"].split(","))
                components.append(Component(int(fields["base"]), trace))
                comp_lines.append(lineno)
            else:
                raise ValueError(f"unknown record {head!r}")
        except (ValueError, KeyError, IndexError) as exc:
            raise DiagramParseError(f"malformed record: {exc}", lineno) from None
    if name is None or arcs is None:
        raise DiagramParseError("missing 'link' or 'arcs' header")
    draft = object.__new__(LinkDiagram)
    for attr, val in (("name", name), ("arc_count", arcs), ("crossings", tuple(crossings)), ("components", tuple(components))):
        object.__setattr__(draft, attr, val)
    problems = _check(draft)
    if problems:
        msg, where = problems[0]
        line = None
        if where is not None:
            line = (cross_lines if where[0] == "x" else comp_lines)[where[1]]
        raise DiagramParseError(msg, line)
    return LinkDiagram(name, arcs, tuple(crossings), tuple(components))


def serialize_diagram(D: LinkDiagram) -> str:
    lines = [f"link {D.name}", f"arcs {D.arc_count}"]
    for c in D.crossings:
        s = "+" if c.sign > 0 else "-"
        lines.append(f"x {s} over={c.over} in={c.under_in} out={c.under_out}")
    for comp in D.components:
        lines.append(f"component base={comp.base} trace={','.join(map(str, comp.trace))}")
    return "\n".join(lines) + "\n"


def crossings_under(D: LinkDiagram, i: int) -> list[int]:
    """Indices of the crossings whose under arcs lie on component i."""
    if not 0 <= i < len(D.components):
        raise IndexError(f"component index {i} out of range")
    arcs = set(D.components[i].trace)
    return [k for k, c in enumerate(D.crossings) if c.under_in in arcs]


def traverse(D: LinkDiagram, i: int) -> list[TraversalEvent]:
    """Under-passages met travelling component i from its base arc."""
    if not 0 <= i < len(D.components):
        raise IndexError(f"component index {i} out of range")
    by_in = {c.under_in: k for k, c in enumerate(D.crossings)}
    comp = D.components[i]
    if comp.base not in by_in:
        return []
    events = []
    arc = comp.base
    while True:
        k = by_in[arc]
        c = D.crossings[k]
        events.append(TraversalEvent(arc, k, c.sign, c.under_out))
        arc = c.under_out
        if arc == comp.base:
            return events


def with_base(D: LinkDiagram, i: int, base: int) -> LinkDiagram:
    """Same diagram with component i's base arc moved."""
    comps = list(D.components)
    comps[i] = Component(base, comps[i].trace)
    return LinkDiagram(D.name, D.arc_count, D.crossings, tuple(comps))


__all__ = [
    "Component",
    "Crossing",
    "DiagramParseError",
    "LinkDiagram",
    "TraversalEvent",
    "crossings_under",
    "parse_diagram",
    "serialize_diagram",
    "traverse",
    "with_base",
]
