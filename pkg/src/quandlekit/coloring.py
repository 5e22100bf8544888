"""Quandle colorings of link diagrams and their lifts along abelian extensions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagrams import LinkDiagram, crossings_under, traverse
from .homology import Cochain2
from .quandle import FiniteQuandle


@dataclass(frozen=True)
class Coloring:
    diagram: LinkDiagram
    colors: tuple[int, ...]

    def __getitem__(self, arc: int) -> int:
        return self.colors[arc]


def is_coloring(D: LinkDiagram, X: FiniteQuandle, colors) -> bool:
    """color(r2) == color(r1) * color(over) at every crossing."""
    t = X.table
    return all(t[colors[c.r1], colors[c.over]] == colors[c.r2] for c in D.crossings)


def _arc_order(D: LinkDiagram) -> list[int]:
    order = []
    for comp in D.components:
        start = comp.trace.index(comp.base)
        order.extend(comp.trace[start:] + comp.trace[:start])
    return order


def _solve(D: LinkDiagram, X: FiniteQuandle):
    """Yield every coloring as a list, by backtracking with forward propagation."""
    t = X.table.tolist()
    rdiv = X.right_division.tolist()
    n = X.size
    crossings = [(c.r1, c.r2, c.over) for c in D.crossings]
    touching: list[list[int]] = [[] for _ in range(D.arc_count)]
    for k, (r1, r2, o) in enumerate(crossings):
        for a in {r1, r2, o}:
            touching[a].append(k)
    colors = [-1] * D.arc_count
    order = _arc_order(D)

    def propagate(arc, trail):
        stack = [arc]
        while stack:
            a = stack.pop()
            for k in touching[a]:
                r1, r2, o = crossings[k]
                y = colors[o]
                if y < 0:
                    continue
                x1, x2 = colors[r1], colors[r2]
                if x1 >= 0 and x2 >= 0:
                    if t[x1][y] != x2:
                        return False
                elif x1 >= 0:
                    colors[r2] = t[x1][y]
                    trail.append(r2)
                    stack.append(r2)
                elif x2 >= 0:
                    colors[r1] = rdiv[x2][y]
                    trail.append(r1)
                    stack.append(r1)
        return True

    def rec(i):
        while i < len(order) and colors[order[i]] >= 0:
            i += 1
        if i == len(order):
            yield list(colors)
            return
        arc = order[i]
        for v in range(n):
            trail = [arc]
            colors[arc] = v
            if propagate(arc, trail):
                yield from rec(i + 1)
            for a in trail:
                colors[a] = -1

    yield from rec(0)


def enumerate_colorings(D: LinkDiagram, X: FiniteQuandle) -> list[Coloring]:
    """All colorings, sorted lexicographically by the arc-color tuple."""
    found = sorted(tuple(c) for c in _solve(D, X))
    return [Coloring(D, c) for c in found]


def count_colorings(D: LinkDiagram, X: FiniteQuandle) -> int:
    return sum(1 for _ in _solve(D, X))


def _cocycle_of(ext_or_phi) -> Cochain2:
    return ext_or_phi if isinstance(ext_or_phi, Cochain2) else ext_or_phi.cocycle


def holonomy(C: Coloring, ext_or_phi, i: int) -> int:
    """Sum of sign * phi(r1 color, over color) over crossings under component i."""
    phi = _cocycle_of(ext_or_phi)
    A = phi.group
    total = 0
    for k in crossings_under(C.diagram, i):
        c = C.diagram.crossings[k]
        w = phi(C[c.r1], C[c.over])
        total = A.add(total, w if c.sign > 0 else A.neg(w))
    return int(total)


@dataclass(frozen=True)
class LiftResult:
    """Either a lifted coloring by the total quandle, or the per-component obstruction."""

    holonomies: tuple[int, ...]
    lifted: Coloring | None

    @property
    def success(self) -> bool:
        return self.lifted is not None


def lift_coloring(C: Coloring, ext, fibers=None) -> LiftResult:
    """Lift C along ext by travelling each component from its base arc.

    At a positive crossing the fibre coordinate gains phi(x, y); at a negative
    crossing it loses phi(z, y) with z the outgoing under color.  The lift
    closes up exactly when every component's holonomy vanishes, and the result
    is then re-checked as a coloring by the total quandle.
    """
    D = C.diagram
    phi = ext.cocycle
    A = ext.fiber
    X = ext.base
    if fibers is None:
        fibers = [0] * len(D.components)
    fiber = [-1] * D.arc_count
    holo = []
    for i, comp in enumerate(D.components):
        start = fibers[i]
        fiber[comp.base] = start
        cur = start
        for ev in traverse(D, i):
            c = D.crossings[ev.crossing]
            y = C[c.over]
            if ev.sign > 0:
                cur = A.add(cur, phi(C[c.under_in], y))
            else:
                cur = A.sub(cur, phi(C[c.under_out], y))
            if ev.next_arc != comp.base:
                fiber[ev.next_arc] = cur
        holo.append(int(A.sub(cur, start)))
    if any(holo):
        return LiftResult(tuple(holo), None)
    n = X.size
    lifted = tuple(int(fiber[a]) * n + C[a] for a in range(D.arc_count))
    if not is_coloring(D, ext.total, lifted):
        raise AssertionError("traversal lift is not a coloring by the total quandle")
    return LiftResult(tuple(holo), Coloring(D, lifted))


def project_coloring(C: Coloring, projection) -> Coloring:
    img = np.asarray(projection.images)
    return Coloring(C.diagram, tuple(int(img[c]) for c in C.colors))


__all__ = [
    "Coloring",
    "LiftResult",
    "count_colorings",
    "enumerate_colorings",
    "holonomy",
    "is_coloring",
    "lift_coloring",
    "project_coloring",
]
