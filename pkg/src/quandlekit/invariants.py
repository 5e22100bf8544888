"""State-sum cocycle invariants and the coloring-extension obstruction.

Weights are accumulated additively in A; the group ring Z[A] is rendered
multiplicatively, e.g. ``4 + 12t`` for A = Z_2 with generator t.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .coloring import Coloring, _solve, holonomy, lift_coloring, project_coloring, enumerate_colorings
from .diagrams import LinkDiagram, crossings_under
from .extensions import build_extension
from .homology import Cochain2, FiniteAbelianGroup, cocycle_violation
from .quandle import FiniteQuandle


class InternalConsistencyError(AssertionError):
    """Two independent routes to the same count disagree."""


@dataclass(frozen=True)
class GroupRingValue:
    group: FiniteAbelianGroup
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", {int(k): int(v) for k, v in sorted(self.coefficients.items()) if v}
        )

    @property
    def mass(self) -> int:
        return sum(self.coefficients.values())

    @property
    def constant_term(self) -> int:
        return self.coefficients.get(0, 0)

    def is_integer(self) -> bool:
        return set(self.coefficients) <= {0}

    def __str__(self):
        return render(self)


def _monomial(A: FiniteAbelianGroup, a: int) -> str:
    if a == 0:
        return ""
    if A.is_cyclic:
        return "t" if a == 1 else f"t^{a}"
    parts = []
    for i, e in enumerate(A.decode(a), start=1):
        if e:
            parts.append(f"t{i}" if e == 1 else f"t{i}^{e}")
    return "*".join(parts)


def render(v: GroupRingValue) -> str:
    """``4 + 12t`` style; non-cyclic groups use ``t1^e1*t2^e2`` monomials."""
    terms = []
    for a, c in v.coefficients.items():
        mono = _monomial(v.group, a)
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}{mono}")
    return " + ".join(terms) if terms else "0"


def render_raw(v: GroupRingValue) -> str:
    return "".join(f"coeff {v.group.element_str(a)} {c}\n" for a, c in v.coefficients.items())


def render_vector(vec) -> str:
    return "(" + ", ".join(render(v) for v in vec) + ")"


def _require_cocycle(X: FiniteQuandle, phi: Cochain2):
    if phi.quandle != X:
        raise ValueError("cocycle is defined on a different quandle")
    bad = cocycle_violation(phi)
    if bad is not None:
        raise ValueError(f"not a 2-cocycle (fails at {bad}); the state-sum would not be an invariant")


def boltzmann_weight(D: LinkDiagram, k: int, C, phi: Cochain2) -> int:
    """sign * phi(x, y) with x the r1 color and y the over color at crossing k."""
    c = D.crossings[k]
    w = phi(C[c.r1], C[c.over])
    return int(w if c.sign > 0 else phi.group.neg(w))


def _weight_sum(D, ks, colors, phi) -> int:
    A = phi.group
    total = 0
    for k in ks:
        total = A.add(total, boltzmann_weight(D, k, colors, phi))
    return int(total)


def state_sum(D: LinkDiagram, X: FiniteQuandle, phi: Cochain2) -> GroupRingValue:
    _require_cocycle(X, phi)
    every = range(D.crossing_count)
    acc = Counter(_weight_sum(D, every, colors, phi) for colors in _solve(D, X))
    return GroupRingValue(phi.group, acc)


def componentwise_state_sum(D: LinkDiagram, X: FiniteQuandle, phi: Cochain2) -> tuple[GroupRingValue, ...]:
    _require_cocycle(X, phi)
    under = [crossings_under(D, i) for i in range(len(D.components))]
    accs = [Counter() for _ in under]
    for colors in _solve(D, X):
        for acc, ks in zip(accs, under):
            acc[_weight_sum(D, ks, colors, phi)] += 1
    return tuple(GroupRingValue(phi.group, acc) for acc in accs)


@dataclass(frozen=True)
class ObstructionReport:
    total: int
    extendable: int
    holonomies: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]  # (colors, per-component holonomy)

    @property
    def non_extendable(self) -> int:
        return self.total - self.extendable


def obstruction_report(D: LinkDiagram, X: FiniteQuandle, phi: Cochain2) -> ObstructionReport:
    """Colorings by X, and how many extend to E(X, A, phi), counted three ways.

    (a) colorings whose per-component weight sums all vanish (the constant
    term of the state-sum for a knot); (b) colorings for which the traversal
    lift closes up and checks out in the total quandle; (c) distinct
    projections of colorings by the total quandle.  Any disagreement raises.
    """
    _require_cocycle(X, phi)
    ext = build_extension(X, phi.group, phi)
    colorings = enumerate_colorings(D, X)
    holos = []
    by_weight = 0
    by_lift = 0
    for C in colorings:
        h = tuple(holonomy(C, phi, i) for i in range(len(D.components)))
        holos.append((C.colors, h))
        by_weight += not any(h)
        by_lift += lift_coloring(C, ext).success
    projected = {project_coloring(Coloring(D, tuple(c)), ext.projection).colors for c in _solve(D, ext.total)}
    by_projection = len(projected)
    if len(D.components) == 1:
        constant = state_sum(D, X, phi).constant_term
        if constant != by_weight:
            raise InternalConsistencyError(f"state-sum constant term {constant} != {by_weight} zero-holonomy colorings")
    if not by_weight == by_lift == by_projection:
        raise InternalConsistencyError(
            f"extendable counts disagree: weights {by_weight}, lifts {by_lift}, projections {by_projection}"
        )
    return ObstructionReport(len(colorings), by_weight, tuple(holos))


__all__ = [
    "GroupRingValue",
    "InternalConsistencyError",
    "ObstructionReport",
    "boltzmann_weight",
    "componentwise_state_sum",
    "obstruction_report",
    "render",
    "render_raw",
    "render_vector",
    "state_sum",
]
