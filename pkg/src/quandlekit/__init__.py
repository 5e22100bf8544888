"""Finite quandles, quandle cohomology, abelian extensions and cocycle invariants of links."""

from .coloring import Coloring, LiftResult, count_colorings, enumerate_colorings, holonomy, lift_coloring
from .diagrams import LinkDiagram, crossings_under, parse_diagram, serialize_diagram, traverse
from .extensions import (
    AbelianExtension,
    build_extension,
    crt_decompose_dihedral,
    dihedral_doubling_cocycle,
    extract_cocycle,
    is_trivial_extension,
    modulus_lift_cocycle,
    pullback_cocycle,
    unipotent_lift_cocycle,
)
from .homology import (
    Chain2,
    Cochain2,
    FiniteAbelianGroup,
    coboundary1,
    cohomologous,
    compute_H2,
    evaluate,
    is_coboundary,
    is_cocycle2,
    is_cycle2,
)
from .invariants import GroupRingValue, componentwise_state_sum, obstruction_report, state_sum
from .quandle import (
    FiniteQuandle,
    QuandleMap,
    find_isomorphism,
    make_alexander,
    make_conjugation,
    make_dihedral,
    make_product,
    make_trivial,
    verify_quandle,
)

__all__ = [
    "AbelianExtension",
    "Chain2",
    "Cochain2",
    "Coloring",
    "FiniteAbelianGroup",
    "FiniteQuandle",
    "GroupRingValue",
    "LiftResult",
    "LinkDiagram",
    "QuandleMap",
    "build_extension",
    "coboundary1",
    "cohomologous",
    "componentwise_state_sum",
    "compute_H2",
    "count_colorings",
    "crossings_under",
    "crt_decompose_dihedral",
    "dihedral_doubling_cocycle",
    "enumerate_colorings",
    "evaluate",
    "extract_cocycle",
    "find_isomorphism",
    "holonomy",
    "is_coboundary",
    "is_cocycle2",
    "is_cycle2",
    "is_trivial_extension",
    "lift_coloring",
    "make_alexander",
    "make_conjugation",
    "make_dihedral",
    "make_product",
    "make_trivial",
    "modulus_lift_cocycle",
    "obstruction_report",
    "parse_diagram",
    "pullback_cocycle",
    "serialize_diagram",
    "state_sum",
    "traverse",
    "unipotent_lift_cocycle",
    "verify_quandle",
]
