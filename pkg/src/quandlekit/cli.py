"""Command-line entry point: ``quandlekit <group> <command> ...``.

Exit codes: 0 success, 1 validation or axiom failure, 2 malformed input.
File arguments that do not exist locally are looked up in the data
directory (bundled, or ``QUANDLEKIT_DATA``).
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import datafiles
from .coloring import Coloring, count_colorings, enumerate_colorings, is_coloring, lift_coloring
from .diagrams import DiagramParseError
from .extensions import (
    NotACocycleError,
    ExtensionHypothesisError,
    build_extension,
    crt_decompose_dihedral,
    dihedral_doubling_cocycle,
    extract_cocycle,
    modulus_lift_cocycle,
    unipotent_lift_cocycle,
)
from .formats import MalformedInputError, parse_cochain, read_table, serialize_cochain, serialize_quandle
from .golden import run_all
from .homology import Chain2, FiniteAbelianGroup, cocycle_violation, compute_H2, evaluate, is_coboundary, is_cycle2
from .invariants import componentwise_state_sum, obstruction_report, render, render_raw, state_sum
from .quandle import (
    FiniteQuandle,
    FinitenessError,
    MalformedTableError,
    QuandleAxiomError,
    find_isomorphism,
    make_alexander,
    make_conjugation,
    make_dihedral,
    make_product,
    make_trivial,
    symmetric_group_table,
    verify_quandle,
)


class ValidationFailure(Exception):
    """Well-formed input that fails a mathematical check (exit 1)."""


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _quandle(path) -> FiniteQuandle:
    return datafiles.load_quandle(path)


def _cochain(path, X: FiniteQuandle, verify: bool):
    p = datafiles.resolve(path)
    phi = parse_cochain(p.read_text(), X, str(path)).cochain
    if verify:
        bad = cocycle_violation(phi)
        if bad is not None:
            raise ValidationFailure(f"{path}: not a 2-cocycle, condition fails at (x, y, z) = {bad}")
    return phi


def _diagram(path):
    try:
        return datafiles.load_diagram(path)
    except DiagramParseError as exc:
        raise MalformedInputError(str(exc), None, str(path)) from None


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


# ------------------------------------------------------------------ quandle


def cmd_quandle_make(args):
    kind, params = args.kind, args.params
    try:
        if kind == "trivial":
            X = make_trivial(int(params[0]))
        elif kind == "dihedral":
            X = make_dihedral(int(params[0]))
        elif kind == "alexander":
            X = make_alexander(int(params[0]), _int_list(params[1]), basis=args.basis)
        elif kind == "symmetric":
            k = int(params[0])
            X = make_conjugation(symmetric_group_table(k), int(params[1]) if len(params) > 1 else 1)
        elif kind == "product":
            X = make_product(_quandle(params[0]), _quandle(params[1]))
        else:
            raise MalformedInputError(f"unknown quandle kind {kind!r}")
    except (IndexError, ValueError) as exc:
        if isinstance(exc, (MalformedInputError, FinitenessError)):
            raise
        raise MalformedInputError(f"bad parameters for {kind}: {params}") from None
    _emit(serialize_quandle(X, args.name), args.output)


def cmd_quandle_verify(args):
    f = read_table(datafiles.resolve(args.file).read_text(), args.file)
    report = verify_quandle(f.table)
    if not report.valid:
        for v in report.violations:
            print(f"{args.file}: {v}")
        return 1
    print(f"{args.file}: {f.name} is a quandle of order {f.table.shape[0]}")
    return 0


def cmd_quandle_iso(args):
    X, Y = _quandle(args.first), _quandle(args.second)
    f = find_isomorphism(X, Y)
    if f is None:
        print("not isomorphic")
        return 1
    print("isomorphism " + " ".join(map(str, f.images.tolist())))
    return 0


# --------------------------------------------------------------- cohomology


def _parse_chain(terms: list[str]) -> Chain2:
    """Terms ``x,y`` or ``k:x,y``."""
    c = Chain2.of()
    for t in terms:
        coef, _, pair = t.rpartition(":")
        try:
            x, y = (int(v) for v in pair.split(","))
            k = int(coef) if coef else 1
        except ValueError:
            raise MalformedInputError(f"bad chain term {t!r}; expected x,y or k:x,y") from None
        c = c + Chain2({(x, y): k})
    return c


def cmd_cohomology_check(args):
    X = _quandle(args.quandle)
    phi = _cochain(args.cochain, X, verify=False)
    bad = cocycle_violation(phi)
    if bad is not None:
        print(f"not a 2-cocycle: condition fails at (x, y, z) = {bad}")
        return 1
    print("2-cocycle")
    return 0


def cmd_cohomology_coboundary(args):
    X = _quandle(args.quandle)
    phi = _cochain(args.cochain, X, verify=not args.no_verify)
    f = is_coboundary(phi)
    if f is None:
        print("not a coboundary")
    else:
        A = phi.group
        print("coboundary of f = " + " ".join(A.element_str(int(v)) for v in f))
    return 0


def cmd_cohomology_h2(args):
    X = _quandle(args.quandle)
    res = compute_H2(X, args.q)
    group = " + ".join(f"Z{d}" for d in res.invariant_factors) or "0"
    print(f"H2 = {group}")
    print(f"rank {res.rank}")
    if args.representatives:
        for o, rep in zip(res.orders, res.representatives):
            print(f"# representative of order {o}")
            sys.stdout.write(serialize_cochain(rep))
    return 0


def cmd_cohomology_eval(args):
    X = _quandle(args.quandle)
    phi = _cochain(args.cochain, X, verify=not args.no_verify)
    c = _parse_chain(args.terms)
    if any(not (0 <= x < X.size and 0 <= y < X.size) for x, y in c.terms):
        raise MalformedInputError("chain term outside the quandle")
    if not is_cycle2(X, c, modulus=phi.group.factors[0] if phi.group.is_cyclic else None):
        print("warning: chain is not a cycle", file=sys.stderr)
    print(phi.group.element_str(evaluate(phi, c)))
    return 0


# --------------------------------------------------------------- extensions


def cmd_extend_build(args):
    X = _quandle(args.quandle)
    phi = _cochain(args.cochain, X, verify=True)
    ext = build_extension(X, phi.group, phi)
    _emit(serialize_quandle(ext.total, args.name or f"E_{X.label}"), args.output)
    return 0


def cmd_extend_extract(args):
    E, X = _quandle(args.total), _quandle(args.base)
    A = FiniteAbelianGroup.parse(args.group)
    try:
        phi = extract_cocycle(E, X, A)
    except ExtensionHypothesisError as exc:
        raise ValidationFailure(str(exc)) from None
    _emit(serialize_cochain(phi), args.output)
    return 0


def _write_base(X: FiniteQuandle, path: str | None):
    if path:
        Path(path).write_text(serialize_quandle(X))


def cmd_extend_family(args, lift):
    X, phi = lift(args.q, args.m)
    _write_base(X, args.quandle_out)
    _emit(serialize_cochain(phi), args.output)
    return 0


def cmd_extend_doubling(args):
    phi = dihedral_doubling_cocycle(args.n)
    _write_base(phi.quandle, args.quandle_out)
    _emit(serialize_cochain(phi), args.output)
    return 0


def cmd_extend_crt(args):
    f, moduli = crt_decompose_dihedral(args.n)
    print("R{} -> {}".format(args.n, " x ".join(f"R{m}" for m in moduli)))
    for x, img in enumerate(f.images.tolist()):
        coords = []
        for m in reversed(moduli):
            img, r = divmod(img, m)
            coords.append(r)
        print(f"{x} -> ({', '.join(map(str, reversed(coords)))})")
    return 0


# ----------------------------------------------------------------- colorings


def cmd_color_count(args):
    print(count_colorings(_diagram(args.diagram), _quandle(args.quandle)))
    return 0


def cmd_color_list(args):
    for C in enumerate_colorings(_diagram(args.diagram), _quandle(args.quandle)):
        print(" ".join(map(str, C.colors)))
    return 0


def cmd_color_lift(args):
    D, X = _diagram(args.diagram), _quandle(args.quandle)
    phi = _cochain(args.cochain, X, verify=not args.no_verify)
    ext = build_extension(X, phi.group, phi, check=False)
    if args.colors:
        colors = tuple(_int_list(args.colors))
        if len(colors) != D.arc_count or any(not 0 <= c < X.size for c in colors):
            raise MalformedInputError(f"coloring needs {D.arc_count} colors in 0..{X.size - 1}")
        if not is_coloring(D, X, colors):
            raise ValidationFailure("the given assignment is not a coloring")
        colorings = [Coloring(D, colors)]
    else:
        colorings = enumerate_colorings(D, X)
    A = phi.group
    for C in colorings:
        res = lift_coloring(C, ext)
        holo = " ".join(A.element_str(h) for h in res.holonomies)
        head = " ".join(map(str, C.colors))
        if res.success:
            print(f"{head} | lifts | {' '.join(map(str, res.lifted.colors))}")
        else:
            print(f"{head} | obstructed | holonomy {holo}")
    return 0


# ---------------------------------------------------------------- invariants


def _triple(args):
    D, X = _diagram(args.diagram), _quandle(args.quandle)
    return D, X, _cochain(args.cochain, X, verify=True)


def cmd_invariant_state_sum(args):
    v = state_sum(*_triple(args))
    sys.stdout.write(render_raw(v) if args.raw else render(v) + "\n")
    return 0


def cmd_invariant_components(args):
    vec = componentwise_state_sum(*_triple(args))
    if args.raw:
        for i, v in enumerate(vec):
            sys.stdout.write(f"component {i}\n" + render_raw(v))
    else:
        print("(" + ", ".join(render(v) for v in vec) + ")")
    return 0


def cmd_invariant_obstruction(args):
    D, X, phi = _triple(args)
    r = obstruction_report(D, X, phi)
    print(f"colorings {r.total}")
    print(f"extendable {r.extendable}")
    print(f"non-extendable {r.non_extendable}")
    if args.raw:
        A = phi.group
        for colors, h in r.holonomies:
            print(f"holonomy {' '.join(map(str, colors))} | {' '.join(A.element_str(x) for x in h)}")
    return 0


def cmd_paper_suite(args):
    results = run_all()
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quandlekit", description="Finite quandles, cohomology and cocycle invariants.")
    groups = p.add_subparsers(dest="group", required=True)

    def command(parent, name, fn, help_text, *, out=False, verify=False):
        sp = parent.add_parser(name, help=help_text)
        sp.set_defaults(fn=fn)
        if out:
            sp.add_argument("-o", "--output", help="write to a file instead of stdout")
        if verify:
            sp.add_argument("--no-verify", action="store_true", help="skip the cocycle check on load")
        return sp

    q = groups.add_parser("quandle", help="build, verify and compare quandles").add_subparsers(dest="cmd", required=True)
    sp = command(q, "make", cmd_quandle_make, "write a standard quandle table", out=True)
    sp.add_argument("kind", choices=["trivial", "dihedral", "alexander", "symmetric", "product"])
    sp.add_argument("params", nargs="*", help="trivial/dihedral: n; alexander: n 'h0,h1,..'; symmetric: k [power]; product: A B")
    sp.add_argument("--basis", choices=["T", "1-T"], default="T")
    sp.add_argument("--name")
    sp = command(q, "verify", cmd_quandle_verify, "check the quandle axioms")
    sp.add_argument("file")
    sp = command(q, "iso", cmd_quandle_iso, "search for an isomorphism")
    sp.add_argument("first")
    sp.add_argument("second")

    c = groups.add_parser("cohomology", help="cocycles, coboundaries and H^2").add_subparsers(dest="cmd", required=True)
    sp = command(c, "check", cmd_cohomology_check, "check the 2-cocycle condition")
    sp.add_argument("quandle")
    sp.add_argument("cochain")
    sp = command(c, "coboundary", cmd_cohomology_coboundary, "decide whether a cocycle is a coboundary", verify=True)
    sp.add_argument("quandle")
    sp.add_argument("cochain")
    sp = command(c, "h2", cmd_cohomology_h2, "second cohomology with Z_q coefficients")
    sp.add_argument("quandle")
    sp.add_argument("q", type=int)
    sp.add_argument("--representatives", action="store_true", help="also print representative cocycles")
    sp = command(c, "eval", cmd_cohomology_eval, "evaluate a cocycle on a 2-chain", verify=True)
    sp.add_argument("quandle")
    sp.add_argument("cochain")
    sp.add_argument("terms", nargs="+", help="chain terms x,y or k:x,y")

    e = groups.add_parser("extend", help="abelian extensions").add_subparsers(dest="cmd", required=True)
    sp = command(e, "build", cmd_extend_build, "total quandle of E(X, A, phi)", out=True)
    sp.add_argument("quandle")
    sp.add_argument("cochain")
    sp.add_argument("--name")
    sp = command(e, "extract", cmd_extend_extract, "recover a cocycle from an extension", out=True)
    sp.add_argument("total")
    sp.add_argument("base")
    sp.add_argument("group", help="fibre group, e.g. Z2")
    for name, lift, text in (
        ("thm31", modulus_lift_cocycle, "cocycle lifting Z_{q^m}[T]/(T-1+q) to modulus q^(m+1)"),
        ("thm32", unipotent_lift_cocycle, "cocycle lifting Z_q[T]/(1-T)^m to (1-T)^(m+1)"),
    ):
        sp = command(e, name, lambda a, lift=lift: cmd_extend_family(a, lift), text, out=True)
        sp.add_argument("q", type=int)
        sp.add_argument("m", type=int)
        sp.add_argument("--quandle-out", help="also write the base quandle table")
    sp = command(e, "doubling", cmd_extend_doubling, "cocycle on R_2n with extension R_4n", out=True)
    sp.add_argument("n", type=int)
    sp.add_argument("--quandle-out", help="also write the base quandle table")
    sp = command(e, "crt", cmd_extend_crt, "prime-power splitting of R_n")
    sp.add_argument("n", type=int)

    k = groups.add_parser("color", help="diagram colorings").add_subparsers(dest="cmd", required=True)
    for name, fn in (("count", cmd_color_count), ("list", cmd_color_list)):
        sp = command(k, name, fn, f"{name} colorings")
        sp.add_argument("diagram")
        sp.add_argument("quandle")
    sp = command(k, "lift", cmd_color_lift, "lift colorings along E(X, A, phi)", verify=True)
    sp.add_argument("diagram")
    sp.add_argument("quandle")
    sp.add_argument("cochain")
    sp.add_argument("--colors", help="one coloring as comma-separated arc colors (default: all)")

    v = groups.add_parser("invariant", help="state-sum invariants").add_subparsers(dest="cmd", required=True)
    for name, fn in (
        ("state-sum", cmd_invariant_state_sum),
        ("components", cmd_invariant_components),
        ("obstruction", cmd_invariant_obstruction),
    ):
        sp = command(v, name, fn, f"{name} invariant")
        sp.add_argument("diagram")
        sp.add_argument("quandle")
        sp.add_argument("cochain")
        sp.add_argument("--raw", action="store_true", help="machine-readable lines")

    sp = groups.add_parser("paper-suite", help="check every published reference value")
    sp.set_defaults(fn=cmd_paper_suite)
    return p


@dataclass(frozen=True)
class RunManifest:
    """What one invocation was asked to do; equal manifests give byte-identical output."""

    subcommand: str
    inputs: tuple[str, ...] = ()
    options: dict = field(default_factory=dict)
    output: str | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunManifest":
        values = {k: v for k, v in vars(args).items() if k not in ("fn", "group", "cmd", "output")}
        inputs = []
        for key in ("file", "first", "second", "quandle", "cochain", "diagram", "total", "base"):
            if isinstance(values.get(key), str):
                inputs.append(values.pop(key))
        name = " ".join(x for x in (args.group, getattr(args, "cmd", None)) if x)
        return cls(name, tuple(inputs), values, getattr(args, "output", None))


MALFORMED = (MalformedInputError, MalformedTableError, FileNotFoundError, IsADirectoryError, FinitenessError)
INVALID = (ValidationFailure, QuandleAxiomError, NotACocycleError)


def parse_manifest(argv) -> tuple[argparse.Namespace, RunManifest]:
    args = build_parser().parse_args(argv)
    return args, RunManifest.from_args(args)


def run(argv) -> tuple[int, str, str]:
    """Run one command in-process and return (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def main(argv=None) -> int:
    try:
        args, _ = parse_manifest(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args) or 0
    except MALFORMED as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except INVALID as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
