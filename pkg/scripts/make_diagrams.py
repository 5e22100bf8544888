"""Regenerate the bundled .lnk diagrams from braid closures.

Braid conventions: strands run upward, generators act left to right from
the bottom.  ``i`` (1-based) means the strand at position i passes over the
strand at i+1 moving right, a positive crossing; ``-i`` is its inverse, where
the strand at i+1 passes over moving left.  Closing the braid joins each top
position to the bottom of the same position.

Usage:  python3 scripts/make_diagrams.py [--out DIR] [--check]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from quandlekit.diagrams import Component, Crossing, LinkDiagram, parse_diagram, serialize_diagram

DATA = Path(__file__).resolve().parents[1] / "src" / "quandlekit" / "data"


def braid_closure(name: str, word: list[int], strands: int, bases: dict[int, int] | None = None) -> LinkDiagram:
    """Diagram of the closure of ``word``; ``bases`` maps component -> trace position of its base arc."""
    parent = list(range(strands))
    pos = list(range(strands))
    raw = []

    def new_arc():
        parent.append(len(parent))
        return len(parent) - 1

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in word:
        i = abs(g) - 1
        left, right = pos[i], pos[i + 1]
        out = new_arc()
        if g > 0:
            raw.append((1, left, right, out))
            pos[i], pos[i + 1] = out, left
        else:
            raw.append((-1, right, left, out))
            pos[i], pos[i + 1] = right, out
    for p in range(strands):
        ra, rb = find(pos[p]), find(p)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    raw = [(s, find(o), find(a), find(b)) for s, o, a, b in raw]
    roots = sorted({find(a) for a in range(len(parent))})

    succ = {a: b for _, _, a, b in raw}
    label: dict[int, int] = {}
    traces = []
    for r in roots:
        if r in label:
            continue
        trace = [r]
        while succ.get(trace[-1], r) != r:
            trace.append(succ[trace[-1]])
        for a in trace:
            label[a] = len(label)
        traces.append(tuple(label[a] for a in trace))
    crossings = tuple(Crossing(s, label[o], label[a], label[b]) for s, o, a, b in raw)
    bases = bases or {}
    comps = tuple(Component(tr[bases.get(i, 0)], tr) for i, tr in enumerate(traces))
    return LinkDiagram(name, len(label), crossings, comps)


# name -> (braid word, strand count, base positions, comment)
CORPUS = {
    "trefoil": ([1, 1, 1], 2, None, "trefoil 3_1 as the closure of s1^3"),
    "trefoil_r1pos": ([1, 1, 1, 2], 3, None, "trefoil with a positive Reidemeister-I kink (s1^3 s2)"),
    "trefoil_r1neg": ([1, 1, 1, -2], 3, None, "trefoil with a negative Reidemeister-I kink (s1^3 s2^-1)"),
    "trefoil_r2": ([1, 1, 1, 1, -1], 2, None, "trefoil with a cancelling Reidemeister-II pair (s1^4 s1^-1)"),
    "trefoil_r3a": ([1, 2, 1, 1], 3, None, "trefoil as s1 s2 s1 s1"),
    "trefoil_r3b": ([2, 1, 2, 1], 3, None, "the previous diagram after one Reidemeister-III move (s2 s1 s2 s1)"),
    "figure8": ([1, -2, 1, -2], 3, None, "figure-eight 4_1 as (s1 s2^-1)^2"),
    "knot8_18": ([1, -2] * 4, 3, None, "8_18 as (s1 s2^-1)^4"),
    "whitehead": ([1, 1, -2, 1, -2], 3, None, "Whitehead link L5a1"),
    "unknot_kink": ([1], 2, None, "unknot with a single positive kink"),
    "unlink2": ([], 2, None, "two-component unlink, no crossings"),
}


def build_corpus() -> dict[str, tuple[str, LinkDiagram]]:
    return {
        name: (comment, braid_closure(name, word, strands, bases))
        for name, (word, strands, bases, comment) in CORPUS.items()
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA)
    ap.add_argument("--check", action="store_true", help="compare with existing files instead of writing")
    args = ap.parse_args(argv)
    stale = 0
    for name, (comment, D) in build_corpus().items():
        path = args.out / f"{name}.lnk"
        text = serialize_diagram(D)
        assert serialize_diagram(parse_diagram(text)) == text
        if args.check:
            if not path.exists() or path.read_text() != text:
                print(f"stale: {path}")
                stale += 1
        else:
            path.write_text(text)
            print(f"wrote {path} ({comment}): arcs={D.arc_count} crossings={D.crossing_count} components={len(D.components)}")
    return 1 if stale else 0


if __name__ == "__main__":
    raise SystemExit(main())
