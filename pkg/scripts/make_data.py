"""Regenerate the bundled quandle (.qnd) and cochain (.coc) files.

Every cochain written here is checked to be a 2-cocycle first.

Usage:  python3 scripts/make_data.py [--out DIR] [--check]
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from quandlekit.extensions import dihedral_doubling_cocycle, modulus_lift_cocycle, unipotent_lift_cocycle
from quandlekit.formats import serialize_cochain, serialize_quandle
from quandlekit.homology import Cochain2, FiniteAbelianGroup, is_cocycle2
from quandlekit.quandle import make_alexander, make_dihedral, make_trivial

DATA = Path(__file__).resolve().parents[1] / "src" / "quandlekit" / "data"
Z2 = FiniteAbelianGroup.cyclic(2)


def s4_cocycle(S4) -> Cochain2:
    """Sum of chi_(a,b) over a != b with a, b ranging over the elements other than T (index 2)."""
    keep = [i for i in range(4) if S4.codec.decode(i) != (0, 1)]
    return Cochain2.from_terms(S4, Z2, [(a, b) for a in keep for b in keep if a != b])


def files() -> dict[str, str]:
    R4, R8 = make_dihedral(4), make_dihedral(8)
    S4 = make_alexander(2, [1, 1, 1])
    out = {
        "r3.qnd": serialize_quandle(make_dihedral(3)),
        "r4.qnd": serialize_quandle(R4),
        "r8.qnd": serialize_quandle(R8),
        "r16.qnd": serialize_quandle(make_dihedral(16)),
        "s4.qnd": serialize_quandle(S4, "S4"),
        "t3.qnd": serialize_quandle(make_trivial(3)),
    }
    # well formed, but 0*0 = 1 breaks idempotence
    bad = np.array(make_dihedral(3).table)
    bad[0, 0], bad[0, 1] = 1, 0
    out["bad.qnd"] = "quandle bad 3\n" + "\n".join(" ".join(map(str, r)) for r in bad.tolist()) + "\n"

    _, phi = modulus_lift_cocycle(2, 2)
    _, phi_u = unipotent_lift_cocycle(2, 2)
    cochains = {
        "r4_modlift.coc": (Cochain2(R4, Z2, phi.values), "R4"),
        "r4_unipotent.coc": (Cochain2(R4, Z2, phi_u.values), "R4"),
        "r4_phi01.coc": (Cochain2.from_terms(R4, Z2, [(0, 1), (0, 3)]), "R4"),
        "r4_phi10.coc": (Cochain2.from_terms(R4, Z2, [(1, 0), (1, 2)]), "R4"),
        "doubling8.coc": (dihedral_doubling_cocycle(4), "R8"),
        "s4_z2.coc": (s4_cocycle(S4), "S4"),
    }
    for name, (c, qname) in cochains.items():
        if not is_cocycle2(c):
            raise AssertionError(f"{name} is not a cocycle")
        out[name] = serialize_cochain(c, qname)
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA)
    ap.add_argument("--check", action="store_true", help="compare with existing files instead of writing")
    args = ap.parse_args(argv)
    stale = 0
    for name, text in files().items():
        path = args.out / name
        if args.check:
            if not path.exists() or path.read_text() != text:
                print(f"stale: {path}")
                stale += 1
        else:
            path.write_text(text)
            print(f"wrote {path}")
    return 1 if stale else 0


if __name__ == "__main__":
    raise SystemExit(main())
