"""Independent oracle for H^2_Q(R_4; Z_2), used to pin the golden rank.

Two routes, neither of which touches quandlekit's Smith normal form code:

1. brute force: enumerate all 2^12 cochains on the off-diagonal pairs of R_4,
   count those satisfying the cocycle condition, and count the distinct
   coboundaries of all 2^4 one-cochains;
2. sympy's Smith normal form of the integral boundary maps, followed by the
   universal coefficient theorem (the first quandle homology is free, so
   no Ext term appears).

Usage:  python3 scripts/h2_oracle.py [n] [q]     (defaults: 4 2)
"""

from __future__ import annotations

import itertools
import math
import sys

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def dihedral(n):
    return [[(2 * j - i) % n for j in range(n)] for i in range(n)]


def brute_force(n, q):
    t = dihedral(n)
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    pos = {p: i for i, p in enumerate(pairs)}

    def val(phi, x, y):
        return 0 if x == y else phi[pos[x, y]]

    cocycles = 0
    for phi in itertools.product(range(q), repeat=len(pairs)):
        if all(
            (val(phi, x, y) + val(phi, t[x][y], z) - val(phi, x, z) - val(phi, t[x][z], t[y][z])) % q == 0
            for x in range(n)
            for y in range(n)
            for z in range(n)
        ):
            cocycles += 1
    coboundaries = {
        tuple((f[x] - f[t[x][y]]) % q for x, y in pairs) for f in itertools.product(range(q), repeat=n)
    }
    return cocycles, len(coboundaries)


def integral_route(n, q):
    t = dihedral(n)
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    pos = {p: i for i, p in enumerate(pairs)}
    # d2: C_2 -> C_1, (x, y) -> (x) - (x*y)
    d2 = [[0] * len(pairs) for _ in range(n)]
    for j, (x, y) in enumerate(pairs):
        d2[x][j] += 1
        d2[t[x][y]][j] -= 1
    # d3: C_3 -> C_2, (x,y,z) -> (x,z) - (x*y,z) - (x,y) + (x*z,y*z), degenerate pairs dropped
    cols = []
    for x, y, z in itertools.product(range(n), repeat=3):
        if x == y or y == z:
            continue
        col = [0] * len(pairs)
        for sign, (a, b) in ((1, (x, z)), (-1, (t[x][y], z)), (-1, (x, y)), (1, (t[x][z], t[y][z]))):
            if a != b:
                col[pos[a, b]] += sign
        cols.append(col)
    D2, D3 = Matrix(d2), Matrix(cols).T
    r2 = D2.rank()
    s3 = smith_normal_form(D3, domain=ZZ)
    diag = [abs(s3[i, i]) for i in range(min(s3.shape)) if s3[i, i] != 0]
    free = len(pairs) - r2 - len(diag)
    torsion = [d for d in diag if d > 1]
    factors = [q] * free + [math.gcd(d, q) for d in torsion]
    return free, torsion, [f for f in factors if f > 1]


def main(argv):
    n = int(argv[1]) if len(argv) > 1 else 4
    q = int(argv[2]) if len(argv) > 2 else 2
    z, b = brute_force(n, q)
    order = z // b
    print(f"R{n}, Z{q}: |Z^2| = {z}, |B^2| = {b}, |H^2| = {order}")
    free, torsion, factors = integral_route(n, q)
    print(f"integral H_2^Q(R{n}) = Z^{free} + {' + '.join(f'Z{d}' for d in torsion) or '0'}")
    print(f"universal coefficients: H^2 = {' + '.join(f'Z{d}' for d in factors)}; rank {len(factors)}")
    agree = math.prod(factors) == order
    print(f"routes agree: {agree}")
    return 0 if agree else 1


if __name__ == "__main__":
    raise SystemExit(main(sys.argv))
