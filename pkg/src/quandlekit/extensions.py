"""Abelian extensions E(X, A, phi) and the explicit cocycle families.

The total quandle of an extension lives on A x X with pair codec
``index = a * |X| + x`` and operation ``(a1, x1) * (a2, x2) = (a1 + phi(x1, x2), x1 * x2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .homology import Chain2, Cochain2, FiniteAbelianGroup, is_coboundary, cocycle_violation
from .quandle import (
    FiniteQuandle,
    QuandleMap,
    find_surjection,
    make_alexander,
    make_dihedral,
    make_product,
)


class NotACocycleError(ValueError):
    pass


class ExtensionHypothesisError(ValueError):
    """The pairing E -> A x X does not have the shift form needed to read off a cocycle."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class AbelianExtension:
    base: FiniteQuandle
    fiber: FiniteAbelianGroup
    cocycle: Cochain2
    total: FiniteQuandle
    projection: QuandleMap

    def pair(self, a: int, x: int) -> int:
        return a * self.base.size + x

    def split(self, e: int) -> tuple[int, int]:
        return divmod(e, self.base.size)


@dataclass(frozen=True, eq=False)
class Section:
    """Set-theoretic right inverse of a projection."""

    projection: QuandleMap
    images: np.ndarray

    def __post_init__(self):
        img = np.asarray(self.images, dtype=np.int64)
        if not np.array_equal(self.projection.images[img], np.arange(self.projection.target.size)):
            raise ValueError("section is not a right inverse of the projection")
        object.__setattr__(self, "images", img)


def zero_section(ext: AbelianExtension) -> Section:
    return Section(ext.projection, np.arange(ext.base.size))


def build_extension(X: FiniteQuandle, A: FiniteAbelianGroup, phi: Cochain2, *, check: bool = True) -> AbelianExtension:
    if phi.quandle != X or phi.group != A:
        raise ValueError("cocycle does not live on (X, A)")
    if check:
        bad = cocycle_violation(phi)
        if bad is not None:
            raise NotACocycleError(f"2-cocycle condition fails at {bad}")
    n, k = X.size, A.order
    e = np.arange(n * k)
    a, x = e // n, e % n
    fib = A.add(a[:, None], phi.values[x[:, None], x[None, :]])
    table = fib * n + X.table[x[:, None], x[None, :]]
    label = f"E({X.label},{A},phi)"
    total = FiniteQuandle(table, label) if check else FiniteQuandle.trusted(table, label)
    return AbelianExtension(X, A, phi, total, QuandleMap(total, X, x))


def extract_cocycle(
    E: FiniteQuandle,
    X: FiniteQuandle,
    A: FiniteAbelianGroup,
    pairing=None,
    projection: QuandleMap | None = None,
) -> Cochain2:
    """Read off phi from a bijection f: E -> A x X of shift form.

    ``pairing[e]`` is the pair index ``a * |X| + x`` of f(e).  When no pairing
    is given one is searched for over the fibres of ``projection`` (itself
    searched for when absent).
    """
    n, k = X.size, A.order
    if E.size != n * k:
        raise ExtensionHypothesisError(f"|E| = {E.size} is not |A| * |X| = {n * k}")
    if pairing is None:
        pairing = find_pairing(E, X, A, projection)
        if pairing is None:
            raise ExtensionHypothesisError("no fibre-respecting pairing E -> A x X exists")
    f = np.asarray(pairing, dtype=np.int64)
    if sorted(f.tolist()) != list(range(n * k)):
        raise ExtensionHypothesisError("pairing is not a bijection onto A x X")
    fa, fx = f // n, f % n
    prod_f = f[E.table]
    pa, px = prod_f // n, prod_f % n
    base_ok = px == X.table[fx[:, None], fx[None, :]]
    if not base_ok.all():
        e1, e2 = np.argwhere(~base_ok)[0]
        raise ExtensionHypothesisError(f"base part of f(e1*e2) is wrong at ({e1}, {e2})", (int(e1), int(e2)))
    shift = A.sub(pa, fa[:, None])
    phi = np.full((n, n), -1, dtype=np.int64)
    for e1 in range(E.size):
        for e2 in range(E.size):
            x1, x2 = fx[e1], fx[e2]
            s = shift[e1, e2]
            if phi[x1, x2] == -1:
                phi[x1, x2] = s
            elif phi[x1, x2] != s:
                raise ExtensionHypothesisError(
                    f"fibre offset at ({e1}, {e2}) depends on more than the base pair ({x1}, {x2})",
                    (e1, e2),
                )
    return Cochain2(X, A, phi)


def find_pairing(E: FiniteQuandle, X: FiniteQuandle, A: FiniteAbelianGroup, projection: QuandleMap | None = None):
    """Search for a bijection E -> A x X of shift form over the fibres of a projection."""
    n, k = X.size, A.order
    if projection is None:
        projection = find_surjection(E, X, fiber_size=k)
        if projection is None:
            return None
    p = projection.images
    fibres = [np.nonzero(p == x)[0].tolist() for x in range(n)]
    if any(len(F) != k for F in fibres):
        return None
    te = E.table
    orbits = X.orbits()
    labelings = list(permutations(range(k)))

    def propagate(label, x0):
        # label: dict e -> a ; fibres reachable from x0 by right multiplication get translated labels
        todo = [x0]
        done = {x0}
        while todo:
            x = todo.pop()
            for e2 in range(E.size):
                y = int(X.table[x, p[e2]])
                imgs = {int(te[e1, e2]): label[e1] for e1 in fibres[x]}
                ref = fibres[y][0] if y not in done else None
                if y in done:
                    diffs = {A.sub(label[img], a) for img, a in imgs.items()}
                    if len(diffs) != 1:
                        return False
                else:
                    shift = A.sub(0, imgs[ref]) if ref in imgs else 0
                    for img, a in imgs.items():
                        label[img] = A.add(a, shift)
                    done.add(y)
                    todo.append(y)
        return True

    def rec(i, label):
        if i == len(orbits):
            return label
        x0 = orbits[i][0]
        for perm in labelings:
            trial = dict(label)
            for e, a in zip(fibres[x0], perm):
                trial[e] = a
            if propagate(trial, x0) and all(e in trial for x in orbits[i] for e in fibres[x]):
                out = rec(i + 1, trial)
                if out is not None:
                    return out
        return None

    label = rec(0, {})
    if label is None:
        return None
    pairing = np.array([label[e] * n + int(p[e]) for e in range(E.size)])
    try:
        extract_cocycle(E, X, A, pairing)
    except ExtensionHypothesisError:
        return None
    return pairing


def pullback_cocycle(p: QuandleMap, phi: Cochain2) -> Cochain2:
    """(p# phi)(u, v) = phi(p(u), p(v)) on the source of p."""
    if p.target != phi.quandle:
        raise ValueError("map target is not the cocycle's quandle")
    img = p.images
    return Cochain2(p.source, phi.group, phi.values[img[:, None], img[None, :]])


def is_trivial_extension(ext: AbelianExtension) -> bool:
    """True iff the defining cocycle is a coboundary (the extension splits as a product)."""
    return is_coboundary(ext.cocycle) is not None


# ------------------------------------------------------- explicit families


def qadic_alexander(q: int, m: int) -> FiniteQuandle:
    """Z_{q^m}[T, T^-1]/(T - 1 + q): a * b = (1 - q) a + q b on residues 0..q^m - 1."""
    if q < 2 or m < 0:
        raise ValueError("need q >= 2 and m >= 0")
    if m == 0:
        return make_alexander(1, [0, 1])
    return make_alexander(q**m, [q - 1, 1])


def unipotent_alexander(q: int, m: int) -> FiniteQuandle:
    """Z_q[T, T^-1]/(1 - T)^m, indexed by (1 - T)-adic digits, lowest first."""
    if q < 2 or m < 1:
        raise ValueError("need q >= 2 and m >= 1")
    h = [1]
    for _ in range(m):
        h = [a - b for a, b in zip(h + [0], [0] + h)]
    return make_alexander(q, h, basis="1-T")


def modulus_lift_cocycle(q: int, m: int) -> tuple[FiniteQuandle, Cochain2]:
    """Cocycle on Z_{q^m}[T]/(T - 1 + q) whose extension is Z_{q^(m+1)}[T]/(T - 1 + q).

    Uses the section s(x) = x (top digit zero) and
    phi(x, y) = (s(x) * s(y) - s(x * y)) / q^m reduced mod q.
    """
    if q < 2 or m < 1:
        raise ValueError("need q >= 2 and m >= 1")
    X = qadic_alexander(q, m)
    low, high = q**m, q ** (m + 1)
    s = np.arange(low)
    lifted = ((1 - q) * s[:, None] + q * s[None, :]) % high
    diff = lifted - s[X.table]
    if (diff % low).any():
        raise ArithmeticError("section difference not divisible by q^m")
    phi = (diff // low) % q
    return X, Cochain2(X, FiniteAbelianGroup.cyclic(q), phi)


def _digit_op(a, b, q):
    """(1 - T)-adic digits of a * b = a + (1 - T)(b - a), truncated to len(a)."""
    out = list(a)
    for j in range(1, len(a)):
        out[j] = (a[j] + b[j - 1] - a[j - 1]) % q
    return out


def unipotent_lift_cocycle(q: int, m: int) -> tuple[FiniteQuandle, Cochain2]:
    """Cocycle on Z_q[T]/(1 - T)^m whose extension is Z_q[T]/(1 - T)^(m+1).

    phi(A, B) = B_{m-1} - A_{m-1} on top (1 - T)-adic digits; cross-checked
    against the section formula in the next larger quotient.
    """
    X = unipotent_alexander(q, m)
    pres = X.codec
    n = X.size
    digits = [list(pres.decode(i)) for i in range(n)]
    phi = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(digits):
        for j, b in enumerate(digits):
            direct = (b[m - 1] - a[m - 1]) % q
            # section: pad a zero top digit, multiply in the larger quotient, subtract s(a*b)
            lifted = _digit_op(a + [0], b + [0], q)
            low = pres.decode(int(X.table[i, j]))
            if any((lifted[t] - low[t]) % q for t in range(m)):
                raise ArithmeticError("section difference not divisible by (1 - T)^m")
            if lifted[m] % q != direct:
                raise ArithmeticError("digit formula and section formula disagree")
            phi[i, j] = direct
    return X, Cochain2(X, FiniteAbelianGroup.cyclic(q), phi)


def qadic_witness_cycle(q: int, m: int) -> Chain2:
    """(0, 1) + (q, q^(m-1) + q - 1) on Z_{q^m}[T]/(T - 1 + q)."""
    n = q**m
    return Chain2.of((0, 1)) + Chain2.of((q % n, (q ** (m - 1) + q - 1) % n))


def unipotent_witness_cycle(q: int, m: int) -> Chain2:
    """(0, 1) + (u, u^(m-1) + u - 1) with u = 1 - T, on Z_q[T]/(1 - T)^m."""
    X = unipotent_alexander(q, m)
    pres = X.codec

    def elem(coeffs):
        d = [0] * m
        for j, c in enumerate(coeffs):
            if j < m:
                d[j] = (d[j] + c) % q
        return pres.encode(d)

    u = [0, 1]
    second = [0] * max(m, 2)
    second[m - 1] += 1
    second[1] += 1
    second[0] -= 1
    return Chain2.of((0, 1)) + Chain2.of((elem(u), elem(second)))


# ------------------------------------------------------- dihedral quandles


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def crt_decompose_dihedral(n: int) -> tuple[QuandleMap, list[int]]:
    """Isomorphism R_n -> R_{p1^e1} x ... x R_{pk^ek} (nested products, first factor most significant)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    moduli = [p**e for p, e in _factorize(n)]
    P = make_dihedral(moduli[0])
    for m in moduli[1:]:
        P = make_product(P, make_dihedral(m))
    x = np.arange(n)
    idx = np.zeros(n, dtype=np.int64)
    for m in moduli:
        idx = idx * m + x % m
    return QuandleMap(make_dihedral(n), P, idx), moduli


def dihedral_doubling_cocycle(n: int) -> Cochain2:
    """A cocycle phi on R_{2n} over Z_2 with E(R_{2n}, Z_2, phi) isomorphic to R_{4n}.

    Split 2n = 2^m k with k odd, take the modulus-lift cocycle on R_{2^m},
    pull it back along the first-factor projection of R_{2^m} x R_k and
    transport it to R_{2n} along the CRT isomorphism.
    """
    if n < 1:
        raise ValueError("n must be positive")
    two_n = 2 * n
    m, k = 0, two_n
    while k % 2 == 0:
        k //= 2
        m += 1
    X2, phi2 = modulus_lift_cocycle(2, m)
    R2m = make_dihedral(2**m)
    phi2 = Cochain2(R2m, phi2.group, phi2.values)  # Z_{2^m}/(T+1) is R_{2^m} index for index
    if k == 1:
        return Cochain2(make_dihedral(two_n), phi2.group, phi2.values)
    crt, moduli = crt_decompose_dihedral(two_n)
    P = crt.target
    # first factor of P is R_{2^m}; the rest is R_k split further
    first = QuandleMap(P, R2m, np.arange(P.size) // (P.size // 2**m))
    phi_P = pullback_cocycle(first, phi2)
    return pullback_cocycle(crt, phi_P)


def dihedral_reduction_cocycles(n: int) -> dict[str, Cochain2]:
    """Cocycles on R_{4n} pulled back from R_4 along x -> x mod 4.

    ``"0,1"`` comes from chi_{0,1} + chi_{0,3} and ``"1,0"`` from chi_{1,0} + chi_{1,2}.
    """
    R4 = make_dihedral(4)
    big = make_dihedral(4 * n)
    Z2 = FiniteAbelianGroup.cyclic(2)
    p = QuandleMap(big, R4, np.arange(4 * n) % 4)
    return {
        "0,1": pullback_cocycle(p, Cochain2.from_terms(R4, Z2, [(0, 1), (0, 3)])),
        "1,0": pullback_cocycle(p, Cochain2.from_terms(R4, Z2, [(1, 0), (1, 2)])),
    }


def dihedral_test_cycles(n: int) -> dict[str, Chain2]:
    """Cycles c_{0,1}, c_{1,0}, c'_{0,1} in the quandle chains of R_{4n}."""
    return {
        "c01": Chain2.of((0, 1), (2, 1)),
        "c10": Chain2.of((1, 0), (4 * n - 1, 0)),
        "c01'": Chain2.of((0, 1), (2, 2 * n + 1)),
    }


__all__ = [
    "AbelianExtension",
    "ExtensionHypothesisError",
    "NotACocycleError",
    "Section",
    "build_extension",
    "crt_decompose_dihedral",
    "dihedral_doubling_cocycle",
    "dihedral_reduction_cocycles",
    "dihedral_test_cycles",
    "extract_cocycle",
    "find_pairing",
    "is_trivial_extension",
    "modulus_lift_cocycle",
    "pullback_cocycle",
    "qadic_alexander",
    "qadic_witness_cycle",
    "unipotent_alexander",
    "unipotent_lift_cocycle",
    "unipotent_witness_cycle",
    "zero_section",
]
