"""Finite quandles as operation tables.

Elements are always the dense indices ``0..n-1``; ``table[a, b] == a * b``.
Algebraic presentations (Alexander modules, products) carry a codec that maps
their natural element description to these indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np


class MalformedTableError(ValueError):
    """Operation table is not an n x n array of indices in range."""


class QuandleAxiomError(ValueError):
    """Operation table is well formed but violates a quandle axiom."""


class NotAGroupError(ValueError):
    """Input table is not a group multiplication table."""


class FinitenessError(ValueError):
    """Alexander presentation does not define a finite quandle."""


@dataclass(frozen=True)
class Violation:
    axiom: str  # "idempotence" | "right-invertibility" | "self-distributivity"
    witness: tuple[int, ...]

    def __str__(self):
        return f"axiom {self.axiom} fails at {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations


def _as_table(table) -> np.ndarray:
    try:
        arr = np.asarray(table)
    except ValueError as exc:  # ragged rows
        raise MalformedTableError(f"table is not rectangular: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTableError(f"table must be a non-empty square array, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise MalformedTableError("table entries must be integers")
    n = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        a, b = bad[0]
        raise MalformedTableError(f"entry table[{a}][{b}] = {arr[a, b]} is outside 0..{n - 1}")
    return arr.astype(np.int64)


def verify_quandle(table) -> ValidationReport:
    """Check the three quandle axioms, reporting the first witness of each failure.

    Raises MalformedTableError for tables that are not n x n arrays over
    ``0..n-1``; axiom failures are returned, not raised.
    """
    t = _as_table(table)
    n = t.shape[0]
    out = []
    bad = np.nonzero(t[np.arange(n), np.arange(n)] != np.arange(n))[0]
    if len(bad):
        out.append(Violation("idempotence", (int(bad[0]),)))
    for b in range(n):
        col = t[:, b]
        if len(np.unique(col)) != n:
            seen = {}
            for a, v in enumerate(col):
                if v in seen:
                    out.append(Violation("right-invertibility", (seen[v], a, b)))
                    break
                seen[v] = a
            break
    # (a*b)*c == (a*c)*(b*c), chunked over a to bound memory
    step = max(1, 2_000_000 // (n * n))
    for lo in range(0, n, step):
        a = np.arange(lo, min(n, lo + step))[:, None, None]
        b = np.arange(n)[None, :, None]
        c = np.arange(n)[None, None, :]
        lhs = t[t[a, b], c]
        rhs = t[t[a, c], t[b, c]]
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            i, j, k = diff[0]
            out.append(Violation("self-distributivity", (int(lo + i), int(j), int(k))))
            break
    return ValidationReport(tuple(out))


@dataclass(frozen=True, eq=False)
class FiniteQuandle:
    """An n-element quandle given by its operation table.

    ``codec`` optionally records how indices relate to an algebraic
    presentation (see AlexanderPresentation).
    """

    table: np.ndarray
    label: str = ""
    codec: object = None
    _rdiv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        t = _as_table(self.table)
        report = verify_quandle(t)
        if not report.valid:
            raise QuandleAxiomError("; ".join(map(str, report.violations)))
        t.flags.writeable = False
        n = t.shape[0]
        rdiv = np.empty_like(t)
        cols = np.broadcast_to(np.arange(n), (n, n))
        rdiv[t, cols] = np.arange(n)[:, None]
        rdiv.flags.writeable = False
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "_rdiv", rdiv)

    @classmethod
    def trusted(cls, table, label="", codec=None) -> "FiniteQuandle":
        """Build without re-running the O(n^3) axiom check (caller guarantees validity)."""
        obj = object.__new__(cls)
        t = np.ascontiguousarray(table, dtype=np.int64)
        t.flags.writeable = False
        n = t.shape[0]
        rdiv = np.empty_like(t)
        rdiv[t, np.broadcast_to(np.arange(n), (n, n))] = np.arange(n)[:, None]
        rdiv.flags.writeable = False
        object.__setattr__(obj, "table", t)
        object.__setattr__(obj, "label", label)
        object.__setattr__(obj, "codec", codec)
        object.__setattr__(obj, "_rdiv", rdiv)
        return obj

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.size

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def solve_right(self, a: int, b: int) -> int:
        """The unique c with c * b == a."""
        return int(self._rdiv[a, b])

    @property
    def right_division(self) -> np.ndarray:
        return self._rdiv

    def __eq__(self, other):
        return isinstance(other, FiniteQuandle) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def orbits(self) -> list[list[int]]:
        """Orbits under the inner automorphism group (connected components)."""
        n = self.size
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in range(n):
            for b in range(n):
                ra, rb = find(a), find(int(self.table[a, b]))
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for x in range(n):
            groups.setdefault(find(x), []).append(x)
        return list(groups.values())


def solve_right(X: FiniteQuandle, a: int, b: int) -> int:
    return X.solve_right(a, b)


@dataclass(frozen=True, eq=False)
class QuandleMap:
    """A quandle homomorphism given by its image array; validated on construction."""

    source: FiniteQuandle
    target: FiniteQuandle
    images: np.ndarray

    def __post_init__(self):
        img = np.asarray(self.images, dtype=np.int64)
        if img.shape != (self.source.size,):
            raise ValueError("images must have one entry per source element")
        if ((img < 0) | (img >= self.target.size)).any():
            raise ValueError("image index out of range")
        lhs = img[self.source.table]
        rhs = self.target.table[img[:, None], img[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b = bad[0]
            raise ValueError(f"not a homomorphism: f({a}*{b}) != f({a})*f({b})")
        img.flags.writeable = False
        object.__setattr__(self, "images", img)

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    @property
    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(np.unique(self.images)) == self.source.size

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.images)) == self.target.size

    def inverse(self) -> "QuandleMap":
        if not self.is_bijective:
            raise ValueError("map is not invertible")
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.source.size)
        return QuandleMap(self.target, self.source, inv)

    def compose(self, other: "QuandleMap") -> "QuandleMap":
        """self after other."""
        return QuandleMap(other.source, self.target, self.images[other.images])


# ---------------------------------------------------------------- constructors


def make_trivial(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("n must be positive")
    return FiniteQuandle.trusted(np.repeat(np.arange(n)[:, None], n, axis=1), f"T{n}")


def make_dihedral(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("n must be positive")
    i = np.arange(n)
    return FiniteQuandle.trusted((2 * i[None, :] - i[:, None]) % n, f"R{n}")


def _strip(coeffs: Sequence[int], n: int) -> list[int]:
    c = [int(x) % n for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_pow(a: Sequence[int], e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = poly_mul(out, a)
    return out


@dataclass(frozen=True)
class AlexanderPresentation:
    """Codec for Z_n[T, T^-1]/(h): element index <-> coefficient vector.

    ``h`` is listed lowest degree first.  Vectors have length ``deg h`` and are
    taken with respect to powers of ``T`` (basis="T") or of ``1 - T``
    (basis="1-T"); indices are the base-n positional value, lowest degree first.
    """

    modulus: int
    h: tuple[int, ...]
    basis: str = "T"

    @property
    def degree(self) -> int:
        return len(self.h) - 1

    def encode(self, vec: Sequence[int]) -> int:
        idx = 0
        for c in reversed(list(vec)):
            idx = idx * self.modulus + int(c) % self.modulus
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            idx, r = divmod(idx, self.modulus)
            out.append(r)
        return tuple(out)


def _companion(n: int, h: list[int]) -> np.ndarray:
    """Matrix of multiplication by T on Z_n[T]/(h) in the basis 1, T, ..., T^(d-1)."""
    d = len(h) - 1
    lead_inv = pow(h[-1], -1, n)
    M = np.zeros((d, d), dtype=np.int64)
    for j in range(d - 1):
        M[j + 1, j] = 1
    # T^d = -lead^-1 * (h_0 + ... + h_{d-1} T^{d-1})
    for i in range(d):
        M[i, d - 1] = (-lead_inv * h[i]) % n
    return M


def make_alexander(n: int, h: Sequence[int], basis: str = "T") -> FiniteQuandle:
    """Alexander quandle Z_n[T, T^-1]/(h) with a * b = T a + (1 - T) b.

    ``h`` lists coefficients lowest degree first, e.g. ``[1, 1]`` for T + 1.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    hs = _strip(h, n)
    if n == 1:
        return make_trivial(1)
    if len(hs) < 2:
        raise FinitenessError(f"h = {list(h)} is constant mod {n}")
    if gcd(hs[0], n) != 1 or gcd(hs[-1], n) != 1:
        raise FinitenessError(f"lowest and highest coefficients of h must be units mod {n}")
    if basis not in ("T", "1-T"):
        raise ValueError("basis must be 'T' or '1-T'")
    pres = AlexanderPresentation(n, tuple(hs), basis)
    d = pres.degree
    N = n**d
    idx = np.arange(N)
    vecs = np.stack([(idx // n**i) % n for i in range(d)], axis=1)  # (N, d)
    MT = _companion(n, hs)
    Ta = (vecs @ MT.T) % n
    one_minus_T = (vecs - Ta) % n
    prod = (Ta[:, None, :] + one_minus_T[None, :, :]) % n
    weights = n ** np.arange(d)
    table = (prod * weights).sum(axis=2)
    if basis == "1-T":
        # index in (1-T)-digits -> index in T-coefficients
        conv = np.zeros(N, dtype=np.int64)
        powers = [_reduce_mod(poly_pow([1, -1], j), hs, n) for j in range(d)]
        for k in range(N):
            digits = pres.decode(k)
            vec = [0] * d
            for j, a in enumerate(digits):
                for i, c in enumerate(powers[j]):
                    vec[i] += a * c
            conv[k] = sum((v % n) * n**i for i, v in enumerate(vec))
        back = np.empty_like(conv)
        back[conv] = np.arange(N)
        table = back[table[conv[:, None], conv[None, :]]]
    label = f"Z{n}[T]/({_poly_str(hs)})"
    return FiniteQuandle.trusted(table, label, pres)


def _reduce_mod(p: list[int], h: list[int], n: int) -> list[int]:
    p = [x % n for x in p]
    d = len(h) - 1
    lead_inv = pow(h[-1], -1, n)
    while len(p) > d:
        c = p.pop() * lead_inv % n
        k = len(p) - d
        for i in range(d):
            p[k + i] = (p[k + i] - c * h[i]) % n
    return p + [0] * (d - len(p))


def _poly_str(h: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(h):
        if c == 0:
            continue
        mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
        coef = "" if (c == 1 and mono) else str(c)
        terms.append(coef + mono)
    return "+".join(reversed(terms)) or "0"


def _check_group(g: np.ndarray) -> int:
    n = g.shape[0]
    a = np.arange(n)
    lhs = g[g[a[:, None, None], a[None, :, None]], a[None, None, :]]
    rhs = g[a[:, None, None], g[a[None, :, None], a[None, None, :]]]
    if not np.array_equal(lhs, rhs):
        i, j, k = np.argwhere(lhs != rhs)[0]
        raise NotAGroupError(f"not associative at ({i}, {j}, {k})")
    ids = [e for e in range(n) if np.array_equal(g[e], a) and np.array_equal(g[:, e], a)]
    if not ids:
        raise NotAGroupError("no identity element")
    e = ids[0]
    for x in range(n):
        if not (g[x] == e).any():
            raise NotAGroupError(f"element {x} has no inverse")
    return e


def make_conjugation(group_table, n: int = 1) -> FiniteQuandle:
    """n-fold conjugation quandle a * b = b^-n a b^n on a finite group."""
    g = _as_table(group_table)
    e = _check_group(g)
    size = g.shape[0]
    inv = np.array([int(np.nonzero(g[x] == e)[0][0]) for x in range(size)])
    k = abs(n)
    powk = np.full(size, e)
    for _ in range(k):
        powk = g[powk, np.arange(size)]
    bn = powk if n >= 0 else inv[powk]
    bn_inv = inv[bn]
    a = np.arange(size)[:, None]
    b = np.arange(size)[None, :]
    table = g[g[bn_inv[b], a], bn[b]]
    return FiniteQuandle(table, f"Conj{n}")


def make_product(X: FiniteQuandle, Y: FiniteQuandle) -> FiniteQuandle:
    """Component-wise product; element (x, y) has index x * |Y| + y."""
    m = Y.size
    n = X.size * m
    idx = np.arange(n)
    xs, ys = idx // m, idx % m
    table = X.table[xs[:, None], xs[None, :]] * m + Y.table[ys[:, None], ys[None, :]]
    return FiniteQuandle.trusted(table, f"{X.label}x{Y.label}")


def product_projection(P: FiniteQuandle, X: FiniteQuandle, Y: FiniteQuandle, factor: int = 0) -> QuandleMap:
    idx = np.arange(P.size)
    images = idx // Y.size if factor == 0 else idx % Y.size
    return QuandleMap(P, X if factor == 0 else Y, images)


# ------------------------------------------------------------ isomorphisms


def _profiles(X: FiniteQuandle) -> list[tuple]:
    """Per-element data preserved by isomorphisms."""
    t = X.table
    n = X.size
    orbit_size = {}
    for orb in X.orbits():
        for x in orb:
            orbit_size[x] = len(orb)
    out = []
    for y in range(n):
        col = t[:, y]
        seen = np.zeros(n, dtype=bool)
        cycles = []
        for s in range(n):
            if seen[s]:
                continue
            length = 0
            x = s
            while not seen[x]:
                seen[x] = True
                x = col[x]
                length += 1
            cycles.append(length)
        fixed_row = int((t[y] == y).sum())
        out.append((tuple(sorted(cycles)), fixed_row, orbit_size[y]))
    return out


def _generators(X: FiniteQuandle) -> list[int]:
    n = X.size
    t = X.table
    gens: list[int] = []
    inside = np.zeros(n, dtype=bool)
    members: list[int] = []
    while not inside.all():
        g = int(np.nonzero(~inside)[0][0])
        gens.append(g)
        queue = [g]
        inside[g] = True
        members.append(g)
        while queue:
            u = queue.pop()
            for w in list(members):
                for z in (t[u, w], t[w, u]):
                    if not inside[z]:
                        inside[z] = True
                        members.append(int(z))
                        queue.append(int(z))
    return gens


def _search_maps(X: FiniteQuandle, Y: FiniteQuandle, injective: bool, candidates=None):
    """Yield homomorphisms X -> Y in lexicographic order of generator images."""
    tx, ty = X.table.tolist(), Y.table.tolist()
    n = X.size
    gens = _generators(X)
    f = [-1] * n
    finv = [-1] * Y.size
    dom: list[int] = []
    allowed = candidates  # list of sets per source element, or None

    def assign(x, v, trail):
        if allowed is not None and v not in allowed[x]:
            return False
        if injective:
            if finv[v] != -1:
                return False
            finv[v] = x
        f[x] = v
        trail.append(x)
        return True

    def undo(trail, mark):
        while len(trail) > mark:
            x = trail.pop()
            if injective:
                finv[f[x]] = -1
            f[x] = -1
            dom.pop()

    def close(start, trail):
        queue = [start]
        dom.append(start)
        while queue:
            u = queue.pop()
            fu = f[u]
            for w in list(dom):
                fw = f[w]
                for z, fz in ((tx[u][w], ty[fu][fw]), (tx[w][u], ty[fw][fu])):
                    cur = f[z]
                    if cur == -1:
                        if not assign(z, fz, trail):
                            return False
                        dom.append(z)
                        queue.append(z)
                    elif cur != fz:
                        return False
        return True

    trail: list[int] = []

    def rec(i):
        if i == len(gens):
            yield list(f)
            return
        g = gens[i]
        if f[g] != -1:
            yield from rec(i + 1)
            return
        for v in range(Y.size):
            mark = len(trail)
            if assign(g, v, trail) and close(g, trail):
                yield from rec(i + 1)
            # assign may have failed before touching trail
            undo(trail, mark)

    # dom bookkeeping: close() appends start; undo pops one dom entry per trail entry
    yield from rec(0)


def find_isomorphism(X: FiniteQuandle, Y: FiniteQuandle) -> QuandleMap | None:
    """First isomorphism X -> Y in lexicographic order of generator images, or None."""
    if X.size != Y.size:
        return None
    px, py = _profiles(X), _profiles(Y)
    if sorted(px) != sorted(py):
        return None
    by_profile: dict[tuple, set[int]] = {}
    for y, p in enumerate(py):
        by_profile.setdefault(p, set()).add(y)
    allowed = [by_profile[p] for p in px]
    for images in _search_maps(X, Y, injective=True, candidates=allowed):
        return QuandleMap(X, Y, np.array(images))
    return None


def find_surjection(X: FiniteQuandle, Y: FiniteQuandle, fiber_size: int | None = None) -> QuandleMap | None:
    """First surjective homomorphism X -> Y (with uniform fibers if requested)."""
    for images in _search_maps(X, Y, injective=False):
        counts = np.bincount(images, minlength=Y.size)
        if (counts == 0).any():
            continue
        if fiber_size is not None and (counts != fiber_size).any():
            continue
        return QuandleMap(X, Y, np.array(images))
    return None


def are_isomorphic(X: FiniteQuandle, Y: FiniteQuandle) -> bool:
    return find_isomorphism(X, Y) is not None


def cyclic_group_table(n: int) -> np.ndarray:
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def symmetric_group_table(k: int) -> np.ndarray:
    """Multiplication table of S_k, permutations in lexicographic order, (p*q)(i) = p(q(i))."""
    from itertools import permutations

    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[x]] for x in range(k))]
    return table


__all__ = [
    "AlexanderPresentation",
    "FiniteQuandle",
    "FinitenessError",
    "MalformedTableError",
    "NotAGroupError",
    "QuandleAxiomError",
    "QuandleMap",
    "ValidationReport",
    "Violation",
    "are_isomorphic",
    "cyclic_group_table",
    "find_isomorphism",
    "find_surjection",
    "make_alexander",
    "make_conjugation",
    "make_dihedral",
    "make_product",
    "make_trivial",
    "poly_pow",
    "product_projection",
    "solve_right",
    "symmetric_group_table",
    "verify_quandle",
]
