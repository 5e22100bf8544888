"""Low-degree quandle (co)homology with finite abelian coefficients.

Coefficients are written additively.  Chains live in the quandle quotient
complex: any pair or triple with two equal neighbours is zero.  Cochains are
stored as full n x n arrays of group-element indices with a zero diagonal.

Sign conventions (from the rack boundary restricted to low degree)::

    d2(x, y)    = (x) - (x*y)
    d3(x, y, z) = (x, z) - (x*y, z) - (x, y) + (x*z, y*z)
    (delta f)(x, y) = f(x) - f(x*y)
    phi is a cocycle  <=>  phi(x,y) + phi(x*y,z) == phi(x,z) + phi(x*z, y*z)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Mapping

import numpy as np

from .quandle import FiniteQuandle
from .snf import invariant_factors, smith_mod, smith_normal_form


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{d_1} x ... x Z_{d_k}; elements are mixed-radix indices, first factor lowest."""

    factors: tuple[int, ...]

    def __post_init__(self):
        f = tuple(int(d) for d in self.factors)
        if any(d < 2 for d in f):
            raise ValueError("cyclic factor orders must be at least 2")
        object.__setattr__(self, "factors", f)

    @classmethod
    def cyclic(cls, q: int) -> "FiniteAbelianGroup":
        return cls((q,))

    @classmethod
    def parse(cls, spec: str) -> "FiniteAbelianGroup":
        """Parse ``Z2`` or ``Z2xZ4``; ``0``/``1``/``trivial`` is the trivial group."""
        s = spec.strip()
        if s in ("0", "1", "trivial"):
            return cls(())
        parts = s.split("x")
        try:
            if not all(p.startswith("Z") for p in parts):
                raise ValueError
            return cls(tuple(int(p[1:]) for p in parts))
        except ValueError:
            raise ValueError(f"bad group spec {spec!r}; expected e.g. Z2 or Z2xZ4") from None

    def __str__(self):
        return "x".join(f"Z{d}" for d in self.factors) or "trivial"

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) == 1

    def decode(self, a):
        """Element index (or array of indices) -> tuple of coordinates (or stacked array)."""
        out = []
        for d in self.factors:
            a, r = divmod(a, d)
            out.append(r)
        return tuple(out) if np.ndim(a) == 0 else np.stack(out, axis=-1)

    def encode(self, coords) -> int:
        idx = 0
        for c, d in zip(reversed(list(coords)), reversed(self.factors)):
            idx = idx * d + int(c) % d
        return idx

    def _encode_arr(self, coords):
        idx = np.zeros(coords.shape[:-1], dtype=np.int64)
        for i in reversed(range(len(self.factors))):
            idx = idx * self.factors[i] + coords[..., i] % self.factors[i]
        return idx

    def add(self, a, b):
        if self.is_cyclic:
            return (a + b) % self.factors[0]
        if not self.factors:
            return a * 0
        if np.ndim(a) == 0 and np.ndim(b) == 0:
            return self.encode(x + y for x, y in zip(self.decode(a), self.decode(b)))
        return self._encode_arr(self.decode(np.asarray(a)) + self.decode(np.asarray(b)))

    def neg(self, a):
        if self.is_cyclic:
            return (-a) % self.factors[0]
        if not self.factors:
            return a * 0
        if np.ndim(a) == 0:
            return self.encode(-x for x in self.decode(a))
        return self._encode_arr(-self.decode(np.asarray(a)))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, a, k: int):
        if self.is_cyclic:
            return (a * k) % self.factors[0]
        if not self.factors:
            return a * 0
        if np.ndim(a) == 0:
            return self.encode(k * x for x in self.decode(a))
        return self._encode_arr(k * self.decode(np.asarray(a)))

    def component(self, a, i: int):
        """i-th coordinate of element(s) a."""
        d = self.factors[i]
        below = prod(self.factors[:i])
        return (np.asarray(a) // below) % d if np.ndim(a) else (a // below) % d

    def element_str(self, a: int) -> str:
        if self.is_cyclic:
            return str(int(a))
        return ",".join(str(int(c)) for c in self.decode(int(a)))

    def parse_element(self, s: str) -> int:
        parts = [int(x) for x in s.split(",")]
        if len(parts) != len(self.factors):
            raise ValueError(f"element {s!r} does not match group {self}")
        return self.encode(parts)


# ---------------------------------------------------------------- chains


def _normalise(terms: Mapping, degenerate) -> dict:
    out: dict = {}
    for key, c in terms.items():
        key = tuple(int(k) for k in key) if isinstance(key, tuple) else int(key)
        if degenerate(key):
            continue
        out[key] = out.get(key, 0) + int(c)
    return {k: v for k, v in sorted(out.items()) if v != 0}


@dataclass(frozen=True)
class Chain1:
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalise(self.terms, lambda k: False))

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return Chain1(t)

    def __bool__(self):
        return bool(self.terms)


def _degenerate(key) -> bool:
    return any(key[i] == key[i + 1] for i in range(len(key) - 1))


@dataclass(frozen=True)
class Chain2:
    """Integer combination of pairs (x, y); pairs with x == y vanish."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalise(self.terms, _degenerate))

    @classmethod
    def of(cls, *pairs, coeff=1) -> "Chain2":
        t: dict = {}
        for p in pairs:
            t[tuple(p)] = t.get(tuple(p), 0) + coeff
        return cls(t)

    def __add__(self, other: "Chain2") -> "Chain2":
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return Chain2(t)

    def __neg__(self):
        return Chain2({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __bool__(self):
        return bool(self.terms)


def boundary2(X: FiniteQuandle, pair) -> Chain1:
    x, y = pair
    if x == y:
        return Chain1()
    return Chain1({x: 1}) + Chain1({X.op(x, y): -1})


def boundary3(X: FiniteQuandle, triple) -> Chain2:
    x, y, z = triple
    if x == y or y == z:
        return Chain2()
    out = Chain2()
    for sign, pair in ((1, (x, z)), (-1, (X.op(x, y), z)), (-1, (x, y)), (1, (X.op(x, z), X.op(y, z)))):
        out = out + Chain2({pair: sign})
    return out


def chain_boundary(X: FiniteQuandle, c: Chain2) -> Chain1:
    out = Chain1()
    for pair, coeff in c.terms.items():
        b = boundary2(X, pair)
        out = out + Chain1({k: coeff * v for k, v in b.terms.items()})
    return out


def is_cycle2(X: FiniteQuandle, c: Chain2, modulus: int | None = None) -> bool:
    """True when the boundary of c vanishes (over Z, or over Z/modulus)."""
    b = chain_boundary(X, c)
    if modulus is None:
        return not b
    return all(v % modulus == 0 for v in b.terms.values())


# ---------------------------------------------------------------- cochains


@dataclass(frozen=True, eq=False)
class Cochain2:
    """A quandle 2-cochain X x X -> A, stored as element indices."""

    quandle: FiniteQuandle
    group: FiniteAbelianGroup
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.int64)
        n = self.quandle.size
        if v.shape != (n, n):
            raise ValueError(f"cochain must be {n}x{n}, got {v.shape}")
        if ((v < 0) | (v >= self.group.order)).any():
            raise ValueError("cochain value outside the coefficient group")
        diag = np.nonzero(v[np.arange(n), np.arange(n)])[0]
        if len(diag):
            raise ValueError(f"quandle cochain must vanish on (x, x); fails at x={diag[0]}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def zero(cls, X: FiniteQuandle, A: FiniteAbelianGroup) -> "Cochain2":
        return cls(X, A, np.zeros((X.size, X.size), dtype=np.int64))

    @classmethod
    def from_terms(cls, X: FiniteQuandle, A: FiniteAbelianGroup, terms: Mapping | Iterable) -> "Cochain2":
        """Sum of characteristic functions: ``{(a, b): value}`` or an iterable of pairs (value 1)."""
        v = np.zeros((X.size, X.size), dtype=np.int64)
        items = terms.items() if isinstance(terms, Mapping) else ((p, 1) for p in terms)
        for (a, b), val in items:
            v[a, b] = A.add(v[a, b], val % A.order if A.is_cyclic else val)
        return cls(X, A, v)

    def __call__(self, x: int, y: int) -> int:
        return int(self.values[x, y])

    def _check(self, other):
        if self.quandle != other.quandle or self.group != other.group:
            raise ValueError("cochains live on different quandles or groups")

    def __add__(self, other: "Cochain2") -> "Cochain2":
        self._check(other)
        return Cochain2(self.quandle, self.group, self.group.add(self.values, other.values))

    def __neg__(self):
        return Cochain2(self.quandle, self.group, self.group.neg(self.values))

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, Cochain2)
            and self.group == other.group
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None

    def scale(self, k: int) -> "Cochain2":
        return Cochain2(self.quandle, self.group, self.group.scale(self.values, k))

    def component(self, i: int) -> "Cochain2":
        d = self.group.factors[i]
        return Cochain2(self.quandle, FiniteAbelianGroup.cyclic(d), self.group.component(self.values, i))

    def nonzero_terms(self) -> list[tuple[int, int, int]]:
        return [(int(x), int(y), int(self.values[x, y])) for x, y in np.argwhere(self.values != 0)]

    def is_zero(self) -> bool:
        return not self.values.any()


def cocycle_violation(phi: Cochain2) -> tuple[int, int, int] | None:
    """First triple (x, y, z), lexicographically, where the 2-cocycle condition fails."""
    t = phi.quandle.table
    A = phi.group
    v = phi.values
    n = phi.quandle.size
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    lhs = A.add(v[x, y], v[t[x, y], z])
    rhs = A.add(v[x, z], v[t[x, z], t[y, z]])
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return tuple(int(i) for i in bad[0])
    return None


def is_cocycle2(phi: Cochain2) -> bool:
    return cocycle_violation(phi) is None


def coboundary1(X: FiniteQuandle, A: FiniteAbelianGroup, f) -> Cochain2:
    """(delta f)(x, y) = f(x) - f(x*y)."""
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (X.size,):
        raise ValueError("1-cochain needs one value per element")
    return Cochain2(X, A, A.sub(f[:, None], f[X.table]))


def evaluate(phi: Cochain2, c: Chain2) -> int:
    """Pairing sum coeff * phi(x, y), as a group element index."""
    A = phi.group
    total = 0
    for (x, y), k in c.terms.items():
        total = A.add(total, A.scale(phi(x, y), k))
    return int(total)


# ----------------------------------------------------------- linear algebra


def pair_basis(n: int) -> list[tuple[int, int]]:
    """Non-degenerate pairs in row-major order."""
    return [(x, y) for x in range(n) for y in range(n) if x != y]


def pair_position(n: int, x: int, y: int) -> int:
    return x * (n - 1) + (y if y < x else y - 1)


def delta1_matrix(X: FiniteQuandle) -> np.ndarray:
    """Matrix of delta: C^1 -> C^2_Q (rows: non-degenerate pairs, cols: elements)."""
    n = X.size
    M = np.zeros((n * (n - 1), n), dtype=np.int64)
    for r, (x, y) in enumerate(pair_basis(n)):
        M[r, x] += 1
        M[r, X.op(x, y)] -= 1
    return M


def delta2_matrix(X: FiniteQuandle) -> np.ndarray:
    """Matrix of delta: C^2_Q -> C^3_Q (rows: non-degenerate triples, cols: pairs).

    Equal to the transpose of the boundary d3 on quandle 3-chains.
    """
    n = X.size
    t = X.table
    xs, ys, zs = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    keep = (xs != ys) & (ys != zs)
    x, y, z = xs[keep], ys[keep], zs[keep]
    rows = np.arange(len(x))
    M = np.zeros((len(x), n * (n - 1)), dtype=np.int64)
    for sign, a, b in ((1, x, z), (-1, t[x, y], z), (-1, x, y), (1, t[x, z], t[y, z])):
        ok = a != b
        cols = a[ok] * (n - 1) + np.where(b[ok] < a[ok], b[ok], b[ok] - 1)
        np.add.at(M, (rows[ok], cols), sign)
    return M


def _flatten(phi: Cochain2) -> np.ndarray:
    n = phi.quandle.size
    mask = ~np.eye(n, dtype=bool)
    return phi.values[mask]


def _unflatten(vec, X: FiniteQuandle) -> np.ndarray:
    n = X.size
    v = np.zeros((n, n), dtype=np.int64)
    v[~np.eye(n, dtype=bool)] = vec
    return v


def _solve_cyclic(X: FiniteQuandle, q: int, target: np.ndarray) -> np.ndarray | None:
    """Solve delta1 f = target over Z/q; return f or None."""
    D1 = delta1_matrix(X)
    F = smith_mod(D1, q, rows=False, cols=True, rhs=target.reshape(-1, 1))
    rhs = F.rhs[:, 0] % q
    g = np.zeros(X.size, dtype=np.int64)
    for i, d in enumerate(F.diagonal):
        # d == gcd(d, q) after normalisation
        if rhs[i] % d:
            return None
        g[i] = (rhs[i] // d) % q
    if (rhs[F.rank:] % q).any():
        return None
    return (F.T @ g) % q


def is_coboundary(phi: Cochain2) -> np.ndarray | None:
    """A 1-cochain f with delta f == phi, or None when phi is not a coboundary.

    Non-cyclic coefficient groups are solved factor by factor.
    """
    A = phi.group
    X = phi.quandle
    if not A.factors:
        return np.zeros(X.size, dtype=np.int64)
    parts = []
    for i, q in enumerate(A.factors):
        comp = phi.component(i) if not A.is_cyclic else phi
        f = _solve_cyclic(X, q, _flatten(comp))
        if f is None:
            return None
        parts.append(f)
    if A.is_cyclic:
        return parts[0]
    return A._encode_arr(np.stack(parts, axis=-1))


def cohomologous(phi: Cochain2, psi: Cochain2) -> bool:
    return is_coboundary(phi - psi) is not None


@dataclass(frozen=True)
class H2Result:
    """Second quandle cohomology over Z/q.

    ``orders`` lists the cyclic summands matching ``representatives``
    one-to-one; ``invariant_factors`` is the canonical form of the group.
    """

    q: int
    orders: tuple[int, ...]
    representatives: tuple[Cochain2, ...]

    @property
    def invariant_factors(self) -> list[int]:
        return invariant_factors(self.orders)

    @property
    def rank(self) -> int:
        """Number of cyclic summands in the canonical decomposition."""
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.orders)


def compute_H2(X: FiniteQuandle, q: int) -> H2Result:
    """H^2_Q(X; Z_q) with one representative cocycle per cyclic summand."""
    if q < 2:
        raise ValueError("coefficient modulus must be at least 2")
    n = X.size
    A = FiniteAbelianGroup.cyclic(q)
    N = n * (n - 1)
    if N == 0:
        return H2Result(q, (), ())
    D2 = delta2_matrix(X)
    F = smith_mod(D2, q, rows=False, cols=True)
    # kernel of delta2: generator T e_i * (q / g_i) of order g_i, or T e_i of order q
    gens, gen_orders, scale = [], [], []
    for i in range(N):
        g = gcd(F.diagonal[i], q) if i < F.rank else q
        if g == 1:
            continue
        gens.append(i)
        gen_orders.append(g)
        scale.append(q // g)
    k = len(gens)
    if k == 0:
        return H2Result(q, (), ())
    kernel = (F.T[:, gens] * np.array(scale)) % q  # (N, k)

    D1 = delta1_matrix(X)
    Y = (F.T_inv @ D1) % q  # image of delta1 in the reduced coordinates
    if (Y[: F.rank] % np.array([q // gcd(d, q) for d in F.diagonal])[:, None]).any():
        raise ArithmeticError("delta2 . delta1 != 0; boundary matrices are inconsistent")
    coords = np.zeros((k, Y.shape[1]), dtype=np.int64)
    for j, i in enumerate(gens):
        coords[j] = (Y[i] // scale[j]) % q
    R = np.concatenate([np.diag(gen_orders), coords], axis=1) % q
    G = smith_mod(R, q, rows=True, cols=False)
    diag = G.diagonal + [0] * (k - G.rank)
    orders, reps = [], []
    basis = _row_echelon(D1.T % q, q)
    for i in range(k):
        o = gcd(diag[i], q)
        if o == 1:
            continue
        y = G.S_inv[:, i] % q
        vec = (kernel @ y) % q
        vec = _reduce_against(vec, basis, q)
        orders.append(o)
        reps.append(Cochain2(X, A, _unflatten(vec, X)))
    return H2Result(q, tuple(orders), tuple(reps))


def _row_echelon(M: np.ndarray, q: int) -> list[tuple[int, np.ndarray]]:
    """Rows of an echelon form of M over Z/q using unit pivots only, as (pivot column, row)."""
    M = M.copy() % q
    out = []
    used = np.zeros(M.shape[0], dtype=bool)
    for col in range(M.shape[1]):
        cand = [r for r in range(M.shape[0]) if not used[r] and gcd(int(M[r, col]), q) == 1]
        if not cand:
            continue
        r = cand[0]
        used[r] = True
        row = (M[r] * pow(int(M[r, col]), -1, q)) % q
        others = np.nonzero(M[:, col])[0]
        for o in others:
            if o != r:
                M[o] = (M[o] - M[o, col] * row) % q
        M[r] = row
        out.append((col, row))
    return out


def _reduce_against(vec: np.ndarray, basis, q: int) -> np.ndarray:
    vec = vec.copy()
    for col, row in basis:
        if vec[col]:
            vec = (vec - vec[col] * row) % q
    return vec


# ---------------------------------------------------------- integral homology


def integral_H2(X: FiniteQuandle) -> tuple[int, list[int]]:
    """H_2^Q(X; Z) as (free rank, torsion invariant factors), via Smith normal form over Z."""
    n = X.size
    N = n * (n - 1)
    D1 = delta1_matrix(X)  # transpose of d2
    D2 = delta2_matrix(X)  # transpose of d3
    r2 = smith_normal_form(D1, rows=False, cols=False).rank
    f3 = smith_normal_form(D2, rows=False, cols=False)
    torsion = [d for d in f3.diagonal if d > 1]
    return N - r2 - f3.rank, torsion


def h2_from_universal_coefficients(X: FiniteQuandle, q: int) -> list[int]:
    """Invariant factors of Hom(H_2^Q(X; Z), Z_q); H_1^Q is free so Ext vanishes."""
    free, torsion = integral_H2(X)
    orders = [q] * free + [gcd(d, q) for d in torsion]
    return invariant_factors([o for o in orders if o > 1])


__all__ = [
    "Chain1",
    "Chain2",
    "Cochain2",
    "FiniteAbelianGroup",
    "H2Result",
    "boundary2",
    "boundary3",
    "chain_boundary",
    "coboundary1",
    "cocycle_violation",
    "cohomologous",
    "compute_H2",
    "delta1_matrix",
    "delta2_matrix",
    "evaluate",
    "h2_from_universal_coefficients",
    "integral_H2",
    "is_coboundary",
    "is_cocycle2",
    "is_cycle2",
    "pair_basis",
    "pair_position",
]
