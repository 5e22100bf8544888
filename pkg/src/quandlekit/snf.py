"""Smith normal form over Z and over Z/q.

Both routines reduce an integer matrix ``A`` to diagonal form with unimodular
row and column operations, optionally recording the transforms so that
``S @ A @ T == D``.  Over Z the diagonal satisfies the divisibility chain
``d_1 | d_2 | ...``; over Z/q the diagonal is only guaranteed to be diagonal
(each entry is normalised to ``gcd(d, q)``), which is all the kernel and
cokernel computations downstream need.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def unit_part(a: int, q: int) -> int:
    """Return a unit ``u`` mod q with ``a == u * gcd(a, q)`` (mod q)."""
    g = gcd(a, q)
    if g == q:
        return 1
    base = (a // g) % q
    step = q // g
    for k in range(g):
        u = (base + k * step) % q
        if gcd(u, q) == 1:
            return u
    raise ArithmeticError(f"no unit part for {a} mod {q}")  # unreachable


@dataclass
class SmithForm:
    """Diagonal reduction ``S @ A @ T == D`` (mod ``modulus`` when set).

    ``diagonal`` holds the nonzero diagonal entries in order; ``rank`` is its
    length.  Transforms that were not requested are ``None``.  ``rhs`` is the
    image ``S @ B`` of any right-hand-side columns passed in.
    """

    diagonal: list[int]
    modulus: int | None
    S: np.ndarray | None = None
    S_inv: np.ndarray | None = None
    T: np.ndarray | None = None
    T_inv: np.ndarray | None = None
    rhs: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)


class _Reducer:
    def __init__(self, A, modulus, track_rows, track_cols, rhs):
        self.q = modulus
        m, k = A.shape
        self.k = k
        dtype = object if modulus is None else np.int64
        blocks = [np.asarray(A, dtype=dtype)]
        if rhs is not None:
            blocks.append(np.asarray(rhs, dtype=dtype).reshape(m, -1))
        self.M = np.concatenate(blocks, axis=1) if len(blocks) > 1 else blocks[0].copy()
        self.M = self._red(self.M)
        eye_m = lambda n: np.eye(n, dtype=np.int64).astype(dtype)  # noqa: E731
        self.S = eye_m(m) if track_rows else None
        self.S_inv = eye_m(m) if track_rows else None
        self.T = eye_m(k) if track_cols else None
        self.T_inv = eye_m(k) if track_cols else None

    def _red(self, x):
        return x if self.q is None else x % self.q

    # -- elementary operations (each keeps S, S_inv, T, T_inv consistent) --

    def swap_rows(self, i, j):
        if i == j:
            return
        self.M[[i, j]] = self.M[[j, i]]
        if self.S is not None:
            self.S[[i, j]] = self.S[[j, i]]
            self.S_inv[:, [i, j]] = self.S_inv[:, [j, i]]

    def swap_cols(self, i, j):
        if i == j:
            return
        self.M[:, [i, j]] = self.M[:, [j, i]]
        if self.T is not None:
            self.T[:, [i, j]] = self.T[:, [j, i]]
            self.T_inv[[i, j]] = self.T_inv[[j, i]]

    def scale_row(self, i, u):
        # u must be a unit (mod q) or -1 over Z
        inv = -1 if self.q is None else pow(int(u), -1, self.q)
        self.M[i] = self._red(self.M[i] * u)
        if self.S is not None:
            self.S[i] = self._red(self.S[i] * u)
            self.S_inv[:, i] = self._red(self.S_inv[:, i] * inv)

    def sub_rows(self, t, rows, coeffs):
        """row_r -= c_r * row_t for every r in rows."""
        self.M[rows] = self._red(self.M[rows] - np.outer(coeffs, self.M[t]))
        if self.S is not None:
            self.S[rows] = self._red(self.S[rows] - np.outer(coeffs, self.S[t]))
            self.S_inv[:, t] = self._red(self.S_inv[:, t] + self.S_inv[:, rows] @ coeffs)

    def sub_cols(self, t, cols, coeffs):
        """col_c -= c_c * col_t for every c in cols."""
        self.M[:, cols] = self._red(self.M[:, cols] - np.outer(self.M[:, t], coeffs))
        if self.T is not None:
            self.T[:, cols] = self._red(self.T[:, cols] - np.outer(self.T[:, t], coeffs))
            self.T_inv[t] = self._red(self.T_inv[t] + coeffs @ self.T_inv[cols])

    def bezout_rows(self, t, i):
        a, b = int(self.M[t, t]), int(self.M[i, t])
        g, s, u = ext_gcd(a, b)
        op = np.array([[s, u], [-b // g, a // g]], dtype=object)
        inv = np.array([[a // g, -u], [b // g, s]], dtype=object)
        self._apply_rows(t, i, op, inv)

    def bezout_cols(self, t, j):
        a, b = int(self.M[t, t]), int(self.M[t, j])
        g, s, u = ext_gcd(a, b)
        op = np.array([[s, -b // g], [u, a // g]], dtype=object)
        inv = np.array([[a // g, b // g], [-u, s]], dtype=object)
        self._apply_cols(t, j, op, inv)

    def _mat(self, op):
        return op if self.q is None else op.astype(np.int64) % self.q

    def _apply_rows(self, t, i, op, inv):
        op, inv = self._mat(op), self._mat(inv)
        self.M[[t, i]] = self._red(op @ self.M[[t, i]])
        if self.S is not None:
            self.S[[t, i]] = self._red(op @ self.S[[t, i]])
            self.S_inv[:, [t, i]] = self._red(self.S_inv[:, [t, i]] @ inv)

    def _apply_cols(self, t, j, op, inv):
        op, inv = self._mat(op), self._mat(inv)
        self.M[:, [t, j]] = self._red(self.M[:, [t, j]] @ op)
        if self.T is not None:
            self.T[:, [t, j]] = self._red(self.T[:, [t, j]] @ op)
            self.T_inv[[t, j]] = self._red(inv @ self.T_inv[[t, j]])

    # -- driver --

    def _size(self, x):
        x = int(x)
        return abs(x) if self.q is None else gcd(x, self.q)

    def _normalise_pivot(self, t):
        p = int(self.M[t, t])
        if self.q is None:
            if p < 0:
                self.scale_row(t, -1)
        else:
            u = unit_part(p, self.q)
            if u != 1:
                self.scale_row(t, pow(u, -1, self.q))

    def reduce(self):
        m, k = self.M.shape[0], self.k
        diagonal = []
        for t in range(min(m, k)):
            sub = self.M[t:, t:k]
            nz = np.argwhere(sub != 0)
            if len(nz) == 0:
                break
            sizes = [self._size(sub[r, c]) for r, c in nz]
            r, c = nz[int(np.argmin(sizes))]
            self.swap_rows(t, t + r)
            self.swap_cols(t, t + c)
            self._normalise_pivot(t)
            while True:
                p = int(self.M[t, t])
                col = self.M[t + 1:, t]
                rows = np.nonzero(col)[0] + t + 1
                if len(rows):
                    vals = np.array([int(v) for v in self.M[rows, t]], dtype=object)
                    div = np.array([v % p == 0 for v in vals], dtype=bool)
                    if div.any():
                        coeffs = np.array([v // p for v in vals[div]], dtype=object)
                        if self.q is not None:
                            coeffs = coeffs.astype(np.int64)
                        self.sub_rows(t, rows[div], coeffs)
                    if not div.all():
                        self.bezout_rows(t, int(rows[~div][0]))
                        self._normalise_pivot(t)
                        continue
                row = self.M[t, t + 1:k]
                cols = np.nonzero(row)[0] + t + 1
                if len(cols):
                    vals = np.array([int(v) for v in self.M[t, cols]], dtype=object)
                    div = np.array([v % p == 0 for v in vals], dtype=bool)
                    if div.any():
                        coeffs = np.array([v // p for v in vals[div]], dtype=object)
                        if self.q is not None:
                            coeffs = coeffs.astype(np.int64)
                        self.sub_cols(t, cols[div], coeffs)
                    if not div.all():
                        self.bezout_cols(t, int(cols[~div][0]))
                        self._normalise_pivot(t)
                        continue
                break
            diagonal.append(int(self.M[t, t]))
        if self.q is None:
            self._divisibility_chain(diagonal)
        return diagonal

    def _divisibility_chain(self, diagonal):
        r = len(diagonal)
        changed = True
        while changed:
            changed = False
            for i in range(r):
                for j in range(i + 1, r):
                    a, b = diagonal[i], diagonal[j]
                    if b % a == 0:
                        continue
                    # [[a,0],[0,b]] -> [[g,0],[0,ab/g]] via col j += col i then a Bezout pass
                    self.sub_cols(j, np.array([i]), np.array([-1], dtype=object))
                    self._clear_2x2(i, j)
                    diagonal[i], diagonal[j] = int(self.M[i, i]), int(self.M[j, j])
                    changed = True

    def _clear_2x2(self, i, j):
        # M[i,i]=a, M[j,i]=b, M[j,j]=b, M[i,j]=0 after the column add
        self.bezout_rows_at(i, j)
        while self.M[i, j] != 0 or self.M[j, i] != 0:
            if self.M[i, j] != 0:
                p = int(self.M[i, i])
                v = int(self.M[i, j])
                if v % p == 0:
                    self.sub_cols(i, np.array([j]), np.array([v // p], dtype=object))
                else:
                    self.bezout_cols_at(i, j)
            if self.M[j, i] != 0:
                p = int(self.M[i, i])
                v = int(self.M[j, i])
                if v % p == 0:
                    self.sub_rows(i, np.array([j]), np.array([v // p], dtype=object))
                else:
                    self.bezout_rows_at(i, j)
        for idx in (i, j):
            if self.M[idx, idx] < 0:
                self.scale_row(idx, -1)

    def bezout_rows_at(self, i, j):
        a, b = int(self.M[i, i]), int(self.M[j, i])
        if b == 0:
            return
        g, s, u = ext_gcd(a, b)
        op = np.array([[s, u], [-b // g, a // g]], dtype=object)
        inv = np.array([[a // g, -u], [b // g, s]], dtype=object)
        self._apply_rows(i, j, op, inv)

    def bezout_cols_at(self, i, j):
        a, b = int(self.M[i, i]), int(self.M[i, j])
        g, s, u = ext_gcd(a, b)
        op = np.array([[s, -b // g], [u, a // g]], dtype=object)
        inv = np.array([[a // g, b // g], [-u, s]], dtype=object)
        self._apply_cols(i, j, op, inv)


def smith_normal_form(A, *, rows: bool = True, cols: bool = True) -> SmithForm:
    """Smith normal form of an integer matrix over Z.

    Exact (Python integers).  Returns diagonal entries ``d_1 | d_2 | ... > 0``
    together with unimodular ``S`` and ``T`` (and their inverses).
    """
    A = np.asarray(A)
    red = _Reducer(A, None, rows, cols, None)
    diagonal = red.reduce()
    return SmithForm(diagonal, None, red.S, red.S_inv, red.T, red.T_inv)


def smith_mod(A, q: int, *, rows: bool = False, cols: bool = True, rhs=None) -> SmithForm:
    """Diagonalise ``A`` over Z/q.

    Row transforms are only materialised when ``rows`` is set; pass ``rhs`` to
    carry right-hand-side columns through the row operations instead, which is
    much cheaper for tall matrices.
    """
    if q < 2:
        raise ValueError("modulus must be at least 2")
    A = np.asarray(A, dtype=np.int64)
    red = _Reducer(A, q, rows, cols, rhs)
    diagonal = red.reduce()
    extra = red.M[:, red.k:] if rhs is not None else None
    return SmithForm(diagonal, q, red.S, red.S_inv, red.T, red.T_inv, extra)


def invariant_factors(orders) -> list[int]:
    """Canonical invariant factors ``n_1 | n_2 | ...`` of a direct sum of cyclic groups."""
    primes: dict[int, list[int]] = {}
    for n in orders:
        n = int(n)
        p = 2
        while n > 1:
            if n % p == 0:
                e = 1
                while n % p == 0:
                    n //= p
                    e *= p
                primes.setdefault(p, []).append(e)
            p += 1
    for powers in primes.values():
        powers.sort(reverse=True)
    length = max((len(v) for v in primes.values()), default=0)
    out = []
    for i in range(length):
        f = 1
        for powers in primes.values():
            if i < len(powers):
                f *= powers[i]
        out.append(f)
    return sorted(out)
