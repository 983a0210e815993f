"""Exact dense linear algebra over F_p on numpy int64 arrays.

Vectors are rows; a subspace is the row space of its reduced row echelon
basis.  Pivot selection is always first-nonzero, so every result is
bit-for-bit reproducible.

Row eliminations delay the modular reduction: factors and pivot rows are kept
in [0, p), other entries are allowed to grow by < p^2 per pivot step and are
reduced once at the end.  With p = 32003 and the desk-scale dimensions used
here the intermediate magnitudes stay far below 2^63.
"""

from __future__ import annotations

import numpy as np


def as_matrix(rows, cols=None) -> np.ndarray:
    a = np.asarray(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, cols or 0)
    if a.size == 0:
        a = a.reshape(0, cols if cols is not None else (a.shape[1] if a.ndim == 2 else 0))
    return a


def rref(mat, p: int):
    """Reduced row echelon form.

    Returns (R, pivots): R has one row per pivot, entries in [0, p), pivot
    columns strictly increasing with 1 at each pivot and 0 elsewhere in the
    pivot columns.
    """
    a = np.array(mat, dtype=np.int64) % p
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        col = a[r:, c] % p
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r, c:] %= p
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        colv = a[:, c] % p
        colv[r] = 0
        rows = np.nonzero(colv)[0]
        if rows.size:
            # entries left of c are exact multiples of p in all non-pivot
            # rows, so restricting the update to columns >= c is safe
            a[rows, c:] -= np.outer(colv[rows], a[r, c:])
        pivots.append(c)
        r += 1
    a %= p
    return a[: len(pivots)], pivots


def rank(mat, p: int) -> int:
    return len(rref(mat, p)[1])


def matmul(a, b, p: int) -> np.ndarray:
    """Exact product mod p.  Entries < p and inner dimension < 2^53/p^2 keep
    int64 accumulation exact."""
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def right_kernel(mat, p: int) -> np.ndarray:
    """Basis (as rows) of {v : mat @ v = 0}."""
    a = np.asarray(mat, dtype=np.int64)
    m, n = a.shape
    R, piv = rref(a, p)
    piv_set = set(piv)
    free = [c for c in range(n) if c not in piv_set]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(piv):
            basis[k, c] = (-int(R[i, f])) % p
    return basis


def left_nullspace(mat, p: int) -> np.ndarray:
    """Basis (as rows) of {x : x @ mat = 0}."""
    a = np.asarray(mat, dtype=np.int64)
    return right_kernel(a.T, p)


def invert(mat, p: int) -> np.ndarray:
    """Inverse of a square matrix; raises ValueError if singular."""
    a = np.asarray(mat, dtype=np.int64) % p
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix is not square")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref(aug, p)
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:n, n:]


class Subspace:
    """Row space with a canonical rref basis.  Two Subspaces are equal iff
    their bases are identical arrays."""

    __slots__ = ("ambient_dim", "p", "basis", "pivots")

    def __init__(self, ambient_dim, p, basis, pivots):
        self.ambient_dim = ambient_dim
        self.p = p
        self.basis = basis
        self.pivots = tuple(pivots)

    @staticmethod
    def from_rows(rows, p, ambient_dim=None) -> "Subspace":
        a = as_matrix(rows, cols=ambient_dim)
        if ambient_dim is None:
            ambient_dim = a.shape[1]
        R, piv = rref(a, p)
        return Subspace(ambient_dim, p, R, piv)

    @staticmethod
    def zero(ambient_dim, p) -> "Subspace":
        return Subspace(ambient_dim, p, np.zeros((0, ambient_dim), dtype=np.int64), ())

    @staticmethod
    def full(ambient_dim, p) -> "Subspace":
        return Subspace(ambient_dim, p, np.eye(ambient_dim, dtype=np.int64), range(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise ValueError("subspaces have different ambient spaces")

    def reduce(self, v) -> np.ndarray:
        """Reduce a vector modulo the subspace (zero iff contained)."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim:
            v = (v - v[list(self.pivots)] @ self.basis) % self.p
        return v

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def contains_space(self, other) -> bool:
        self._check(other)
        return all(self.contains(row) for row in other.basis)

    def sum(self, other) -> "Subspace":
        self._check(other)
        return Subspace.from_rows(
            np.concatenate([self.basis, other.basis], axis=0), self.p, self.ambient_dim
        )

    def intersect(self, other) -> "Subspace":
        """Intersection via the kernel of the stacked constraint system:
        pairs (u, w) with u @ A = w @ B sweep out the intersection."""
        self._check(other)
        a, b = self.dim, other.dim
        if a == 0 or b == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        stacked = np.concatenate([self.basis, (-other.basis) % self.p], axis=0)
        combos = left_nullspace(stacked, self.p)
        vecs = matmul(combos[:, :a], self.basis, self.p)
        return Subspace.from_rows(vecs, self.p, self.ambient_dim)

    def quotient_dim(self, sub) -> int:
        self._check(sub)
        if not self.contains_space(sub):
            raise ValueError("quotient_dim: second space is not contained in the first")
        return self.dim - sub.dim

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))


def span(vectors, p, ambient_dim=None) -> Subspace:
    return Subspace.from_rows(vectors, p, ambient_dim)


class EchelonBuilder:
    """Incrementally maintained reduced row echelon form.

    insert() reduces the new row against the current basis with one
    matrix-vector product (valid because the basis is kept fully reduced),
    registers a new pivot if the remainder is nonzero, and clears the new
    pivot column from the stored rows.  rank snapshots after grouped
    insertions give dimension filtrations cheaply.
    """

    def __init__(self, n, p, capacity=None):
        self.n = n
        self.p = p
        self.rows = np.zeros((capacity or max(8, n), n), dtype=np.int64)
        self.pivots = []  # pivot column per stored row
        self.rank = 0

    def _grow(self):
        extra = np.zeros_like(self.rows)
        self.rows = np.concatenate([self.rows, extra], axis=0)

    def insert(self, row) -> bool:
        """Add one row; returns True if the rank grew."""
        p = self.p
        v = np.asarray(row, dtype=np.int64) % p
        r = self.rank
        if r:
            v = (v - v[self.pivots] @ self.rows[:r]) % p
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        inv = pow(int(v[c]), p - 2, p)
        v = (v * inv) % p
        if r == self.rows.shape[0]:
            self._grow()
        if r:
            col = self.rows[:r, c].copy()
            hit = np.nonzero(col)[0]
            if hit.size:
                self.rows[hit] = (self.rows[hit] - np.outer(col[hit], v)) % p
        self.rows[r] = v
        self.pivots.append(c)
        self.rank += 1
        return True

    def insert_block(self, rows) -> None:
        for row in np.asarray(rows, dtype=np.int64):
            if self.rank == self.n:
                return
            self.insert(row)

    def subspace(self) -> Subspace:
        order = np.argsort(self.pivots, kind="stable")
        basis = self.rows[: self.rank][order]
        pivots = [self.pivots[i] for i in order]
        return Subspace(self.n, self.p, basis.copy(), pivots)
