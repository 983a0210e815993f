"""The exact truncated model of M = coker(phi).

For a truncation degree N the model is

    V_N = Q^t / (im phi + n^N Q^t),

realized concretely on the monomial basis of (polynomials of degree < N)^t.
Exactness is the load-bearing fact of the whole artifact:

    M / m^N M  =  Q^t / (im phi + n^N Q^t),

because m^N M is precisely the image of n^N Q^t in M.  The relation space
``rel`` is spanned by the truncations of x^alpha * (column j of phi); the
discarded degree->=N tails of those generators lie inside n^N Q^t, so for
every n <= N the image subspace

    W[n] = (monomials of degree >= n in each coordinate) + rel

satisfies dim W[n] - dim W[n+1] = l(m^n M / m^{n+1} M) *exactly*, not
approximately.  Every length this package reports reduces to such dimension
differences.  The companion assertion (rebuild at N+2 and compare) lives in
``verify_truncation_stability``.

Ambient coordinates are ordered by (total degree, lex, component), so the
degree filtration is a filtration by coordinate prefixes.  Two consequences
are exploited throughout:

* dim W[n] = t * #{monomials of degree >= n} + #{rel pivots in columns of
  degree < n}  -- all of them read off one echelon form of rel;
* in the quotient space V_N / rel (that is, M / m^N M), the images of the
  subspaces W[n] are *coordinate* subspaces spanned by the non-pivot unit
  vectors of degree >= n.  Colons, kernels of multiplication maps and
  reduction tests then reduce to pivot-prefix counts of small echelon forms.

Quantities whose denominators are not sandwiched between m^n M and m^N M
(such as (x)m^n M) are exact once the reduction certificate
m^{n+1}M = (x)m^n M + m^{n+2}M has been established for some n <= N-2:
iterating it gives m^{n+1}M inside (x)m^nM + m^k M for every k, and the Krull
intersection theorem upgrades that to equality, so the truncated tail m^N M
is genuinely contained in the denominator.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import NeedLargerTruncation
from .linalg import Subspace, left_nullspace, matmul, rank as mat_rank, rref
from .presentation import Presentation

TRUNCATION_CAP = 24


@lru_cache(maxsize=None)
def monomial_table(nvars: int, N: int):
    """All exponent vectors of total degree < N, sorted by (degree, lex).

    Returns (exps, index, shifts) where shifts[j][m] is the position of
    exps[m] + e_j, or -1 when the shifted monomial has degree >= N.
    """
    exps = []

    def gen(prefix, remaining, budget):
        if remaining == 0:
            exps.append(tuple(prefix))
            return
        for e in range(budget + 1):
            gen(prefix + [e], remaining - 1, budget - e)

    for d in range(N):
        start = len(exps)
        gen([], nvars, d)
        block = [e for e in exps[start:] if sum(e) == d]
        del exps[start:]
        exps.extend(sorted(block))
    index = {e: i for i, e in enumerate(exps)}
    shifts = []
    for j in range(nvars):
        sh = []
        for e in exps:
            e2 = list(e)
            e2[j] += 1
            sh.append(index.get(tuple(e2), -1))
        shifts.append(np.array(sh, dtype=np.int64))
    return exps, index, shifts


def default_truncation(pres: Presentation) -> int:
    """Expected reduction number + dimension + 4.

    The estimate red ~ ord(det) - mu comes from the one-variable elementary
    divisors (their sum is the determinant order, their count is mu, and the
    reduction number of the reduced module is max(a_i) - 1).  Stabilization
    detectors escalate when the guess is short.
    """
    expected_red = max(2, pres.ord_det() - pres.mu)
    guess = expected_red + pres.dim + 4
    return min(max(guess, 6), TRUNCATION_CAP)


def escalate_truncation(N: int) -> int:
    if N >= TRUNCATION_CAP:
        raise NeedLargerTruncation(f"truncation cap {TRUNCATION_CAP} reached")
    return min(2 * N, TRUNCATION_CAP)


class TruncatedModule:
    """The finite model V_N with its degree filtration.

    All interesting state is derived from one reduced echelon form of the
    relation matrix.  Instances are immutable after construction.
    """

    def __init__(self, pres: Presentation, N: int):
        if N < 1:
            raise ValueError("truncation degree must be >= 1")
        self.pres = pres
        self.N = N
        self.p = pres.p
        self.t = pres.t
        v = pres.nvars
        exps, index, shifts = monomial_table(v, N)
        self.exps = exps
        self.nmon = len(exps)
        self.a = self.nmon * self.t  # ambient dimension
        # flat coordinate = monomial_rank * t + component; monomials are
        # degree-sorted, so flat order refines total degree
        self.coord_deg = np.repeat(
            np.array([sum(e) for e in exps], dtype=np.int64), self.t
        )
        self._mon_shifts = shifts

        rel = self._relation_rows(index)
        basis, pivots = rref(rel, self.p)
        self.rel_basis = basis
        self.rel_pivots = np.array(pivots, dtype=np.int64)
        self.rel_rank = len(pivots)

        in_pivot = np.zeros(self.a, dtype=bool)
        in_pivot[self.rel_pivots] = True
        self.Q = np.nonzero(~in_pivot)[0]  # section coordinates, degree order
        self.q = self.Q.size
        self.Q_deg = self.coord_deg[self.Q]
        # position of each ambient coordinate inside Q (or -1)
        self.q_index = np.full(self.a, -1, dtype=np.int64)
        self.q_index[self.Q] = np.arange(self.q)
        self.pivot_row = np.full(self.a, -1, dtype=np.int64)
        self.pivot_row[self.rel_pivots] = np.arange(self.rel_rank)
        self.rel_basis_Q = self.rel_basis[:, self.Q] if self.rel_rank else \
            np.zeros((0, self.q), dtype=np.int64)

        # dimension bookkeeping
        piv_deg = self.coord_deg[self.rel_pivots] if self.rel_rank else np.array([])
        self.dims_W = []
        for n in range(N + 1):
            coords_ge = int(np.count_nonzero(self.coord_deg >= n))
            piv_lt = int(np.count_nonzero(piv_deg < n)) if self.rel_rank else 0
            self.dims_W.append(coords_ge + piv_lt)
        self.hf = [self.dims_W[n] - self.dims_W[n + 1] for n in range(N)]
        self.H = [self.a - self.dims_W[n + 1] for n in range(N)]
        # #Q-coordinates of degree >= n, n = 0..N (q-chain = images of W[n])
        self.q_ge = [int(np.count_nonzero(self.Q_deg >= n)) for n in range(N + 1)]
        for n in range(N + 1):
            assert self.q_ge[n] == self.dims_W[n] - self.rel_rank
        self._op_cache = {}

    # -- construction helpers -------------------------------------------------

    def _relation_rows(self, index) -> np.ndarray:
        """Truncations of x^alpha * (column j of phi) for all monomials with
        |alpha| + (minimal order in column j) < N."""
        pres, N, t = self.pres, self.N, self.t
        col_ord = pres.column_orders()
        rows = []
        for j in range(t):
            col_terms = []
            for i in range(t):
                for e, c in pres.phi[i][j].terms.items():
                    if sum(e) < N:
                        col_terms.append((e, i, c))
            if not col_terms:
                continue
            for alpha in self.exps:
                da = sum(alpha)
                if da + col_ord[j] >= N:
                    continue
                row = np.zeros(self.a, dtype=np.int64)
                nonzero = False
                for e, i, c in col_terms:
                    if da + sum(e) >= N:
                        continue
                    target = tuple(x + y for x, y in zip(alpha, e))
                    row[index[target] * t + i] = (row[index[target] * t + i] + c) % self.p
                    nonzero = True
                if nonzero:
                    rows.append(row)
        if not rows:
            return np.zeros((0, self.a), dtype=np.int64)
        return np.array(rows, dtype=np.int64)

    # -- lengths ---------------------------------------------------------------

    def hilbert_function(self, n: int) -> int:
        """l(M / m^{n+1} M), exact for n+1 <= N."""
        if n + 1 > self.N:
            raise NeedLargerTruncation(f"level {n} exceeds truncation {self.N}")
        if n < 0:
            return 0
        return self.H[n]

    def graded_piece(self, n: int) -> int:
        """l(m^n M / m^{n+1} M)."""
        if n + 1 > self.N:
            raise NeedLargerTruncation(f"level {n} exceeds truncation {self.N}")
        return self.hf[n]

    def nilpotency_index(self) -> int:
        """Least k with m^k M = 0 (dimension-zero modules only).

        Certified exactly: the model sees an empty degree level below N.
        """
        if self.q == 0:
            return 0
        top = int(self.Q_deg.max())
        if top >= self.N - 1:
            raise NeedLargerTruncation("module not yet nilpotent at this truncation")
        return top + 1

    def total_length(self) -> int:
        """l(M) for dimension-zero modules (demands the nilpotency witness)."""
        self.nilpotency_index()
        return self.q

    # -- the big-ambient subspaces (contract surface; cheap to materialize) ----

    def W(self, n: int) -> Subspace:
        """The subspace of the ambient space representing m^n M (n <= N).

        Basis: the relation rows whose pivot has degree < n, with their
        degree->=n tails reduced away against the unit block, plus the unit
        vectors at all coordinates of degree >= n.  That matrix is already a
        reduced echelon basis.
        """
        if not 0 <= n <= self.N:
            raise ValueError("level out of range")
        lo = self.coord_deg < n
        unit_coords = np.nonzero(~lo)[0]
        keep = [i for i in range(self.rel_rank) if lo[self.rel_pivots[i]]]
        rows = np.zeros((len(keep) + unit_coords.size, self.a), dtype=np.int64)
        if keep:
            rows[: len(keep)] = self.rel_basis[keep]
            rows[: len(keep), ~lo] = 0  # reduce tails modulo the unit block
        for k, c in enumerate(unit_coords):
            rows[len(keep) + k, c] = 1
        all_pivots = [int(self.rel_pivots[i]) for i in keep] + [int(c) for c in unit_coords]
        order = np.argsort(all_pivots, kind="stable")
        return Subspace(self.a, self.p, rows[order], sorted(all_pivots))

    def class_vector(self, polys) -> np.ndarray:
        """Coordinates in M/m^N M of an element of Q^t (tuple of t Polys)."""
        row = np.zeros(self.a, dtype=np.int64)
        _, index, _ = monomial_table(self.pres.nvars, self.N)
        for i, poly in enumerate(polys):
            for e, c in poly.terms.items():
                if sum(e) < self.N:
                    row[index[e] * self.t + i] = (row[index[e] * self.t + i] + c) % self.p
        if self.rel_rank:
            row = (row - row[self.rel_pivots] @ self.rel_basis) % self.p
        return row[self.Q]

    # -- multiplication operators on M / m^N M ---------------------------------

    def op(self, coeffs) -> np.ndarray:
        """Matrix (rows = images of basis vectors) of multiplication by the
        linear form sum coeffs[j] * x_j on M / m^N M."""
        key = tuple(int(c) % self.p for c in coeffs)
        if key in self._op_cache:
            return self._op_cache[key]
        T = np.zeros((self.q, self.q), dtype=np.int64)
        t = self.t
        for j, cj in enumerate(key):
            if cj == 0:
                continue
            shifted_mon = self._mon_shifts[j][self.Q // t]
            ok = shifted_mon >= 0
            src = np.nonzero(ok)[0]
            tgt = shifted_mon[ok] * t + (self.Q[ok] % t)
            # image of a unit class is the class of the shifted coordinate:
            # a unit vector again if the target is a section coordinate, or
            # minus the matching relation row otherwise
            tq = self.q_index[tgt]
            unit = tq >= 0
            T[src[unit], tq[unit]] = (T[src[unit], tq[unit]] + cj) % self.p
            pr = self.pivot_row[tgt[~unit]]
            if pr.size:
                T[src[~unit]] = (T[src[~unit]] - cj * self.rel_basis_Q[pr]) % self.p
        self._op_cache[key] = T
        return T

    def filtration_subspace(self, n: int) -> Subspace:
        """Image of m^n M in M/m^N M: the coordinate subspace of section
        coordinates of degree >= n."""
        coords = np.nonzero(self.Q_deg >= min(n, self.N))[0]
        basis = np.zeros((coords.size, self.q), dtype=np.int64)
        for k, c in enumerate(coords):
            basis[k, c] = 1
        return Subspace(self.q, self.p, basis, [int(c) for c in coords])

    def mult_kernel_series(self, coeffs):
        """b_n = dim ker(multiplication by the form: M/m^n M -> M/m^{n+1} M)
        = l((m^{n+1}M : form) / m^n M), for n = 0 .. N-2.

        One echelon form of the operator gives the whole series: with
        degree-ordered columns, the rank of the operator composed with the
        projection off m^{n+1}M is (# pivots in columns of degree <= n).
        """
        T = self.op(coeffs)
        _, piv = rref(T, self.p)
        piv_deg = self.Q_deg[list(piv)] if piv else np.array([], dtype=np.int64)
        out = []
        for n in range(self.N - 1):
            cnt = int(np.count_nonzero(piv_deg <= n)) if piv_deg.size else 0
            q_lt = self.q - self.q_ge[n]
            out.append(q_lt - cnt)
        assert not out or out[0] == 0
        return out

    def colon_subspace(self, S: Subspace, forms) -> Subspace:
        """{v in M/m^N M : (form)*v in S for every listed form}.

        S must be stable under the forms (every submodule image is).
        """
        conds = []
        piv_set = set(S.pivots)
        keep = [c for c in range(self.q) if c not in piv_set]
        for f in forms:
            T = self.op(f)
            if S.dim:
                red = (T - T[:, list(S.pivots)] @ S.basis) % self.p
            else:
                red = T
            conds.append(red[:, keep])
        if not conds:
            return Subspace.full(self.q, self.p)
        K = np.concatenate(conds, axis=1)
        return Subspace.from_rows(left_nullspace(K, self.p), self.p, self.q)

    def image_rows(self, S: Subspace, coeffs) -> np.ndarray:
        return matmul(S.basis, self.op(coeffs), self.p)

    def colon_floor_step(self, floor: int, low: Subspace) -> Subspace:
        """One colon-by-m step on a subspace of the form Wq[floor] + low,
        where ``low`` lives on the coordinate block of degree < floor.

        The colon decomposes as Wq[floor-1] + (returned subspace): the part
        of degree >= floor-1 is swallowed automatically because m * Wq[floor-1]
        is inside Wq[floor], so only the block of degree < floor-1 has to be
        solved for.  All matrices involved stay block-sized.
        """
        out_count = self.q - self.q_ge[floor]
        in_count = self.q - self.q_ge[floor - 1]
        conds = []
        piv = list(low.pivots)
        keep = [c for c in range(out_count) if c not in set(piv)]
        for j in range(self.pres.nvars):
            form = tuple(1 if k == j else 0 for k in range(self.pres.nvars))
            block = self.op(form)[:in_count, :out_count]
            if low.dim:
                block = (block - block[:, piv] @ low.basis) % self.p
            conds.append(block[:, keep])
        if not conds or in_count == 0:
            return Subspace.zero(in_count, self.p)
        K = np.concatenate(conds, axis=1)
        return Subspace.from_rows(left_nullspace(K, self.p), self.p, in_count)

    # -- composite quantities ---------------------------------------------------

    def _stacked_image_rank(self, forms, n_from: int, keep_deg_le: int) -> int:
        """rank of sum_k (form_k) * (m^{n_from} M)  modulo the coordinate
        subspace of degrees > keep_deg_le."""
        rows_idx = np.nonzero(self.Q_deg >= n_from)[0]
        cols = np.nonzero(self.Q_deg <= keep_deg_le)[0]
        if cols.size == 0:
            return 0
        blocks = [self.op(f)[rows_idx][:, cols] for f in forms]
        if not blocks:
            return 0
        return mat_rank(np.concatenate(blocks, axis=0), self.p)

    def reduction_certificate(self, forms, n: int) -> bool:
        """Exact test of m^{n+1}M = (x)m^n M for the listed forms x.

        Decided through m^{n+1}M <= (x)m^nM + m^{n+2}M (requires n+2 <= N),
        which iterates to every depth and closes up by Krull intersection.
        """
        if n + 2 > self.N:
            raise NeedLargerTruncation("reduction test needs two levels of headroom")
        target = self.q_ge[n + 1]
        got = self.q_ge[n + 2] + self._stacked_image_rank(forms, n, n + 1)
        assert got <= target
        return got == target

    def reduction_number(self, forms) -> int:
        """min n with m^{n+1}M = (x)m^n M (x = the listed forms; for
        dimension zero the empty list gives the nilpotency index - 1)."""
        if not forms:
            return max(self.nilpotency_index() - 1, 0)
        for n in range(self.N - 1):
            if self.reduction_certificate(forms, n):
                return n
        raise NeedLargerTruncation("no reduction witnessed below the truncation")

    def image_module_rank(self, forms, n_from: int) -> int:
        """l((x) m^{n_from} M / m^N M) once the reduction certificate holds."""
        rows_idx = np.nonzero(self.Q_deg >= n_from)[0]
        blocks = [self.op(f)[rows_idx] for f in forms]
        return mat_rank(np.concatenate(blocks, axis=0), self.p) if blocks else 0

    def mult_cokernel_series(self, coeffs, red: int):
        """rho_n = l(m^{n+1}M / (form) m^n M) for a one-dimensional module;
        ``red`` is a previously certified reduction number for the form."""
        out = []
        for n in range(self.N - 1):
            num = self.q_ge[n + 1]
            den = self._stacked_image_rank([coeffs], n, self.N)
            out.append(num - den)
        for n in range(red, self.N - 1):
            assert out[n] == 0
        return out

    def intersection_defect_series(self, forms, red: int):
        """vv_n = l((m^{n+1}M  intersect  (x)M) / (x) m^n M) and their sum.

        Exact for n <= N-2 given the reduction certificate at ``red``.
        """
        X_rank = mat_rank(np.concatenate([self.op(f) for f in forms], axis=0), self.p)
        out = []
        upto = min(red + 2, self.N - 1)
        for n in range(upto):
            dim_A = self.q_ge[n + 1]
            dim_sum = self.q_ge[n + 1] + self._stacked_image_rank(forms, 0, n)
            dim_inter = dim_A + X_rank - dim_sum
            den = self._stacked_image_rank(forms, n, self.N)
            vv = dim_inter - den
            assert vv >= 0
            out.append(vv)
        for n in range(red, upto):
            assert out[n] == 0, "defect series must vanish past the reduction number"
        return out, sum(out)

    def boundary_pieces(self, forms, levels: int):
        """l(m^n M / (m^{n+1}M + (x) m^{n-1} M)) for n = 0..levels-1: the
        graded pieces of G(M) modulo the initial forms of x.  Exact
        unconditionally (the denominator contains m^{n+1}M)."""
        out = []
        for n in range(levels):
            if n == 0:
                out.append(self.q - self.q_ge[1])
                continue
            if n + 1 > self.N:
                raise NeedLargerTruncation("boundary piece beyond truncation")
            num = self.q_ge[n]
            den = self.q_ge[n + 1] + self._stacked_image_rank(forms, n - 1, n)
            out.append(num - den)
        return out


def build(pres: Presentation, N: int | None = None) -> TruncatedModule:
    """Model for the presentation, memoized on the presentation object
    (models are immutable, and reruns at other truncations reuse them)."""
    if N is None:
        N = default_truncation(pres)
    cache = getattr(pres, "_tm_cache", None)
    if cache is None:
        cache = {}
        object.__setattr__(pres, "_tm_cache", cache)
    if N not in cache:
        cache[N] = TruncatedModule(pres, N)
    return cache[N]


def verify_truncation_stability(pres: Presentation, N: int) -> None:
    """Assert that the models at N and N+2 agree on all shared levels."""
    base = TruncatedModule(pres, N)
    bigger = TruncatedModule(pres, N + 2)
    for n in range(N):
        assert base.hf[n] == bigger.hf[n], (
            f"truncation instability at level {n}: {base.hf[n]} != {bigger.hf[n]}"
        )
