"""Hilbert data: h-polynomials, Hilbert coefficients, predicates, and the
one-variable elementary-divisor decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import NeedLargerTruncation
from .presentation import Presentation


@dataclass(frozen=True)
class HData:
    """Integer h-polynomial h_0 + h_1 z + ... + h_s z^s of a module of
    dimension r: the Hilbert series is h(z)/(1-z)^r."""

    h: tuple
    r: int

    def __post_init__(self):
        if self.h and self.h[-1] == 0:
            raise ValueError("h-polynomial has a trailing zero coefficient")

    @property
    def degree(self) -> int:
        return len(self.h) - 1

    @property
    def multiplicity(self) -> int:
        """e_0 = h(1)."""
        return sum(self.h)

    def e(self, i: int) -> int:
        """Hilbert coefficient e_i = h^{(i)}(1) / i!."""
        return sum(comb(k, i) * c for k, c in enumerate(self.h))

    def coefficients(self, upto: int | None = None):
        """e_0 .. e_upto (default: up to the dimension r)."""
        top = self.r if upto is None else upto
        return [self.e(i) for i in range(top + 1)]

    def series_coefficient(self, n: int) -> int:
        """Coefficient of z^n in h(z)/(1-z)^r: the graded piece l(m^n M/m^{n+1}M)."""
        if self.r == 0:
            return self.h[n] if 0 <= n < len(self.h) else 0
        return sum(
            c * comb(n - k + self.r - 1, self.r - 1)
            for k, c in enumerate(self.h)
            if n - k >= 0
        )

    def hilbert_function(self, n: int) -> int:
        """l(M / m^{n+1} M)."""
        return sum(self.series_coefficient(m) for m in range(n + 1))

    def to_str(self, var: str = "z") -> str:
        if not self.h:
            return "0"
        pieces = []
        for k, c in enumerate(self.h):
            if c == 0:
                continue
            if k == 0:
                pieces.append(str(c))
            else:
                mono = var if k == 1 else f"{var}^{k}"
                if c == 1:
                    pieces.append(mono)
                elif c == -1:
                    pieces.append(f"-{mono}")
                else:
                    pieces.append(f"{c}{mono}")
        out = pieces[0]
        for piece in pieces[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    def hilbert_polynomial_str(self) -> str:
        """The Hilbert polynomial in the signed binomial form
        sum (-1)^i e_i binom(X + r - i, r - i)."""
        parts = []
        for i in range(self.r + 1):
            e = self.e(i)
            if e == 0:
                continue
            sign = "-" if (i % 2 == 1) ^ (e < 0) else "+"
            mag = abs(e)
            k = self.r - i
            if k == 0:
                body = str(mag)
            else:
                binom = f"binom(X+{k}, {k})"
                body = binom if mag == 1 else f"{mag}*{binom}"
            parts.append((sign, body))
        if not parts:
            return "0"
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_trim(coeffs):
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def one_minus_z_power(r: int):
    out = [1]
    for _ in range(r):
        out = poly_sub(out, [0] + out)
    return out


def fit_h_from_pieces(pieces, r: int, margin: int = 2) -> HData:
    """Recover h from the graded pieces l(m^n M/m^{n+1}M), n < N: multiply
    the truncated series by (1-z)^r and demand ``margin`` trailing zeros.

    This is the direct series fit; it uses nothing but the degree filtration
    of one truncated model, which makes it an independent oracle for the
    superficial-recursion pipeline.
    """
    n = len(pieces)
    h = []
    for k in range(n):
        h.append(sum((-1) ** j * comb(r, j) * pieces[k - j] for j in range(min(k, r) + 1)))
    s = -1
    for k, c in enumerate(h):
        if c != 0:
            s = k
    if s > n - 1 - margin:
        raise NeedLargerTruncation(
            f"h-polynomial fit needs {margin} stabilized trailing levels (deg {s} of {n})"
        )
    return HData(tuple(h[: s + 1]), r)


def predicates(h: HData) -> dict:
    """Multiplicity-boundary flags read off the h-polynomial."""
    e0 = h.multiplicity
    h0 = h.h[0] if h.h else 0
    h1 = h.h[1] if len(h.h) > 1 else 0
    return {
        "ulrich": e0 == h0,
        "minimal_multiplicity": e0 == h0 + h1,
    }


@dataclass(frozen=True)
class DvrDecomposition:
    """Over a one-variable power-series model the module splits as a direct
    sum of Q'/(y^{a_i}); ``a`` lists the exponents ascending."""

    a: tuple

    @property
    def total(self) -> int:
        return sum(self.a)

    def free_summands(self, annihilator_order: int) -> int:
        """Number of summands with a_i equal to the hypersurface order; by
        descent those witness free direct summands of the original module."""
        return sum(1 for x in self.a if x == annihilator_order)


def _series_inverse(u, N, p):
    inv0 = pow(u[0], p - 2, p)
    inv = [inv0] + [0] * (N - 1)
    for k in range(1, N):
        acc = 0
        for i in range(1, min(k, len(u) - 1) + 1):
            acc += u[i] * inv[k - i]
        inv[k] = (-inv0 * acc) % p
    return inv


def _series_mul(a, b, N, p):
    out = [0] * N
    for i, x in enumerate(a):
        if x == 0 or i >= N:
            continue
        for j, y in enumerate(b):
            if i + j >= N:
                break
            if y:
                out[i + j] = (out[i + j] + x * y) % p
    return out


def dvr_decomposition(pres: Presentation, N: int | None = None) -> DvrDecomposition:
    """Elementary divisor exponents of a one-variable presentation by
    valuation-pivot elimination over k[y]/(y^N)."""
    if pres.nvars != 1:
        raise ValueError("decomposition requires a one-variable presentation")
    p = pres.p
    t = pres.t
    if N is None:
        N = pres.ord_det() + 2
    # entries as coefficient lists of length N
    mat = [[[0] * N for _ in range(t)] for _ in range(t)]
    for i in range(t):
        for j in range(t):
            for (e,), c in pres.phi[i][j].terms.items():
                if e < N:
                    mat[i][j][e] = c % p

    def val(series):
        for k, c in enumerate(series):
            if c:
                return k
        return None

    rows = list(range(t))
    cols = list(range(t))
    result = []
    while rows:
        best = None
        for i in rows:
            for j in cols:
                v = val(mat[i][j])
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            raise NeedLargerTruncation(
                "elementary divisors exceed the truncation (increase N)"
            )
        a, i0, j0 = best
        unit = mat[i0][j0][a:] + [0] * a
        unit_inv = _series_inverse(unit, N, p)
        for j in cols:
            mat[i0][j] = _series_mul(mat[i0][j], unit_inv, N, p)
        # pivot is now exactly y^a; clear the column then the row
        for i in rows:
            if i == i0:
                continue
            e = mat[i][j0]
            if val(e) is None:
                continue
            factor = e[a:] + [0] * a  # e / y^a, integral since a is minimal
            mat[i] = [
                [
                    (x - y) % p
                    for x, y in zip(mat[i][j], _series_mul(factor, mat[i0][j], N, p))
                ]
                for j in range(t)
            ]
        # the pivot row need not be cleared: column operations doing so would
        # not touch the remaining submatrix (its pivot column is already zero)
        result.append(a)
        rows.remove(i0)
        cols.remove(j0)
    return DvrDecomposition(tuple(sorted(result)))
