"""Ratliff-Rush filtration of M with respect to m.

The closure of m^n M is the union over i of the colons (m^{n+i} M : m^i); the
chain is increasing and eventually stationary.  Each colon is computed
exactly inside M/m^K M (a class determines colon membership once K >= n+i),
by i single colon-by-m steps:  (S : m^i) = ((S : m) : m^{i-1}).  Every
intermediate subspace contains a full degree tail of the filtration, so the
steps stay on small coordinate blocks (model.colon_floor_step).

Stationarity is detected pragmatically: two consecutive equal lengths plus a
safety margin of two further confirming iterations, and the entire table is
recomputed at K+2 and compared.  A provable stabilization bound would need
machinery far beyond desk scale; the double witness has been reliable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NeedLargerTruncation
from .invariants import (
    HData,
    fit_h_from_pieces,
    one_minus_z_power,
    poly_mul,
    poly_sub,
    poly_trim,
)
from .linalg import Subspace
from .model import TRUNCATION_CAP, TruncatedModule, build
from .presentation import Presentation


@dataclass
class RRData:
    """Lengths l(closure(m^n M)/m^n M) for n = 1..n_top, the graded pieces of
    the closure filtration, and the polynomial certificates derived from
    them."""

    lengths: list  # lengths[n-1] = l(closure(m^n M)/m^n M)
    closure_pieces: list  # l(closure(m^n M)/closure(m^{n+1} M)), n = 0..
    r_poly: list  # coefficients of sum l(closure(m^{n+1})/m^{n+1}) z^n
    h_tilde: HData
    truncation: int

    @property
    def closure_is_adic(self) -> bool:
        return not self.r_poly


def closure_defect(model: TruncatedModule, n: int) -> int:
    """l(closure(m^n M)/m^n M), stabilized with margin inside M/m^K M."""
    K = model.N
    values = []
    stable_at = None
    for i in range(0, K - n):
        low = Subspace.zero(model.q - model.q_ge[n + i], model.p)
        floor = n + i
        for _ in range(i):
            low = model.colon_floor_step(floor, low)
            floor -= 1
        values.append(low.dim)
        if len(values) >= 2 and values[-1] == values[-2]:
            if stable_at is None:
                stable_at = i - 1
            if i >= stable_at + 3:
                return values[-1]
        elif len(values) >= 2 and values[-1] != values[-2]:
            stable_at = None
    raise NeedLargerTruncation(
        f"colon chain for level {n} did not stabilize below truncation {K}"
    )


def _table_at(pres: Presentation, K: int, n_min: int):
    """Closure-defect lengths for n = 1, 2, ... until two confirmed zeros
    (at least n_min levels)."""
    model = build(pres, K)
    rr = []
    n = 1
    while True:
        if n + 4 > K - 1:
            raise NeedLargerTruncation("Ratliff-Rush table needs more headroom")
        rr.append(closure_defect(model, n))
        if n >= n_min and len(rr) >= 2 and rr[-1] == 0 and rr[-2] == 0:
            break
        n += 1
    return model, rr


def ratliff_rush(pres: Presentation, n_max: int | None = None, K: int | None = None,
                 h: HData | None = None) -> RRData:
    """Compute the closure-length table and its polynomial certificates.

    The reported levels extend to where the table has two confirmed zero
    entries (the closure has rejoined the adic filtration); the optional
    ``n_max`` only raises the number of reported levels.
    """
    if pres.dim < 1:
        raise ValueError("Ratliff-Rush data needs positive depth (dimension >= 1)")
    deg_h = h.degree if h is not None else max(pres.ord_det() - pres.mu, 1)
    n_min = max(deg_h, n_max or 0, 2)
    K = K or max(n_min + 6, 8)
    r = pres.dim
    while True:
        try:
            model, rr = _table_at(pres, K, n_min)
            # double witness: same table two degrees higher
            _, rr2 = _table_at(pres, K + 2, n_min)
            if rr != [x for x in rr2[: len(rr)]] or any(rr2[len(rr):]):
                raise NeedLargerTruncation("closure table unstable under truncation growth")
            # graded pieces of the closure filtration: adic pieces corrected
            # by consecutive defects; past the confirmed zero tail they are
            # the adic pieces themselves
            rr_pad = rr + [0] * (model.N - len(rr))
            pieces = [
                model.hf[n] - rr_pad[n] + (rr_pad[n - 1] if n >= 1 else 0)
                for n in range(model.N - 1)
            ]
            h_tilde = fit_h_from_pieces(pieces, r)
            break
        except NeedLargerTruncation:
            if K >= TRUNCATION_CAP:
                raise
            K = min(2 * K, TRUNCATION_CAP)
    r_poly = poly_trim(rr)
    return RRData(rr, pieces, r_poly, h_tilde, model.N)


def decomposition_residual(h: HData, rr: RRData):
    """h(z) - [h_tilde(z) + (1-z)^{r+1} r(z)]: must vanish identically."""
    correction = poly_mul(one_minus_z_power(h.r + 1), rr.r_poly) if rr.r_poly else []
    rhs = poly_sub(list(rr.h_tilde.h), [-c for c in correction])  # h_tilde + correction
    return poly_trim(poly_sub(list(h.h), rhs))
