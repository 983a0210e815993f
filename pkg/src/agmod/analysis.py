"""End-to-end analysis of one presentation.

The driver reduces M along a verified superficial chain to dimension zero and
extracts every reported invariant, running two independent routes for the
h-polynomial on every level:

* the recursion  h_M(z) = h_N(z) - (1-z)^r b(z)  through the kernel series of
  each chain form (exact once the series has stabilized), seeded by the
  dimension-zero graded pieces;
* the direct series fit from the graded pieces of the truncated model.

The two must agree coefficient-by-coefficient; a mismatch is a bug, not a
tolerance issue, and is raised as such.  Depth of the associated graded
module comes from descent along the chain: depth >= c+1 exactly when the
kernel series at level c vanishes identically (equivalently the h-polynomial
is unchanged by that quotient).  The Ratliff-Rush side is computed as an
independent witness and must agree on the depth >= 1 boundary.

Stabilization failures raise NeedLargerTruncation; analyze() doubles the
truncation up to the cap and reraises TruncationExhausted past it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    NeedLargerTruncation,
    SuperficialSearchFailed,
    TruncationExhausted,
)
from .invariants import (
    DvrDecomposition,
    HData,
    dvr_decomposition,
    fit_h_from_pieces,
    one_minus_z_power,
    poly_mul,
    poly_sub,
    poly_trim,
    predicates,
)
from .model import TRUNCATION_CAP, TruncatedModule, default_truncation
from .ratliff import RRData, decomposition_residual, ratliff_rush
from .presentation import Presentation
from .sequences import boundary_series_check, run_sequence_checks
from .superficial import derive_seed, lift_forms_to_base, superficial_chain


@dataclass
class Analysis:
    """Everything the reports, the theorem lab, and the tests consume."""

    pres: Presentation
    seed: int
    truncation: int
    mu: int
    entry_order: int
    ord_det: int
    dim: int
    levels: list
    base_forms: list  # chain forms lifted to the base coordinates
    h_by_level: list  # HData per chain level (recursion route)
    e: list
    sally: list
    depth: int
    cohen_macaulay: bool
    red: int
    flags: dict
    dvr: DvrDecomposition
    rr: RRData | None = None
    rr_residual: list | None = None
    seq_checks: dict = dc_field(default_factory=dict)
    boundary: dict | None = None
    checks: dict = dc_field(default_factory=dict)

    @property
    def h(self) -> HData:
        return self.h_by_level[0]

    def h_str(self) -> str:
        return self.h.to_str()


def _h_fit_level(level) -> HData:
    r = level.pres.dim
    if r == 0:
        k = level.model.nilpotency_index()
        return HData(tuple(level.model.hf[:k]), 0)
    return fit_h_from_pieces(level.model.hf, r)


def _analyze_at(pres, seed, N, with_rr, with_seq) -> Analysis:
    mu, i_m, ord_det, dim = pres.basic_invariants()
    chain_attempts = 3
    first_false = 0
    levels = sally = None
    for attempt in range(chain_attempts):
        levels = superficial_chain(pres, derive_seed(seed, 7, attempt), N)
        sally = [all(v == 0 for v in lvl.kernel_series) for lvl in levels[:-1]]
        # descent flags must be a True prefix followed by a False suffix;
        # anything else means a form slipped through verification
        first_false = next((c for c, ok in enumerate(sally) if not ok), len(sally))
        if all(not ok for ok in sally[first_false:]):
            break
        if attempt == chain_attempts - 1:
            raise SuperficialSearchFailed(
                "descent flags not monotone: could not verify a good chain", []
            )
    depth = first_false

    # h on every level, both routes
    h_fit = [_h_fit_level(lvl) for lvl in levels]
    h_rec = [None] * len(levels)
    h_rec[-1] = h_fit[-1]
    for k in range(len(levels) - 2, -1, -1):
        r = levels[k].pres.dim
        correction = poly_mul(one_minus_z_power(r), list(levels[k].kernel_series))
        coeffs = poly_trim(poly_sub(list(h_rec[k + 1].h), correction))
        h_rec[k] = HData(tuple(coeffs), r)
        assert h_rec[k].h == h_fit[k].h, (
            f"h-polynomial routes disagree at level {k}: "
            f"recursion {h_rec[k].h} vs fit {h_fit[k].h}"
        )
    h = h_rec[0]

    base_forms = lift_forms_to_base(levels)
    model = levels[0].model
    red = model.reduction_number(base_forms)

    # multiplicity invariance and the top-coefficient correction along the chain
    checks = {"h_dual_route": True, "quotient_consistency": True}
    for k in range(len(levels) - 1):
        r = levels[k].pres.dim
        lower = [h_rec[k].e(i) == h_rec[k + 1].e(i) for i in range(r)]
        total = sum(levels[k].kernel_series)
        top = h_rec[k].e(r) == h_rec[k + 1].e(r) - (-1) ** r * total
        assert all(lower) and top, "Hilbert coefficient transfer failed along the chain"
    checks["coefficient_transfer"] = True

    # dimension-one shape: the first i(M) coefficients all equal mu and the
    # rest are non-negative; the cokernel series of the chain form recovers
    # the same h-polynomial through h_0 + sum (rho_{i-1} - rho_i) z^i
    for k, lvl in enumerate(levels):
        if lvl.pres.dim == 1:
            hk = h_rec[k]
            im_k = lvl.pres.entry_order()
            shape = all(
                (hk.h[j] if j < len(hk.h) else 0) == lvl.pres.mu for j in range(im_k)
            ) and all(c >= 0 for c in hk.h)
            assert shape, "dimension-one h-polynomial shape violated"
            checks["dim1_shape"] = True
            form = lvl.form.coeffs
            rho = lvl.model.mult_cokernel_series(
                form, lvl.model.reduction_number([form])
            )
            from_rho = [hk.h[0] if hk.h else 0] + [
                rho[i - 1] - rho[i] for i in range(1, len(rho))
            ]
            assert tuple(poly_trim(from_rho)) == hk.h, (
                "cokernel-series route disagrees with the h-polynomial"
            )
            checks["dim1_cokernel_series"] = True

    e = h.coefficients()
    assert e[0] >= mu * i_m, "multiplicity below mu * i(M)"
    if dim >= 2:
        assert h.e(2) >= 0, "negative second Hilbert coefficient"
    checks["multiplicity_bound"] = True
    checks["e2_nonnegative"] = h.e(2) >= 0

    final = levels[-1].pres
    dvr = dvr_decomposition(final, final.ord_det() + 2)
    assert dvr.total == e[0], "elementary divisors do not add up to the multiplicity"
    checks["dvr_total"] = True

    flags = predicates(h)
    flags["g_cohen_macaulay"] = depth == dim

    analysis = Analysis(
        pres=pres,
        seed=seed,
        truncation=N,
        mu=mu,
        entry_order=i_m,
        ord_det=ord_det,
        dim=dim,
        levels=levels,
        base_forms=base_forms,
        h_by_level=h_rec,
        e=e,
        sally=sally,
        depth=depth,
        cohen_macaulay=depth == dim,
        red=red,
        flags=flags,
        dvr=dvr,
        checks=checks,
    )

    if with_rr and dim >= 1:
        rr = ratliff_rush(pres, h=h)
        residual = decomposition_residual(h, rr)
        assert residual == [], f"closure decomposition residual {residual}"
        if rr.closure_is_adic != (depth >= 1):
            # the two depth witnesses disagree; only truncation failure can
            # cause this, so escalate instead of choosing a side
            raise NeedLargerTruncation("descent and closure depth witnesses disagree")
        analysis.rr = rr
        analysis.rr_residual = residual
        checks["closure_decomposition"] = True
        checks["closure_depth_boundary"] = True
        if dim >= 2:
            rr_quot = ratliff_rush(levels[0].quotient, h=h_rec[1])
            assert rr.lengths[0] <= rr_quot.lengths[0], (
                "first closure defect must not grow under a superficial quotient"
            )
            checks["closure_defect_monotone"] = True

    if with_seq and dim >= 1:
        analysis.seq_checks = run_sequence_checks(levels, base_forms, model, red)
        assert all(analysis.seq_checks.values()), (
            f"length identity failed: {analysis.seq_checks}"
        )
        checks.update(analysis.seq_checks)

    if pres.annihilator_of_order(3) is not None:
        analysis.boundary = boundary_series_check(model, base_forms, mu, red)
        assert analysis.boundary["shape_ok"], (
            f"boundary series shape violated: {analysis.boundary['pieces']}"
        )
        checks["boundary_series"] = True

    return analysis


def analyze(
    pres: Presentation,
    seed: int = 0,
    truncation: int | None = None,
    with_rr: bool = True,
    with_seq: bool = True,
    check_stability: bool = False,
) -> Analysis:
    """Compute the full invariant record, doubling the truncation on
    stabilization failures (cap 24).

    check_stability reruns everything at N+2 and insists every reported
    invariant is unchanged.
    """
    N = truncation if truncation is not None else default_truncation(pres)
    while True:
        try:
            result = _analyze_at(pres, seed, N, with_rr, with_seq)
            break
        except NeedLargerTruncation as exc:
            if N >= TRUNCATION_CAP:
                raise TruncationExhausted(str(exc)) from exc
            N = min(2 * N, TRUNCATION_CAP)
    if check_stability:
        again = _analyze_at(pres, seed, result.truncation + 2, with_rr, with_seq)
        assert _fingerprint(result) == _fingerprint(again), (
            "invariants changed when recomputed two truncation levels higher"
        )
        result.checks["truncation_stability"] = True
    return result


def _fingerprint(a: Analysis):
    return (
        a.mu,
        a.entry_order,
        a.ord_det,
        a.dim,
        a.h.h,
        tuple(a.e),
        a.red,
        a.depth,
        tuple(a.rr.r_poly) if a.rr else None,
        tuple(sorted(a.flags.items())),
        a.dvr.a,
    )
