"""Depth of the associated graded module, plus the Ratliff-Rush witnesses,
packaged as a standalone report.

Two independent routes are always compared: descent along a verified
superficial chain (depth >= c+1 exactly when the level-c kernel series
vanishes) and the closure criterion (depth >= 1 exactly when the closure
filtration is the adic one, r(z) = 0).
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import analyze
from .invariants import HData
from .presentation import Presentation
from .ratliff import decomposition_residual, ratliff_rush


@dataclass
class DepthReport:
    depth: int
    dim: int
    method_trace: list  # descent flags per chain level
    r_poly: list | None
    h_tilde: HData | None

    @property
    def cohen_macaulay(self) -> bool:
        return self.depth == self.dim


def depth_G(pres: Presentation, seed: int = 0) -> DepthReport:
    """Depth of G(M) by descent, with the closure witnesses attached for
    dimension >= 1 (dimension-zero modules are trivially Cohen-Macaulay)."""
    a = analyze(pres, seed=seed, with_seq=False)
    return DepthReport(
        depth=a.depth,
        dim=a.dim,
        method_trace=list(a.sally),
        r_poly=list(a.rr.r_poly) if a.rr else None,
        h_tilde=a.rr.h_tilde if a.rr else None,
    )


def ratliff_rush_lengths(pres: Presentation, n_max: int, K: int | None = None):
    """Table of l(closure(m^n M)/m^n M) for n = 1..n_max."""
    data = ratliff_rush(pres, n_max=n_max, K=K)
    return {n: (data.lengths[n - 1] if n - 1 < len(data.lengths) else 0)
            for n in range(1, n_max + 1)}


def rr_decomposition_check(pres: Presentation, seed: int = 0):
    """Verify h = h_tilde + (1-z)^{r+1} r(z) exactly; returns (ok, residual)."""
    a = analyze(pres, seed=seed, with_rr=False, with_seq=False)
    data = ratliff_rush(pres, h=a.h)
    residual = decomposition_residual(a.h, data)
    return residual == [], residual
