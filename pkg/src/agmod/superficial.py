"""Randomized search and verification of superficial linear forms.

Superficiality cannot be certified from finite data; what the downstream
computations consume is a finite list of consequences, and exactly those are
verified here, at the working truncation:

* the kernel-corrected comparison with the quotient module holds at every
  computed level (this is unconditional and doubles as a model-correctness
  canary);
* the kernel series of the multiplication map stabilizes to zero with two
  levels of margin (a regular initial form has an eventually-zero series);
* the multiplicity is preserved by the quotient, with both sides computed by
  the direct series fit;
* for the matrix-adapted flavor ("phi"), the order of every matrix entry and
  of the determinant is preserved after going modulo the form, as is the
  order of the declared hypersurface.

Over F_32003 a uniformly random form fails these checks with negligible
probability unless something structural is wrong, so persistent failure is
reported loudly instead of retried forever.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import InputError, NeedLargerTruncation, SuperficialSearchFailed
from .invariants import fit_h_from_pieces
from .model import TruncatedModule, build
from .presentation import Presentation, quotient_by_form

RETRY_BUDGET = 25


def derive_seed(master: int, *parts: int) -> int:
    h = (master + 0x9E3779B9) & 0xFFFFFFFFFFFFFFFF
    for part in parts:
        h ^= (part + 0x9E3779B97F4A7C15 + (h << 6) + (h >> 2)) & 0xFFFFFFFFFFFFFFFF
        h &= 0xFFFFFFFFFFFFFFFF
    return h


@dataclass
class VerifiedForm:
    """A linear form sum(coeffs[i] x_i) that passed verification, together
    with the record of what ran."""

    coeffs: tuple
    flavor: str
    checks: dict
    truncation: int


@dataclass
class ChainLevel:
    """One step of a superficial chain: the presentation and model at this
    level, the verified form chosen here (None at dimension zero), the
    quotient data, and the kernel series of the form."""

    pres: Presentation
    model: TruncatedModule
    form: VerifiedForm | None = None
    quotient: Presentation | None = None
    quotient_model: TruncatedModule | None = None
    lift: np.ndarray | None = None  # new_vars = lift . old_vars
    kernel_series: list = dc_field(default_factory=list)


def _orders_preserved(pres: Presentation, quotient: Presentation) -> bool:
    for row, qrow in zip(pres.phi, quotient.phi):
        for e, qe in zip(row, qrow):
            if e.ord() != qe.ord():
                return False
    if pres.ord_det() != quotient.ord_det():
        return False
    if pres.hypersurface is not None:
        if quotient.hypersurface is None:
            return False
        if pres.hypersurface.ord() != quotient.hypersurface.ord():
            return False
    return True


def verify_form(pres, model, coeffs, flavor):
    """Run the verification list for one candidate form.

    Returns (VerifiedForm, quotient pres, quotient model, lift, kernel
    series) or raises _Reject with the reason.
    """
    N = model.N
    try:
        quotient, lift = quotient_by_form(pres, coeffs)
    except InputError as exc:
        raise _Reject(f"degenerate quotient: {exc}") from exc
    if flavor == "phi" and not _orders_preserved(pres, quotient):
        raise _Reject("entry or determinant order dropped modulo the form")

    b = model.mult_kernel_series(coeffs)
    qmodel = build(quotient, N)

    # unconditional identity: graded piece of M = cumulative Hilbert function
    # of M/(form) minus the kernel dimension, at every level
    for n in range(N - 1):
        assert model.graded_piece(n) == qmodel.hilbert_function(n) - b[n], (
            "kernel-corrected length identity failed: the truncated model is "
            f"inconsistent at level {n}"
        )

    tail = [n for n, v in enumerate(b) if v != 0]
    if tail and tail[-1] > N - 4:
        raise _Reject("kernel series did not stabilize to zero within margin")

    r = pres.dim
    e_m = fit_h_from_pieces(model.hf, r).multiplicity
    if quotient.dim == 0:
        e_n = qmodel.total_length()
    else:
        e_n = fit_h_from_pieces(qmodel.hf, quotient.dim).multiplicity
    if e_m != e_n:
        raise _Reject(f"multiplicity not preserved ({e_m} -> {e_n})")

    checks = {
        "quotient_consistency": True,
        "kernel_series_stabilizes": True,
        "multiplicity_preserved": True,
    }
    if flavor == "phi":
        checks["orders_preserved"] = True
    form = VerifiedForm(tuple(int(c) % pres.p for c in coeffs), flavor, checks, N)
    return form, quotient, qmodel, lift, b


class _Reject(Exception):
    pass


def find_superficial(pres, model=None, seed=0, flavor="phi", retries=RETRY_BUDGET):
    """Draw random linear forms until one passes verification.

    A run of identical stabilization failures is treated as a truncation
    problem rather than bad luck and escalates, since genuine failures over a
    large prime field are vanishingly rare.
    """
    if pres.dim < 1:
        raise ValueError("dimension-zero module has no superficial quotient")
    if model is None:
        model = build(pres)
    rng = random.Random(derive_seed(seed, pres.nvars, model.N))
    p = pres.p
    failures = []
    stabilization_misses = 0
    for attempt in range(retries):
        coeffs = [rng.randrange(p) for _ in range(pres.nvars)]
        if all(c == 0 for c in coeffs):
            continue
        try:
            return verify_form(pres, model, coeffs, flavor)
        except _Reject as exc:
            failures.append((coeffs, str(exc)))
            if "stabilize" in str(exc):
                stabilization_misses += 1
                if stabilization_misses >= 3:
                    raise NeedLargerTruncation(
                        "repeated stabilization failures in the superficial search"
                    )
    raise SuperficialSearchFailed(
        f"no verified superficial form after {retries} attempts", failures
    )


def find_phi_superficial(pres, model=None, seed=0, retries=RETRY_BUDGET):
    """find_superficial with the matrix-adapted order checks switched on."""
    return find_superficial(pres, model, seed, flavor="phi", retries=retries)


def superficial_sequence(pres, length, flavor="phi", seed=0, N=None):
    """A verified sequence of the requested length, chosen and checked one
    form at a time against the successive quotients.

    Returns (forms, levels): the VerifiedForm records and the full chain of
    quotient presentations/models.
    """
    from .model import default_truncation

    levels = superficial_chain(
        pres, seed, N if N is not None else default_truncation(pres),
        length=length, flavor=flavor,
    )
    return [lvl.form for lvl in levels if lvl.form is not None], levels


def superficial_chain(pres, seed, N, length=None, flavor="phi"):
    """Quotient by verified forms down to the requested length (default: all
    the way to dimension zero).  Returns the list of ChainLevel records; the
    final level carries no form."""
    levels = []
    current = pres
    model = build(current, N)
    steps = pres.dim if length is None else length
    if steps > pres.dim:
        raise ValueError("chain longer than the dimension")
    for k in range(steps):
        form, quotient, qmodel, lift, b = find_superficial(
            current, model, derive_seed(seed, 101, k), flavor
        )
        levels.append(
            ChainLevel(
                pres=current,
                model=model,
                form=form,
                quotient=quotient,
                quotient_model=qmodel,
                lift=lift,
                kernel_series=b,
            )
        )
        current, model = quotient, qmodel
    levels.append(ChainLevel(pres=current, model=model))
    return levels


def lift_forms_to_base(levels) -> list:
    """Express every chain form in the coordinates of the base presentation.

    Level k lives in coordinates y = lift . x of level k-1 with the level-k
    variables being y_0..y_{v-2}; a form c over them lifts to lift^T (c, 0).
    """
    out = []
    for k, level in enumerate(levels):
        if level.form is None:
            break
        c = np.array(level.form.coeffs, dtype=np.int64)
        p = level.pres.p
        for j in range(k - 1, -1, -1):
            lifted = np.zeros(levels[j].pres.nvars, dtype=np.int64)
            lifted[: c.size] = c
            c = (levels[j].lift.T @ lifted) % p
        out.append(tuple(int(x) for x in c))
    return out
