"""Length identities coming from the standard exact sequences that relate a
module, a superficial quotient, and the reduction generated by a maximal
superficial sequence.

Only lengths are computed (never the maps); each sequence is checked by a
vanishing alternating sum, with every term produced independently in the
truncated models.
"""

from __future__ import annotations

import numpy as np

from .errors import NeedLargerTruncation
from .linalg import rank as mat_rank
from .model import TruncatedModule


def _colon_length(model, n, forms, below):
    """l((m^n M : forms)/m^below M)."""
    S = model.colon_subspace(model.filtration_subspace(n), forms)
    return S.dim - model.q_ge[below]


def _reduction_quotient(model, n, forms):
    """l(m^{n+1} M / (forms) m^n M); callers certify the reduction first."""
    return model.q_ge[n + 1] - model.image_module_rank(forms, n)


def check_dim2_sequence(model, form_x, form_y, qmodel, qform, red, qred):
    """The five-term sequence in dimension two, for J = (x, y):

    0 -> (m^n M:J)/m^{n-1}M -> (m^n M:x)/m^{n-1}M -> (m^{n+1}M:x)/m^n M
      -> m^{n+1}M/J m^n M -> m^{n+1}Mbar / y m^n Mbar -> 0   (Mbar = M/xM)

    Returns the list of alternating sums (one per level); all must vanish.
    """
    sums = []
    n_hi = model.N - 3
    for n in range(1, n_hi + 1):
        l1 = _colon_length(model, n, [form_x, form_y], n - 1)
        l2 = _colon_length(model, n, [form_x], n - 1)
        l3 = _colon_length(model, n + 1, [form_x], n)
        l4 = _reduction_quotient(model, n, [form_x, form_y])
        l5 = qmodel.q_ge[n + 1] - qmodel.image_module_rank([qform], n)
        sums.append(l1 - l2 + l3 - l4 + l5)
    return sums


def check_first_level_sequence(model, forms, qmodel, qforms):
    """For any positive dimension, with J spanned by the full sequence and
    N = M/x_1 M:

        l(m^2 M / J m M) = l((m^2 M : x_1)/m M) + l(m^2 N / Jbar m N).

    In dimension one Jbar is empty and the last term is l(m^2 N).
    """
    lhs = _reduction_quotient(model, 1, forms)
    colon = _colon_length(model, 2, [forms[0]], 1)
    if qforms:
        last = qmodel.q_ge[2] - qmodel.image_module_rank(qforms, 1)
    else:
        qmodel.nilpotency_index()  # certify the quotient is nilpotent
        last = qmodel.q_ge[2]
    return lhs, colon + last


def check_dim1_sequence(model, form, qmodel):
    """Dimension one, N = M/xM (dimension zero):

        l(m^2 M / x m^2 M) = l((m^2 M : x)/m^2 M) + l(m^2 N).
    """
    lhs = model.q_ge[2] - model.image_module_rank([form], 2)
    colon = _colon_length(model, 2, [form], 2)
    qmodel.nilpotency_index()
    rhs = colon + qmodel.q_ge[2]
    return lhs, rhs


def run_sequence_checks(levels, base_forms, model, red) -> dict:
    """Run every sequence identity applicable to the dimension at hand.
    Returns {name: bool}; the values are also asserted by the caller."""
    out = {}
    dim = levels[0].pres.dim
    if dim >= 1:
        qmodel = levels[0].quotient_model
        if dim >= 2:
            qforms = _forms_at_level(levels, 1)
            lhs, rhs = check_first_level_sequence(model, base_forms, qmodel, qforms)
        else:
            lhs, rhs = check_first_level_sequence(model, base_forms, qmodel, [])
        out["first_level_lengths"] = lhs == rhs
    if dim == 1:
        lhs, rhs = check_dim1_sequence(model, base_forms[0], levels[0].quotient_model)
        out["colon_splitting_dim1"] = lhs == rhs
    if dim == 2:
        qmodel = levels[0].quotient_model
        qform = levels[1].form.coeffs
        qred = qmodel.reduction_number([qform])
        sums = check_dim2_sequence(
            model, base_forms[0], base_forms[1], qmodel, qform, red, qred
        )
        out["five_term_alternating_sums"] = all(s == 0 for s in sums)
    return out


def _forms_at_level(levels, target: int):
    """Chain forms below ``target`` expressed in the level-``target``
    coordinates (used for the image of the reduction in a quotient)."""
    out = []
    for k in range(target, len(levels)):
        lvl = levels[k]
        if lvl.form is None:
            break
        c = np.array(lvl.form.coeffs, dtype=np.int64)
        p = lvl.pres.p
        for j in range(k - 1, target - 1, -1):
            lifted = np.zeros(levels[j].pres.nvars, dtype=np.int64)
            lifted[: c.size] = c
            c = (levels[j].lift.T @ lifted) % p
        out.append(tuple(int(x) for x in c))
    return out


def boundary_series_check(model, base_forms, mu: int, red: int) -> dict:
    """Graded pieces of G(M) modulo the initial forms of a maximal sequence,
    over a hypersurface of multiplicity three: the series is
    mu + alpha z + beta z^2 with beta <= alpha <= mu, and nothing in degree
    three (the reduction number is at most two)."""
    pieces = model.boundary_pieces(base_forms, 4)
    return {
        "pieces": pieces,
        "shape_ok": pieces[0] == mu
        and pieces[2] <= pieces[1] <= mu
        and pieces[3] == 0
        and red <= 2,
    }
