import pytest

from agmod.model import build
from agmod.polynomials import FieldSpec, parse
from agmod.presentation import Presentation
from agmod.superficial import (
    _Reject,
    find_superficial,
    lift_forms_to_base,
    superficial_chain,
    verify_form,
)

F = FieldSpec()


def mk(rows, vars_, g=None):
    phi = tuple(tuple(parse(e, vars_, F) for e in r) for r in rows)
    return Presentation(F, tuple(vars_), phi, parse(g, vars_, F) if g else None)


DIAG_YY = mk([["y", "0"], ["0", "y"]], ["x", "y"])
TRI_LIN = mk([["y^2", "0"], ["x", "y"]], ["x", "y"])


def test_x_is_superficial_on_diag():
    model = build(DIAG_YY, 8)
    form, quotient, qmodel, lift, b = verify_form(DIAG_YY, model, [1, 0], "phi")
    assert b == [0] * 7
    assert form.checks["orders_preserved"]
    assert quotient.nvars == 1


def test_y_fails_on_diag():
    # y divides every entry: det drops to zero in the quotient
    model = build(DIAG_YY, 8)
    with pytest.raises(_Reject):
        verify_form(DIAG_YY, model, [0, 1], "phi")


def test_x_fails_matrix_flavor_on_bordered_but_passes_module_flavor():
    model = build(TRI_LIN, 10)
    # modulo x the lower-left entry dies: entry order jumps from 1 to inf
    with pytest.raises(_Reject) as exc:
        verify_form(TRI_LIN, model, [1, 0], "phi")
    assert "order" in str(exc.value)
    form, quotient, qmodel, lift, b = verify_form(TRI_LIN, model, [1, 0], "module")
    assert form.checks["multiplicity_preserved"]


def test_generic_form_passes_matrix_flavor():
    model = build(TRI_LIN, 10)
    form, quotient, *_ = verify_form(TRI_LIN, model, [1, 7], "phi")
    assert form.checks["orders_preserved"]
    assert quotient.entry_order() == TRI_LIN.entry_order()
    assert quotient.ord_det() == TRI_LIN.ord_det()


def test_search_is_deterministic():
    model = build(TRI_LIN, 10)
    f1 = find_superficial(TRI_LIN, model, seed=42)[0]
    f2 = find_superficial(TRI_LIN, model, seed=42)[0]
    assert f1.coeffs == f2.coeffs
    f3 = find_superficial(TRI_LIN, model, seed=43)[0]
    assert f3.coeffs != f1.coeffs  # overwhelmingly likely with fresh draws


def test_chain_preserves_matrix_invariants():
    pres = mk(
        [["x", "0", "0"], ["0", "x^2", "0"], ["0", "0", "x^2"]],
        ["x", "y", "z"], "x^3",
    )
    levels = superficial_chain(pres, seed=3, N=9)
    assert len(levels) == 3  # dim 2 chain plus the dimension-zero tail
    for lvl in levels:
        assert lvl.pres.mu == 3
        assert lvl.pres.entry_order() == 1
        assert lvl.pres.ord_det() == 5
    # the terminal quotient is one-variable with exponents (1, 2, 2)
    from agmod.invariants import dvr_decomposition

    assert dvr_decomposition(levels[-1].pres).a == (1, 2, 2)


def test_chain_length_zero():
    levels = superficial_chain(DIAG_YY, seed=1, N=8, length=0)
    assert len(levels) == 1 and levels[0].form is None


def test_lifted_forms_are_independent_linear_forms():
    import numpy as np

    pres = mk(
        [["x", "y", "0"], ["x^2", "x^2", "0"], ["0", "0", "x^2"]],
        ["x", "y", "z"], "x^2*(x-y)",
    )
    levels = superficial_chain(pres, seed=5, N=9)
    forms = lift_forms_to_base(levels)
    assert len(forms) == 2 and all(len(f) == 3 for f in forms)
    mat = np.array(forms, dtype=np.int64)
    from agmod.linalg import rank

    assert rank(mat, F.p) == 2


def test_lifted_forms_reproduce_quotient_lengths():
    # quotienting by the lifted first form directly must match the chain's
    # first quotient level by level
    from agmod.presentation import quotient_by_form

    pres = mk([["y^2", "0"], ["x^2", "y"]], ["x", "y"])
    levels = superficial_chain(pres, seed=9, N=9)
    forms = lift_forms_to_base(levels)
    direct, _ = quotient_by_form(pres, forms[0])
    dm = build(direct, 8)
    qm = levels[0].quotient_model
    assert [dm.hilbert_function(n) for n in range(7)] == [
        qm.hilbert_function(n) for n in range(7)
    ]
