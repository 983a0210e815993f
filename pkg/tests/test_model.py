import numpy as np
import pytest

from agmod.errors import InputError, NeedLargerTruncation
from agmod.linalg import Subspace
from agmod.model import TruncatedModule, build, verify_truncation_stability
from agmod.polynomials import FieldSpec, Poly, parse
from agmod.presentation import Presentation, quotient_by_form

F = FieldSpec()


def mk(rows, vars_, g=None):
    phi = tuple(tuple(parse(e, vars_, F) for e in r) for r in rows)
    return Presentation(F, tuple(vars_), phi, parse(g, vars_, F) if g else None)


ONE_GEN = mk([["y"]], ["x", "y"])
TRI_SQ = mk([["y^2", "0"], ["x^2", "y"]], ["x", "y"])     # h = 2 + z
TRI_LIN = mk([["y^2", "0"], ["x", "y"]], ["x", "y"])      # h = 2 + z^2
DIAG_YY = mk([["y", "0"], ["0", "y"]], ["x", "y"])        # Ulrich


def test_one_generator_hilbert_function():
    tm = TruncatedModule(ONE_GEN, 4)
    assert [tm.hilbert_function(n) for n in range(4)] == [1, 2, 3, 4]
    with pytest.raises(NeedLargerTruncation):
        tm.hilbert_function(4)


def test_graded_pieces_of_the_two_triangular_shapes():
    assert TruncatedModule(TRI_SQ, 4).hf[:3] == [2, 3, 3]
    assert TruncatedModule(TRI_LIN, 4).hf[:3] == [2, 2, 3]
    assert TruncatedModule(TRI_SQ, 4).hilbert_function(1) == 5


def test_hilbert_function_monotone_on_random_instances():
    from agmod.families import random_presentation

    for k in range(8):
        pres = random_presentation(F, 900 + k)
        tm = build(pres)
        values = [tm.hilbert_function(n) for n in range(tm.N - 1)]
        assert values == sorted(values)


def test_truncation_stability_assertion():
    verify_truncation_stability(TRI_SQ, 6)
    verify_truncation_stability(TRI_LIN, 6)


def test_W_chain_contract():
    tm = TruncatedModule(TRI_LIN, 5)
    W = [tm.W(n) for n in range(tm.N + 1)]
    assert W[0].dim == tm.a
    assert W[tm.N].dim == tm.rel_rank
    for n in range(tm.N):
        assert W[n].contains_space(W[n + 1])
        assert W[n].quotient_dim(W[n + 1]) == tm.hf[n]


def test_presentation_invariants_enforced():
    with pytest.raises(InputError):
        mk([["y", "0"], ["0", "x + 1"]], ["x", "y"])  # unit entry
    with pytest.raises(InputError):
        mk([["y", "y"], ["y", "y"]], ["x", "y"])  # det = 0
    with pytest.raises(InputError):
        mk([["y^2", "0"], ["0", "y^2"]], ["x", "y"], g="x^3")  # g does not divide det


def test_quotient_by_form_examples():
    q, _ = quotient_by_form(DIAG_YY, [1, 0])
    assert q.nvars == 1 and q.t == 2
    from agmod.invariants import dvr_decomposition

    assert dvr_decomposition(q).a == (1, 1)
    # the quotient of M by a form is generated by mu(M) elements
    tm = build(q, 5)
    assert tm.hilbert_function(0) == DIAG_YY.mu
    with pytest.raises(InputError):
        quotient_by_form(DIAG_YY, [0, 0])
    # a form dividing the declared hypersurface is rejected
    pres = mk([["y^2", "0"], ["0", "y^2"]], ["x", "y"], g="y^2")
    with pytest.raises(InputError):
        quotient_by_form(pres, [0, 1])


def test_kernel_series_vanishes_for_regular_form():
    tm = TruncatedModule(DIAG_YY, 8)
    assert tm.mult_kernel_series([1, 0]) == [0] * 7


def test_kernel_series_zeroth_term_always_zero():
    from agmod.families import random_presentation

    for k in range(6):
        pres = random_presentation(F, 300 + k, max_vars=3)
        if pres.dim < 1:
            continue
        tm = build(pres)
        assert tm.mult_kernel_series([3, 1, 4][: pres.nvars])[0] == 0


def test_kernel_series_positive_for_depth_zero_instance():
    # derived: the same nonzero series at two truncations
    b10 = TruncatedModule(TRI_LIN, 10).mult_kernel_series([1, 7])
    b12 = TruncatedModule(TRI_LIN, 12).mult_kernel_series([1, 7])
    assert b10 == b12[: len(b10)]
    assert any(v > 0 for v in b10)


def test_kernel_series_matches_direct_colon_computation():
    # independent oracle: solve the colon subspace and take dimensions
    tm = TruncatedModule(TRI_LIN, 8)
    form = (1, 7)
    series = tm.mult_kernel_series(form)
    for n in range(tm.N - 1):
        colon = tm.colon_subspace(tm.filtration_subspace(n + 1), [form])
        assert series[n] == colon.dim - tm.q_ge[n]


def test_quotient_consistency_at_every_level():
    # graded piece of M = Hilbert function of M/(form) minus kernel term
    for pres, form in [(TRI_SQ, (5, 3)), (TRI_LIN, (2, 9)), (DIAG_YY, (1, 0))]:
        tm = TruncatedModule(pres, 9)
        quotient, _ = quotient_by_form(pres, form)
        qm = TruncatedModule(quotient, 9)
        b = tm.mult_kernel_series(form)
        for n in range(8):
            assert tm.graded_piece(n) == qm.hilbert_function(n) - b[n]


def test_reduction_number_examples():
    tm = TruncatedModule(DIAG_YY, 8)
    assert tm.reduction_number([(1, 0)]) == 0  # Ulrich
    tm2 = TruncatedModule(TRI_SQ, 8)
    assert tm2.reduction_number([(1, 11)]) == 1  # minimal multiplicity
    tm3 = TruncatedModule(TRI_LIN, 8)
    assert tm3.reduction_number([(1, 5)]) == 2


def test_cokernel_series_examples():
    # Ulrich: all zero
    tm = TruncatedModule(DIAG_YY, 8)
    red = tm.reduction_number([(1, 0)])
    assert tm.mult_cokernel_series((1, 0), red) == [0] * 7
    # minimal multiplicity: zero from level one on
    tm2 = TruncatedModule(TRI_SQ, 8)
    form = (1, 11)
    red2 = tm2.reduction_number([form])
    rho = tm2.mult_cokernel_series(form, red2)
    assert rho[0] == 1 and all(v == 0 for v in rho[1:])
    # bordered shape with h = mu(1+...+z^{i-1}) + z^s: rho is 1 on [i-1, s-1]
    tm3 = TruncatedModule(TRI_LIN, 8)
    form3 = (1, 5)
    red3 = tm3.reduction_number([form3])
    rho3 = tm3.mult_cokernel_series(form3, red3)
    assert rho3[0] == 1 and rho3[1] == 1 and all(v == 0 for v in rho3[2:])


def test_dimension_zero_helpers():
    q, _ = quotient_by_form(TRI_SQ, [1, 4])
    tm = TruncatedModule(q, 7)
    assert tm.total_length() == 3
    assert tm.nilpotency_index() == 2
    small = TruncatedModule(q, 2)
    with pytest.raises(NeedLargerTruncation):
        small.nilpotency_index()


def test_class_vector_detects_annihilator():
    tm = TruncatedModule(TRI_SQ, 8)
    g = parse("y^3", ["x", "y"], F)  # det, kills the module
    zero = Poly.zero(2, F.p)
    assert not tm.class_vector([g, zero]).any()
    assert not tm.class_vector([zero, g]).any()
    assert tm.class_vector([parse("y^2", ["x", "y"], F), zero]).any()


def test_filtration_subspace_is_coordinate_block():
    tm = TruncatedModule(TRI_LIN, 6)
    for n in range(tm.N + 1):
        S = tm.filtration_subspace(n)
        assert S.dim == tm.q_ge[n]
        assert isinstance(S, Subspace)
        for row in S.basis:
            nz = np.nonzero(row)[0]
            assert len(nz) == 1 and row[nz[0]] == 1
