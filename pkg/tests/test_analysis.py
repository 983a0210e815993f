import pytest

from agmod.analysis import analyze
from agmod.corpus import CORPUS, metamorphic_row, row_presentation
from agmod.polynomials import FieldSpec, parse
from agmod.presentation import Presentation

F = FieldSpec()


def mk(rows, vars_, g=None):
    phi = tuple(tuple(parse(e, vars_, F) for e in r) for r in rows)
    return Presentation(F, tuple(vars_), phi, parse(g, vars_, F) if g else None)


def by_name(name):
    row = next(r for r in CORPUS if r.name == name)
    return row_presentation(row, F), row


@pytest.mark.parametrize("row", CORPUS, ids=lambda r: r.name)
def test_corpus_h_and_depth(row):
    a = analyze(row_presentation(row, F), seed=2)
    assert a.depth == row.expected_depth
    if row.expected_h is not None:
        assert a.h.h == row.expected_h


def test_metamorphic_row_matches_its_seed():
    name, pres, expected_h, expected_depth = metamorphic_row(F)
    a = analyze(pres, seed=2)
    assert a.h.h == expected_h and a.depth == expected_depth


def test_depth_zero_instance_has_nonzero_closure_deviation():
    pres, _ = by_name("triangular_lin")
    a = analyze(pres, seed=1)
    assert a.depth == 0 and a.rr.r_poly == [1]
    assert a.rr.h_tilde.h != a.h.h


def test_depth_positive_instance_has_adic_closure():
    pres, _ = by_name("triangular_sq")
    a = analyze(pres, seed=1)
    assert a.depth == 1 and a.rr.r_poly == []
    assert a.rr.h_tilde.h == a.h.h


def test_descent_chain_of_the_hard_threevar_instance():
    pres, _ = by_name("threevar_depth0")
    a = analyze(pres, seed=1)
    assert [hl.h for hl in a.h_by_level] == [(3, 0, 3, -1), (3, 1, 1), (3, 2)]
    assert a.sally == [False, False]
    assert a.e == [5, 3, 0]


def test_inert_variable_raises_depth_keeps_h():
    pres, _ = by_name("threevar_depth0")
    ext = pres.with_inert_variable("w")
    a = analyze(ext, seed=1, with_rr=False, with_seq=False)
    assert a.h.h == (3, 0, 3, -1)
    assert a.dim == 3 and a.depth == 1


def test_intersection_defects():
    # Cohen-Macaulay instance: all defects vanish
    pres, _ = by_name("threevar_diag")
    a = analyze(pres, seed=1)
    vv, delta = a.levels[0].model.intersection_defect_series(a.base_forms, a.red)
    assert delta == 0
    # derived: the dimension-three extension of the depth-zero instance has
    # total defect two, stable under truncation growth
    pres0, _ = by_name("threevar_depth0")
    ext = pres0.with_inert_variable("w")
    a3 = analyze(ext, seed=1, with_rr=False, with_seq=False)
    vv3, delta3 = a3.levels[0].model.intersection_defect_series(a3.base_forms, a3.red)
    assert delta3 == 2 and vv3[:1] == [0]


def test_defects_vanish_below_entry_order():
    # e = mu*i + 1 forces the first i defects to vanish
    pres = mk([["y^3", "0"], ["x^3", "y^2"]], ["x", "y"])
    a = analyze(pres, seed=1)
    assert a.e[0] == a.mu * a.entry_order + 1 and a.entry_order == 2
    vv, _ = a.levels[0].model.intersection_defect_series(a.base_forms, a.red)
    assert vv[: a.entry_order] == [0, 0]


def test_stability_against_larger_truncation():
    for name in ("triangular_lin", "threevar_depth1", "free_plus_two"):
        pres, _ = by_name(name)
        a = analyze(pres, seed=4, check_stability=True)
        assert a.checks["truncation_stability"]


def test_one_generator_paths():
    a = analyze(mk([["y^3"]], ["x", "y"]), seed=1)
    assert a.h.h == (1, 1, 1) and a.cohen_macaulay and a.red == 2
    b = analyze(mk([["y"]], ["x", "y", "z"]), seed=1)
    assert b.h.h == (1,) and b.depth == 2 == b.dim


def test_dimension_zero_instance():
    a = analyze(mk([["y^2", "0"], ["0", "y^3"]], ["y"]), seed=1)
    assert a.dim == 0 and a.depth == 0 and a.cohen_macaulay
    assert a.h.h == (2, 2, 1) and a.red == 2 and a.dvr.a == (2, 3)


def test_identity_checks_recorded():
    pres, _ = by_name("threevar_depth1")
    a = analyze(pres, seed=3)
    for key in (
        "h_dual_route",
        "coefficient_transfer",
        "dim1_shape",
        "dim1_cokernel_series",
        "multiplicity_bound",
        "dvr_total",
        "closure_decomposition",
        "closure_depth_boundary",
        "closure_defect_monotone",
        "first_level_lengths",
        "five_term_alternating_sums",
        "boundary_series",
    ):
        assert a.checks.get(key) is True, key


def test_flags():
    a = analyze(mk([["x", "y"], ["y", "x"]], ["x", "y"]), seed=1)
    assert a.flags == {
        "ulrich": True,
        "minimal_multiplicity": True,
        "g_cohen_macaulay": True,
    }
    b = analyze(mk([["y^2", "0"], ["x^2", "y"]], ["x", "y"]), seed=1)
    assert not b.flags["ulrich"] and b.flags["minimal_multiplicity"]


def test_hilbert_coefficient_transfer_along_chain():
    pres, _ = by_name("threevar_depth0")
    a = analyze(pres, seed=6)
    h0, h1, h2 = a.h_by_level
    total_b0 = sum(a.levels[0].kernel_series)
    assert h0.e(0) == h1.e(0) == h2.e(0)
    assert h0.e(1) == h1.e(1)
    assert h0.e(2) == h1.e(2) - total_b0  # dimension two: (-1)^r = +1
