"""The built-in worked-example corpus with expected invariants.

Expected h-polynomials and depths for the two-variable rows and the diagonal
three-variable row are classical by hand; the two non-diagonal three-variable
rows carry reference values computed by this engine, cross-checked at two
truncation degrees and against the admissible shape lists of the
three-generator depth theorem (the first is the descent chain
3+z+z^2, 3+2z with depth 0; the second keeps 3+z+z^2 with depth 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import coordinate_change, unimodular_transform
from .polynomials import FieldSpec, parse
from .presentation import Presentation


@dataclass(frozen=True)
class CorpusRow:
    name: str
    variables: tuple
    matrix: tuple  # rows of expression strings
    hypersurface: str | None
    expected_h: tuple | None  # None: depth-only row
    expected_depth: int
    tags: tuple = ()


CORPUS = (
    CorpusRow("generic_2x2", ("x", "y"), ("[x, y]", "[y, x]"), None, (2,), 1, ("mu2",)),
    CorpusRow("diag_y_y2", ("x", "y"), ("[y, 0]", "[0, y^2]"), None, (2, 1), 1, ("mu2",)),
    CorpusRow("diag_y3_y3", ("x", "y"), ("[y^3, 0]", "[0, y^3]"), None, (2, 2, 2), 1),
    CorpusRow("triangular_sq", ("x", "y"), ("[y^2, 0]", "[x^2, y]"), None, (2, 1), 1, ("mu2",)),
    CorpusRow("triangular_lin", ("x", "y"), ("[y^2, 0]", "[x, y]"), None, (2, 0, 1), 0, ("mu2",)),
    CorpusRow("free_plus_cyclic", ("x", "y"), ("[y^3, 0]", "[0, y]"), "y^3", (2, 1, 1), 1, ("mu2",)),
    CorpusRow(
        "threevar_depth0", ("x", "y", "z"),
        ("[x, y, z]", "[x^2, x^2, 0]", "[0, 0, x^2]"),
        "x^2*(x-y)", (3, 0, 3, -1), 0, ("mu3",),
    ),
    CorpusRow(
        "threevar_depth1", ("x", "y", "z"),
        ("[x, y, 0]", "[x^2, x^2, 0]", "[0, 0, x^2]"),
        "x^2*(x-y)", (3, 1, 1), 1, ("mu3",),
    ),
    CorpusRow(
        "threevar_diag", ("x", "y", "z"),
        ("[x, 0, 0]", "[0, x^2, 0]", "[0, 0, x^2]"),
        "x^3", (3, 2), 2, ("mu3",),
    ),
    CorpusRow(
        "free_plus_two", ("x", "y"),
        ("[y^3, 0, 0]", "[0, y^2, 0]", "[0, 0, y]"), "y^3", (3, 2, 1), 1, ("mu3",),
    ),
    CorpusRow(
        "bordered_sq_r3", ("x", "y"),
        ("[y^2, 0, 0]", "[x^2, y, 0]", "[0, 0, y]"), None, (3, 1), 1,
    ),
    CorpusRow(
        "bordered_lin_r3", ("x", "y"),
        ("[y^2, 0, 0]", "[x, y, 0]", "[0, 0, y]"), None, (3, 0, 1), 0,
    ),
    CorpusRow(
        "bordered_sq_r4", ("x", "y"),
        ("[y^2, 0, 0, 0]", "[x^2, y, 0, 0]", "[0, 0, y, 0]", "[0, 0, 0, y]"),
        None, (4, 1), 1,
    ),
    CorpusRow(
        "bordered_lin_r4", ("x", "y"),
        ("[y^2, 0, 0, 0]", "[x, y, 0, 0]", "[0, 0, y, 0]", "[0, 0, 0, y]"),
        None, (4, 0, 1), 0,
    ),
    CorpusRow("one_generator", ("x", "y"), ("[y]",), None, (1,), 1),
    CorpusRow("diag_triple", ("x", "y"), ("[y, 0, 0]", "[0, y, 0]", "[0, 0, y^2]"), None, (3, 1), 1),
)

# rows whose full invariant record is recomputed at truncation N+2 during
# cmd_examples (the built-in stability sample)
STABILITY_SAMPLE = ("triangular_lin", "threevar_depth0", "bordered_sq_r3")


def row_presentation(row: CorpusRow, field: FieldSpec) -> Presentation:
    rows = []
    for line in row.matrix:
        inner = line.strip()
        assert inner.startswith("[") and inner.endswith("]")
        rows.append(tuple(parse(e, row.variables, field) for e in inner[1:-1].split(",")))
    g = parse(row.hypersurface, row.variables, field) if row.hypersurface else None
    return Presentation(field, row.variables, tuple(rows), g)


def corpus_presentations(field: FieldSpec, tag: str | None = None):
    return [
        row_presentation(row, field)
        for row in CORPUS
        if tag is None or tag in row.tags
    ]


def metamorphic_row(field: FieldSpec):
    """One transform of triangular_sq under a fixed seed: same expected
    invariants as the seed row."""
    base = row_presentation(CORPUS[3], field)
    variant = coordinate_change(unimodular_transform(base, 20240), 20240)
    return "transformed_triangular", variant, (2, 1), 1
