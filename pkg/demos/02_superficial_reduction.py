"""Reduction along verified superficial forms.

A random linear form is accepted only after its finite consequences check
out: the kernel-corrected length identity at every level, a kernel series
stabilizing to zero, preserved multiplicity, and (for the matrix-adapted
flavor) preserved entry and determinant orders.  The h-polynomial then obeys

    h_M(z) = h_N(z) - (1-z)^r b(z),        N = M/(form)M,

where b is the kernel series of the multiplication map.
"""

from agmod import FieldSpec, Presentation, analyze, parse
from agmod.invariants import dvr_decomposition
from agmod.superficial import lift_forms_to_base, superficial_chain

field = FieldSpec()
variables = ("x", "y", "z")


def matrix(rows):
    return tuple(tuple(parse(e, variables, field) for e in row) for row in rows)


pres = Presentation(
    field, variables,
    matrix([["x", "y", "z"], ["x^2", "x^2", "0"], ["0", "0", "x^2"]]),
    parse("x^2*(x-y)", variables, field),
)

levels = superficial_chain(pres, seed=1, N=9)
for k, lvl in enumerate(levels):
    label = f"M_{k} ({lvl.pres.nvars} vars, dim {lvl.pres.dim})"
    if lvl.form is not None:
        print(f"{label}: form {lvl.form.coeffs}, kernel series {lvl.kernel_series}")
    else:
        print(f"{label}: dimension zero, graded pieces {lvl.model.hf[:4]}")

# In the base coordinates the chain forms give a maximal superficial
# sequence; the final quotient is one-variable and splits into cyclic pieces
# whose exponents are the elementary divisors.
print("forms in base coordinates:", lift_forms_to_base(levels))
print("elementary divisors at the end of the chain:",
      dvr_decomposition(levels[-1].pres).a)

# The h-polynomials along the chain, reconstructed by the recursion (the
# direct series fit is cross-checked internally on every level).
a = analyze(pres, seed=1)
for k, h in enumerate(a.h_by_level):
    print(f"h of M_{k}:", h.to_str())
print("descent flags (kernel series vanished):", a.sally)
