"""Hilbert data of a matrix cokernel, step by step.

M = coker(phi) for a square matrix phi over F_p[x, y] with entries in the
maximal ideal at the origin.  Everything is computed exactly in the finite
quotients M/m^N M.
"""

from agmod import FieldSpec, Presentation, analyze, build, parse

field = FieldSpec()  # F_32003
variables = ("x", "y")


def matrix(rows):
    return tuple(tuple(parse(e, variables, field) for e in row) for row in rows)


# The triangular shape with a squared corner entry.
pres = Presentation(field, variables, matrix([["y^2", "0"], ["x^2", "y"]]))

print("basic invariants (mu, i, ord det, dim):", pres.basic_invariants())

# The truncated model carries the whole degree filtration of M; lengths of
# the graded pieces l(m^n M / m^{n+1} M) are exact dimension differences.
model = build(pres, 8)
print("graded pieces:", model.hf)
print("Hilbert function l(M/m^{n+1}M):", [model.hilbert_function(n) for n in range(6)])

# analyze() runs the full pipeline: superficial reduction to dimension zero,
# the h-polynomial by two independent routes, Hilbert coefficients, flags.
a = analyze(pres, seed=1)
print("h-polynomial:", a.h.to_str())
print("Hilbert coefficients e_i:", a.e)
print("Hilbert polynomial:", a.h.hilbert_polynomial_str())
print("flags:", a.flags)

# An Ulrich example (multiplicity equals the number of generators) and a
# module of minimal multiplicity next to it.
for rows, label in [
    ([["x", "y"], ["y", "x"]], "generic linear entries"),
    ([["y", "0"], ["0", "y^2"]], "diagonal y, y^2"),
]:
    b = analyze(Presentation(field, variables, matrix(rows)), seed=1)
    print(f"{label}: h = {b.h.to_str()}, ulrich = {b.flags['ulrich']}, "
          f"minimal multiplicity = {b.flags['minimal_multiplicity']}")
