"""Square matrix presentations phi with M = coker(phi).

The ring is the polynomial model of a regular local ring: k[x_0..x_d]
localized at the origin, with k = F_p.  Every length computed downstream
factors through finite quotients, so polynomial representatives are exact.

A presentation is minimal when all entries lie in the maximal ideal; then
t = mu(M), i(M) is the minimal entry order, det(phi) annihilates M (adjugate
identity) and ord(det phi) bounds the multiplicity data.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import InputError
from .linalg import invert
from .polynomials import (
    FieldSpec,
    Poly,
    divides,
    drop_last_variable,
    extend_variables,
    linear_substitute,
)


def det_poly(phi) -> Poly:
    """Determinant by Laplace expansion memoized over column subsets.

    Fine for the desk-scale sizes used here (t <= 6 or so).
    """
    t = len(phi)
    if t == 0:
        raise ValueError("empty matrix")
    some = phi[0][0]
    nvars, p = some.nvars, some.p
    memo = {(): Poly.const(nvars, p, 1)}

    def minor(cols):
        # determinant of rows t-len(cols)..t-1 on the given columns
        if cols in memo:
            return memo[cols]
        row = t - len(cols)
        acc = Poly.zero(nvars, p)
        for k, c in enumerate(cols):
            entry = phi[row][c]
            if entry.is_zero():
                continue
            rest = cols[:k] + cols[k + 1:]
            sub = minor(rest)
            term = entry * sub
            if k % 2:
                term = -term
            acc = acc + term
        memo[cols] = acc
        return acc

    return minor(tuple(range(t)))


@dataclass
class Presentation:
    """A validated presentation: field, ordered variable names, the square
    matrix phi, and an optional declared hypersurface equation g with
    g | det(phi)."""

    field: FieldSpec
    variables: tuple
    phi: tuple  # tuple of tuples of Poly
    hypersurface: Poly | None = None
    det: Poly = dc_field(init=False, repr=False)

    def __post_init__(self):
        t = len(self.phi)
        self.variables = tuple(self.variables)
        if t == 0 or any(len(row) != t for row in self.phi):
            raise InputError("matrix must be square and non-empty")
        nvars = len(self.variables)
        p = self.field.p
        for row in self.phi:
            for entry in row:
                if entry.nvars != nvars or entry.p != p:
                    raise InputError("matrix entry over the wrong ring")
                if not entry.is_zero() and entry.ord() < 1:
                    raise InputError(
                        "presentation is not minimal: an entry has a nonzero constant term"
                    )
        self.det = det_poly(self.phi)
        if self.det.is_zero():
            raise InputError("det(phi) = 0: the cokernel is not a torsion module")
        g = self.hypersurface
        if g is not None:
            if g.is_zero():
                raise InputError("declared hypersurface is zero")
            if g.ord() < 2:
                raise InputError("declared hypersurface must have order >= 2")
            if not divides(g, self.det):
                raise InputError("declared hypersurface does not divide det(phi)")

    # -- basic invariants ----------------------------------------------------

    @property
    def t(self) -> int:
        return len(self.phi)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def mu(self) -> int:
        return self.t

    @property
    def dim(self) -> int:
        # det != 0 forces codimension one; the cokernel of an injective
        # square matrix over the polynomial model is Cohen-Macaulay of
        # dimension (number of variables) - 1.
        return self.nvars - 1

    def entry_order(self) -> int:
        """i(M): minimum order over the matrix entries."""
        return int(min(e.ord() for row in self.phi for e in row))

    def column_orders(self):
        return [int(min(row[j].ord() for row in self.phi)) for j in range(self.t)]

    def ord_det(self) -> int:
        return int(self.det.ord())

    def annihilator_of_order(self, order: int) -> Poly | None:
        """A recorded hypersurface of the requested order, if one is known:
        either the declared g or det(phi) itself."""
        if self.hypersurface is not None and self.hypersurface.ord() == order:
            return self.hypersurface
        if self.ord_det() == order:
            return self.det
        return None

    def basic_invariants(self):
        """(mu, i(M), ord det, dim M)."""
        return (self.mu, self.entry_order(), self.ord_det(), self.dim)

    # -- transformations ------------------------------------------------------

    def substituted(self, mat) -> "Presentation":
        """Apply the invertible linear change of variables x_j -> sum mat[j][k] x_k."""
        invert(np.asarray(mat, dtype=np.int64), self.p)  # raises if singular
        phi = tuple(
            tuple(linear_substitute(e, mat) for e in row) for row in self.phi
        )
        g = linear_substitute(self.hypersurface, mat) if self.hypersurface else None
        return Presentation(self.field, self.variables, phi, g)

    def with_inert_variable(self, name: str) -> "Presentation":
        """Extend the ring by one fresh variable not appearing in phi."""
        if name in self.variables:
            raise InputError(f"variable name {name!r} already in use")
        phi = tuple(tuple(extend_variables(e, 1) for e in row) for row in self.phi)
        g = extend_variables(self.hypersurface, 1) if self.hypersurface else None
        return Presentation(self.field, self.variables + (name,), phi, g)


def quotient_by_form(pres: Presentation, coeffs):
    """The presentation of N = M/(form)M, where form = sum coeffs[i] * x_i.

    A linear change of coordinates sends the form to the last variable, which
    is then set to zero.  Returns (quotient presentation, lift matrix): the
    lift matrix T satisfies new_vars = T . old_vars, so a linear form c' over
    the quotient variables lifts to T^t . (c', 0) over the original ones.

    Raises InputError when the form is zero, when the declared hypersurface
    maps to zero (the form divides g), or when det becomes zero (the form is
    a zerodivisor witness); callers treat those as "reject this form".
    """
    p = pres.p
    v = pres.nvars
    c = [int(x) % p for x in coeffs]
    if len(c) != v or all(x == 0 for x in c):
        raise InputError("quotient form must be a nonzero linear form in the variables")
    if v == 1:
        raise InputError("cannot quotient a one-variable (dimension zero) presentation")
    # T: new variables in terms of old; last new variable equals the form
    j = max(k for k in range(v) if c[k] != 0)
    T = np.zeros((v, v), dtype=np.int64)
    for m in range(v - 1):
        T[m, m if m != j else v - 1] = 1
    T[v - 1] = c
    S = invert(T, p)  # old variables in terms of new
    sub = pres.substituted(S)
    phi = tuple(tuple(drop_last_variable(e) for e in row) for row in sub.phi)
    g = None
    if sub.hypersurface is not None:
        g = drop_last_variable(sub.hypersurface)
        if g.is_zero():
            raise InputError("form divides the declared hypersurface; rejected")
    quotient = Presentation(pres.field, pres.variables[:-1], phi, g)
    return quotient, T
