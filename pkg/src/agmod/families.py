"""Seeded generators of presentation families.

Ground truth must be known or machine-checkable, so families are built from
three ingredients whose effect on the invariants is understood:

* diagonal (and block-diagonal) profiles, where everything is a direct sum
  of one-generator modules;
* invariance transforms of a seed presentation: change of coordinates by a
  random invertible linear map, and row/column operations by matrices that
  are invertible over the local ring (unit constant term).  These preserve
  the module up to isomorphism, hence every invariant;
* an inert extra variable, which raises the dimension by one: the h-data is
  unchanged and the depth of the associated graded module grows by exactly
  one (the new initial form is a regular element on it).

Sampling matrix factorizations over a *prescribed* hypersurface is hard, so
random instances record g = det(phi) or a declared divisor instead.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import InputError
from .linalg import invert
from .polynomials import FieldSpec, Poly
from .presentation import Presentation
from .superficial import derive_seed


def _random_invertible(rng, n, p):
    while True:
        mat = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        try:
            invert(np.array(mat, dtype=np.int64), p)
            return mat
        except ValueError:
            continue


def _random_poly(rng, nvars, p, min_ord, max_deg, terms):
    """Random polynomial with ord >= min_ord (possibly zero)."""
    items = []
    exps = _exps_in_range(nvars, min_ord, max_deg)
    for _ in range(terms):
        e = exps[rng.randrange(len(exps))]
        items.append((e, rng.randrange(1, p)))
    return Poly.from_terms(nvars, p, items)


def _exps_in_range(nvars, lo, hi):
    out = []

    def gen(prefix, remaining, total):
        if remaining == 0:
            if lo <= total <= hi:
                out.append(tuple(prefix))
            return
        for e in range(hi - total + 1):
            gen(prefix + [e], remaining - 1, total + e)

    gen([], nvars, 0)
    return out


def coordinate_change(pres: Presentation, seed: int) -> Presentation:
    rng = random.Random(derive_seed(seed, 11))
    mat = _random_invertible(rng, pres.nvars, pres.p)
    return pres.substituted(mat)


def unimodular_transform(pres: Presentation, seed: int) -> Presentation:
    """U . phi . V with U, V invertible over the local ring: random unit
    constant part plus a sparse higher-order perturbation."""
    rng = random.Random(derive_seed(seed, 13))
    p, t, nv = pres.p, pres.t, pres.nvars

    def unit_matrix():
        const = _random_invertible(rng, t, p)
        rows = []
        for i in range(t):
            row = []
            for j in range(t):
                entry = Poly.const(nv, p, const[i][j])
                if rng.random() < 0.4:
                    entry = entry + _random_poly(rng, nv, p, 1, 2, 1)
                row.append(entry)
            rows.append(row)
        return rows

    U, V = unit_matrix(), unit_matrix()

    def matmul_poly(A, B):
        out = []
        for i in range(t):
            row = []
            for j in range(t):
                acc = Poly.zero(nv, p)
                for k in range(t):
                    acc = acc + A[i][k] * B[k][j]
                row.append(acc)
            out.append(row)
        return out

    phi = matmul_poly(matmul_poly(U, [list(r) for r in pres.phi]), V)
    return Presentation(pres.field, pres.variables, tuple(map(tuple, phi)), pres.hypersurface)


def metamorphic_variants(pres: Presentation, count: int, seed: int,
                         allow_inert: bool = False):
    """Invariance transforms of a seed; with allow_inert, some variants gain
    an inert variable first (dimension +1, depth +1, same h)."""
    out = []
    for k in range(count):
        rng = random.Random(derive_seed(seed, 17, k))
        base = pres
        inert = False
        if allow_inert and rng.random() < 0.5:
            fresh = next(n for n in ("w", "v", "u", "t0") if n not in base.variables)
            base = base.with_inert_variable(fresh)
            inert = True
        try:
            variant = unimodular_transform(base, derive_seed(seed, 19, k))
            variant = coordinate_change(variant, derive_seed(seed, 23, k))
        except InputError:
            continue
        out.append((variant, inert))
    return out


def diagonal_profile(field: FieldSpec, var_names, exponents, extra_subdiag=None,
                     subdiag_order: int | None = None) -> Presentation:
    """diag(y^{a_1}, ..., y^{a_t}) in the last variable, optionally with one
    subdiagonal entry x^c (the bordered shape realizing s > i(M))."""
    nv = len(var_names)
    p = field.p
    t = len(exponents)
    rows = [[Poly.zero(nv, p) for _ in range(t)] for _ in range(t)]
    for k, a in enumerate(exponents):
        rows[k][k] = Poly.var(nv, p, nv - 1, a)
    if extra_subdiag is not None:
        i, j = extra_subdiag
        rows[i][j] = Poly.var(nv, p, 0, subdiag_order)
    return Presentation(field, tuple(var_names), tuple(map(tuple, rows)))


def generate_family(spec: dict, count: int, seed: int):
    """Deterministic family from a declarative spec:

    {"kind": "diag", "field": F, "vars": [...], "profile": [a_1..a_t],
     "subdiag": [i, j, order]?}                     -- one diagonal shape
    {"kind": "transform", "seed_pres": P, "inert": bool?}  -- variants of P
    {"kind": "random", "field": F, "max_t": 3, "max_vars": 3}

    Instances whose determinant degenerates are discarded and regenerated,
    so the returned list always has ``count`` members.
    """
    kind = spec["kind"]
    if kind == "diag":
        sub = spec.get("subdiag")
        base = diagonal_profile(
            spec["field"], tuple(spec["vars"]), tuple(spec["profile"]),
            extra_subdiag=tuple(sub[:2]) if sub else None,
            subdiag_order=sub[2] if sub else None,
        )
        out = [base]
        out.extend(v for v, _ in metamorphic_variants(base, count - 1, seed))
        return out[:count]
    if kind == "transform":
        base = spec["seed_pres"]
        out = [base]
        out.extend(
            v for v, _ in metamorphic_variants(
                base, count - 1, seed, allow_inert=spec.get("inert", False)
            )
        )
        return out[:count]
    if kind == "random":
        return [
            random_presentation(
                spec["field"], derive_seed(seed, 43, k),
                spec.get("max_t", 3), spec.get("max_vars", 3),
            )
            for k in range(count)
        ]
    raise InputError(f"unknown family kind {kind!r}")


def random_presentation(field: FieldSpec, seed: int, max_t=3, max_vars=3):
    """Random small instance: entry orders drawn from a profile biased
    toward the interesting low-order range; det != 0 enforced by retry."""
    rng = random.Random(derive_seed(seed, 29))
    p = field.p
    names = ("x", "y", "z", "w")
    for _ in range(50):
        t = rng.randint(1, max_t)
        nv = rng.randint(1, max_vars)
        rows = []
        for i in range(t):
            row = []
            for j in range(t):
                roll = rng.random()
                if roll < 0.2 and i != j:
                    entry = Poly.zero(nv, p)
                elif roll < 0.75:
                    entry = _random_poly(rng, nv, p, 1, rng.randint(1, 2), rng.randint(1, 2))
                else:
                    entry = _random_poly(rng, nv, p, 2, rng.randint(2, 3), rng.randint(1, 2))
                row.append(entry)
            rows.append(row)
        try:
            return Presentation(field, names[:nv], tuple(map(tuple, rows)))
        except InputError:
            continue
    raise InputError("random family generator kept producing det = 0")
