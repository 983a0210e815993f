"""Sparse multivariate polynomial arithmetic over a prime field.

A polynomial is a dict mapping exponent tuples (one entry per variable) to
nonzero coefficients in [1, p).  The zero polynomial has an empty dict.  The
order (valuation at the origin) of a nonzero polynomial is the minimum total
degree of its terms; ord(0) = +inf, kept as a genuine sentinel.

All values are immutable by convention: every operation returns a fresh Poly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INF = math.inf

DEFAULT_CHAR = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field F_p.  p defaults to 32003: large enough that
    random linear forms are generic with overwhelming probability, small
    enough that products fit comfortably in int64."""

    characteristic: int = DEFAULT_CHAR

    def __post_init__(self):
        if not _is_prime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")

    @property
    def p(self) -> int:
        return self.characteristic


def term_key(exp):
    """Sort key: total degree, then lexicographic."""
    return (sum(exp), exp)


class Poly:
    """Sparse polynomial in ``nvars`` variables over F_p."""

    __slots__ = ("nvars", "p", "terms")

    def __init__(self, nvars: int, p: int, terms: dict):
        self.nvars = nvars
        self.p = p
        self.terms = terms  # exponent tuple -> coeff in [1, p)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars, p):
        return Poly(nvars, p, {})

    @staticmethod
    def const(nvars, p, c):
        c %= p
        return Poly(nvars, p, {} if c == 0 else {(0,) * nvars: c})

    @staticmethod
    def var(nvars, p, idx, power=1):
        if not 0 <= idx < nvars:
            raise ValueError(f"variable index {idx} out of range for nvars={nvars}")
        e = [0] * nvars
        e[idx] = power
        return Poly(nvars, p, {tuple(e): 1})

    @staticmethod
    def from_terms(nvars, p, items):
        terms = {}
        for exp, c in items:
            c = (terms.get(exp, 0) + c) % p
            if c:
                terms[exp] = c
            else:
                terms.pop(exp, None)
        return Poly(nvars, p, terms)

    # -- predicates / queries ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def ord(self):
        """Minimum total degree of a term; +inf for the zero polynomial."""
        if not self.terms:
            return INF
        return min(sum(e) for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: term_key(kv[0]))

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.p == other.p
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.p, tuple(self.sorted_terms())))

    def _check(self, other):
        if self.nvars != other.nvars or self.p != other.p:
            raise ValueError("polynomials live over different rings")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        p = self.p
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.nvars, p, out)

    def __neg__(self):
        p = self.p
        return Poly(self.nvars, p, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        p = self.p
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly(self.nvars, p, out)

    def scale(self, c):
        c %= self.p
        if c == 0:
            return Poly.zero(self.nvars, self.p)
        return Poly(self.nvars, self.p, {e: (v * c) % self.p for e, v in self.terms.items()})

    def pow(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.const(self.nvars, self.p, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def truncate(self, N: int):
        """Drop all terms of total degree >= N."""
        return Poly(self.nvars, self.p, {e: c for e, c in self.terms.items() if sum(e) < N})

    def evaluate(self, point):
        """Evaluate at a point in F_p^nvars."""
        p = self.p
        total = 0
        for e, c in self.terms.items():
            v = c
            for exp, x in zip(e, point):
                if exp:
                    v = (v * pow(int(x), exp, p)) % p
            total = (total + v) % p
        return total % p


def mul_truncated(a: Poly, b: Poly, N: int) -> Poly:
    """Product with all terms of total degree >= N discarded.

    Degree-filtering inside the loop keeps the cost proportional to the
    surviving terms.
    """
    a._check(b)
    p = a.p
    out = {}
    for e1, c1 in a.terms.items():
        d1 = sum(e1)
        if d1 >= N:
            continue
        for e2, c2 in b.terms.items():
            if d1 + sum(e2) >= N:
                continue
            e = tuple(x + y for x, y in zip(e1, e2))
            v = (out.get(e, 0) + c1 * c2) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return Poly(a.nvars, p, out)


def linear_substitute(poly: Poly, mat) -> Poly:
    """Substitute x_j -> sum_k mat[j][k] * x_k (an invertible linear change
    of variables, entries in F_p).  Exact, no truncation."""
    n = poly.nvars
    p = poly.p
    rows = [[int(mat[j][k]) % p for k in range(n)] for j in range(n)]
    # images of the variables as linear polynomials
    images = []
    for j in range(n):
        img = Poly.from_terms(
            n, p,
            [(tuple(1 if k == i else 0 for k in range(n)), rows[j][i]) for i in range(n)],
        )
        images.append(img)
    # cache powers of each image
    pow_cache = [dict() for _ in range(n)]

    def image_pow(j, k):
        cache = pow_cache[j]
        if k not in cache:
            cache[k] = images[j].pow(k)
        return cache[k]

    out = Poly.zero(n, p)
    for e, c in poly.terms.items():
        term = Poly.const(n, p, c)
        for j, exp in enumerate(e):
            if exp:
                term = term * image_pow(j, exp)
        out = out + term
    return out


def drop_last_variable(poly: Poly) -> Poly:
    """Set the last variable to 0 and remove it from the exponent vectors."""
    out = {}
    p = poly.p
    for e, c in poly.terms.items():
        if e[-1] == 0:
            out[e[:-1]] = c
    return Poly(poly.nvars - 1, p, out)


def extend_variables(poly: Poly, extra: int) -> Poly:
    """Reinterpret the polynomial in nvars + extra variables (appended)."""
    pad = (0,) * extra
    return Poly(poly.nvars + extra, poly.p, {e + pad: c for e, c in poly.terms.items()})


def divides(g: Poly, f: Poly) -> bool:
    """Exact single-divisor test: does g divide f in the polynomial ring?

    Greedy leading-term elimination in degree-lex order.  When the quotient
    exists the leading term of f is always divisible by the leading term of
    g, so the loop runs to zero; otherwise it hits an indivisible leading
    term and reports failure.
    """
    if g.is_zero():
        return f.is_zero()
    if f.is_zero():
        return True
    p = f.p

    def lead(poly):
        return max(poly.terms, key=term_key)

    lg = lead(g)
    cg_inv = pow(g.terms[lg], p - 2, p)
    rem = f
    while not rem.is_zero():
        lf = lead(rem)
        quot_exp = tuple(a - b for a, b in zip(lf, lg))
        if any(q < 0 for q in quot_exp):
            return False
        coeff = (rem.terms[lf] * cg_inv) % p
        mono = Poly(f.nvars, p, {quot_exp: coeff})
        rem = rem - mono * g
    return True


# ---------------------------------------------------------------------------
# Parsing.  Grammar (whitespace insignificant):
#   expr   := ['-'] term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := base ('^' uint)?
#   base   := int | var | '(' expr ')'
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message, pos):
        self.pos = pos  # 0-based offset into the input text
        super().__init__(f"{message} (at position {pos + 1})")


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.idx = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", text[i:j], i))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("name", text[i:j], i))
                i = j
                continue
            if ch in "+-*^()":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("end", "", len(text)))

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok


class _Parser:
    def __init__(self, text, var_names, field: FieldSpec):
        self.toks = _Tokenizer(text)
        self.vars = {name: i for i, name in enumerate(var_names)}
        self.nvars = len(var_names)
        self.p = field.p

    def parse(self) -> Poly:
        poly = self._expr()
        kind, _, pos = self.toks.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return poly

    def _expr(self) -> Poly:
        negate = False
        if self.toks.peek()[0] == "-":
            self.toks.next()
            negate = True
        poly = self._term()
        if negate:
            poly = -poly
        while self.toks.peek()[0] in ("+", "-"):
            op = self.toks.next()[0]
            rhs = self._term()
            poly = poly + rhs if op == "+" else poly - rhs
        return poly

    def _term(self) -> Poly:
        poly = self._factor()
        while self.toks.peek()[0] == "*":
            self.toks.next()
            poly = poly * self._factor()
        return poly

    def _factor(self) -> Poly:
        base = self._base()
        if self.toks.peek()[0] == "^":
            self.toks.next()
            kind, text, pos = self.toks.next()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer literal", pos)
            base = base.pow(int(text))
        return base

    def _base(self) -> Poly:
        kind, text, pos = self.toks.next()
        if kind == "int":
            return Poly.const(self.nvars, self.p, int(text))
        if kind == "name":
            if text not in self.vars:
                raise ParseError(f"unknown identifier {text!r}", pos)
            return Poly.var(self.nvars, self.p, self.vars[text])
        if kind == "(":
            poly = self._expr()
            kind2, _, pos2 = self.toks.next()
            if kind2 != ")":
                raise ParseError("expected ')'", pos2)
            return poly
        raise ParseError(f"unexpected token {text!r}" if text else "unexpected end of input", pos)


def parse(text: str, var_names, field: FieldSpec) -> Poly:
    """Parse a polynomial expression over the given variables."""
    return _Parser(text, list(var_names), field).parse()


def poly_to_str(poly: Poly, var_names) -> str:
    """Canonical text form; coefficients are printed balanced around 0 so
    that small negative values read naturally.  parse(poly_to_str(q)) == q.
    """
    if poly.is_zero():
        return "0"
    p = poly.p
    pieces = []
    for e, c in poly.sorted_terms():
        signed = c if c <= p // 2 else c - p
        neg = signed < 0
        mag = abs(signed)
        factors = []
        for name, exp in zip(var_names, e):
            if exp == 1:
                factors.append(name)
            elif exp > 1:
                factors.append(f"{name}^{exp}")
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        pieces.append(("-" if neg else "+", body))
    sign0, body0 = pieces[0]
    out = ("-" if sign0 == "-" else "") + body0
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
