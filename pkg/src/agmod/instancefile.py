"""Plain text instance files.

Format (whitespace-insensitive, '#' comments, keys in any order):

    characteristic: 32003        # optional, default 32003
    variables: x, y              # required
    matrix:                      # required; bracketed rows follow
      [y^2, 0]
      [x^2, y]
    hypersurface: y^3            # optional
    truncation: 12               # optional
    seed: 7                      # optional

Errors carry 1-based line/column positions.  serialize() round-trips, and is
also the dump format for failing-instance reproducers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .polynomials import DEFAULT_CHAR, FieldSpec, ParseError, parse, poly_to_str
from .presentation import Presentation


@dataclass
class InstanceFile:
    presentation: Presentation
    truncation: int | None = None
    seed: int | None = None


def _parse_expr(text, variables, field, line_no, col_offset):
    try:
        return parse(text, variables, field)
    except ParseError as exc:
        raise InputError(str(exc), line=line_no, col=col_offset + exc.pos + 1) from exc


def parse_instance(text: str) -> InstanceFile:
    characteristic = DEFAULT_CHAR
    variables = None
    matrix_rows = []  # (line_no, content)
    hypersurface = None  # (line_no, text, col)
    truncation = None
    seed = None
    in_matrix = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if in_matrix and stripped.startswith("["):
            matrix_rows.append((line_no, raw, stripped))
            continue
        in_matrix = False
        if ":" not in stripped:
            raise InputError("expected 'key: value'", line=line_no, col=1)
        key, _, value = stripped.partition(":")
        key = key.strip().lower()
        value = value.strip()
        if key == "characteristic":
            try:
                characteristic = int(value)
            except ValueError:
                raise InputError("characteristic must be an integer", line=line_no, col=1)
        elif key == "variables":
            variables = tuple(v.strip() for v in value.split(",") if v.strip())
            if not variables:
                raise InputError("no variables listed", line=line_no, col=1)
        elif key == "matrix":
            in_matrix = True
            if value:
                raise InputError("matrix rows go on the following lines", line=line_no, col=1)
        elif key == "hypersurface":
            hypersurface = (line_no, value, raw.index(value) if value in raw else 0)
        elif key == "truncation":
            truncation = int(value)
        elif key == "seed":
            seed = int(value)
        else:
            raise InputError(f"unknown key {key!r}", line=line_no, col=1)

    if variables is None:
        raise InputError("missing 'variables' section")
    if not matrix_rows:
        raise InputError("missing or empty 'matrix' section")
    try:
        field = FieldSpec(characteristic)
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    rows = []
    for line_no, raw, stripped in matrix_rows:
        if not (stripped.startswith("[") and stripped.endswith("]")):
            raise InputError("matrix row must be bracketed", line=line_no, col=1)
        body = stripped[1:-1]
        entries = []
        col = raw.index("[") + 2
        for piece in body.split(","):
            entries.append(_parse_expr(piece, variables, field, line_no, col))
            col += len(piece) + 1
        rows.append(tuple(entries))

    g = None
    if hypersurface is not None:
        line_no, expr, col = hypersurface
        g = _parse_expr(expr, variables, field, line_no, col + 1)

    pres = Presentation(field, variables, tuple(rows), g)
    return InstanceFile(pres, truncation, seed)


def load_instance(path: str) -> InstanceFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_instance(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def serialize_instance(pres: Presentation, truncation=None, seed=None) -> str:
    lines = [f"characteristic: {pres.p}", f"variables: {', '.join(pres.variables)}", "matrix:"]
    for row in pres.phi:
        lines.append("  [" + ", ".join(poly_to_str(e, pres.variables) for e in row) + "]")
    if pres.hypersurface is not None:
        lines.append(f"hypersurface: {poly_to_str(pres.hypersurface, pres.variables)}")
    if truncation is not None:
        lines.append(f"truncation: {truncation}")
    if seed is not None:
        lines.append(f"seed: {seed}")
    return "\n".join(lines) + "\n"
