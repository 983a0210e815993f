"""Invariant reports: one record per instance, rendered as a fixed-width
table or as deterministic JSON (sorted keys, fixed separators), which is the
machine contract used by the tests."""

from __future__ import annotations

import json

from .analysis import Analysis
from .invariants import HData


def report_dict(a: Analysis) -> dict:
    rec = {
        "characteristic": a.pres.p,
        "variables": list(a.pres.variables),
        "mu": a.mu,
        "i": a.entry_order,
        "ord_det": a.ord_det,
        "dim": a.dim,
        "h": list(a.h.h),
        "h_str": a.h.to_str(),
        "e": a.e,
        "hilbert_polynomial": a.h.hilbert_polynomial_str(),
        "reduction_number": a.red,
        "depth_g": a.depth,
        "elementary_divisors": list(a.dvr.a),
        "r_poly": list(a.rr.r_poly) if a.rr is not None else None,
        "h_tilde": list(a.rr.h_tilde.h) if a.rr is not None else None,
        "flags": {
            "ulrich": a.flags["ulrich"],
            "minimal_multiplicity": a.flags["minimal_multiplicity"],
            "g_cohen_macaulay": a.flags["g_cohen_macaulay"],
        },
        "seed": a.seed,
        "truncation": a.truncation,
        "forms": [list(f) for f in a.base_forms],
        "checks": {k: bool(v) for k, v in sorted(a.checks.items())},
    }
    return rec


def to_json(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n"


def to_human(rec: dict) -> str:
    rows = [
        ("field", f"F_{rec['characteristic']}"),
        ("variables", ", ".join(rec["variables"])),
        ("mu", rec["mu"]),
        ("i(M)", rec["i"]),
        ("ord det", rec["ord_det"]),
        ("dim M", rec["dim"]),
        ("h-polynomial", rec["h_str"]),
        ("e_i", ", ".join(f"e{k}={v}" for k, v in enumerate(rec["e"]))),
        ("Hilbert polynomial", rec["hilbert_polynomial"]),
        ("reduction number", rec["reduction_number"]),
        ("depth G(M)", rec["depth_g"]),
        ("elementary divisors", ", ".join(map(str, rec["elementary_divisors"]))),
        ("closure deviation r(z)", _poly_str(rec["r_poly"])),
        ("ulrich", _yn(rec["flags"]["ulrich"])),
        ("minimal multiplicity", _yn(rec["flags"]["minimal_multiplicity"])),
        ("G(M) Cohen-Macaulay", _yn(rec["flags"]["g_cohen_macaulay"])),
        ("truncation", rec["truncation"]),
        ("seed", rec["seed"]),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows) + "\n"


def _poly_str(coeffs) -> str:
    if coeffs is None:
        return "-"
    if not coeffs:
        return "0"
    return HData(tuple(coeffs), 0).to_str() if coeffs[-1] != 0 else str(coeffs)


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"
