"""JSON interchange for polynomials.

Schema (one of the two payload keys is required):

    {"precision_digits": 30, "roots": [[re, im], ...]}
    {"precision_digits": 30, "coefficients": [[re, im], ...], "monic": false}

Coefficients are listed constant-term first.  With ``"monic": true`` the
leading coefficient 1 is implied and omitted from the list.  Every numeric
entry may be a number, a decimal string (preserving digits beyond double
precision), or an ``[re, im]`` pair of either.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from mpmath import mp

from . import poly
from .precision import PrecisionContext


def _parse_number(entry):
    """One complex number from a JSON entry (scalar, string, or [re, im])."""
    if isinstance(entry, (list, tuple)):
        if len(entry) != 2:
            raise ValueError(f"complex entry must be [re, im], got {entry!r}")
        return mp.mpc(mp.mpf(str(entry[0])), mp.mpf(str(entry[1])))
    if isinstance(entry, (int, float, str)):
        return mp.mpc(mp.mpf(str(entry)))
    raise ValueError(f"cannot parse number from {entry!r}")


def _format_number(z, digits: int):
    re = mp.nstr(z.real, digits)
    im = mp.nstr(z.imag, digits)
    return [re, im]


def polynomial_from_json(obj: dict, ctx: Optional[PrecisionContext] = None) -> poly.Polynomial:
    """Build a polynomial from its JSON dict form."""
    if not isinstance(obj, dict):
        raise ValueError("polynomial JSON must be an object")
    digits = obj.get("precision_digits")
    if ctx is None:
        ctx = PrecisionContext(int(digits)) if digits else None
    with mp.workdps((ctx or PrecisionContext()).dps):
        if "roots" in obj:
            roots = [_parse_number(e) for e in obj["roots"]]
            return poly.from_roots(roots, ctx)
        if "coefficients" in obj:
            coeffs = [_parse_number(e) for e in obj["coefficients"]]
            if obj.get("monic"):
                coeffs.append(mp.mpc(1))
            return poly.from_coefficients(coeffs, ctx)
    raise ValueError("polynomial JSON needs a 'roots' or 'coefficients' key")


def polynomial_to_json(p: poly.Polynomial) -> dict:
    """JSON dict form; emits roots when known, else coefficients."""
    digits = p.ctx.dps
    out = {"precision_digits": p.ctx.significant_digits}
    with p.ctx.workdps():
        if p.known_roots is not None:
            out["roots"] = [_format_number(r, digits) for r in p.known_roots]
        else:
            out["coefficients"] = [_format_number(c, digits) for c in p.coefficients]
    return out


def load_polynomial(path, ctx: Optional[PrecisionContext] = None) -> poly.Polynomial:
    with open(path) as fh:
        return polynomial_from_json(json.load(fh), ctx)


def dump_polynomial(p: poly.Polynomial, path) -> None:
    Path(path).write_text(json.dumps(polynomial_to_json(p), indent=2) + "\n")
