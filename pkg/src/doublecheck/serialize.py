"""Canonical JSON forms for exact objects and fixture round-tripping.

Rationals are "num/den" strings, cyclotomics {order, coeffs}, monomials carry
sorted exponent vectors.  Serialization is deterministic: two equal objects
produce byte-identical documents.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .cyclotomic import Cyclotomic
from .laurent import EulerProduct, LaurentMonomial, LaurentPoly


def fraction_to_json(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def fraction_from_json(s) -> Fraction:
    return Fraction(s)


def cyclotomic_to_json(x: Cyclotomic) -> dict:
    return {"order": x.order,
            "coeffs": {str(k): fraction_to_json(c)
                       for k, c in enumerate(x.coeffs) if c}}


def cyclotomic_from_json(d) -> Cyclotomic:
    return Cyclotomic(d["order"], {int(k): fraction_from_json(v)
                                   for k, v in d["coeffs"].items()})


def monomial_to_json(m: LaurentMonomial) -> dict:
    return {"coeff": cyclotomic_to_json(m.coeff),
            "exponents": [[s, e] for s, e in sorted(m.exps.items())]}


def monomial_from_json(d) -> LaurentMonomial:
    return LaurentMonomial(cyclotomic_from_json(d["coeff"]),
                           {s: e for s, e in d["exponents"]})


def poly_to_json(p: LaurentPoly) -> dict:
    return {"terms": [{"exponents": [[s, e] for s, e in key],
                       "coeff": cyclotomic_to_json(c)}
                      for key, c in sorted(p.terms.items())]}


def poly_from_json(d) -> LaurentPoly:
    out = LaurentPoly()
    for t in d["terms"]:
        out._add_monomial(monomial_from_json({"coeff": t["coeff"],
                                              "exponents": t["exponents"]}))
    return out


def euler_to_json(ep: EulerProduct) -> dict:
    return {"prefactor": monomial_to_json(ep.prefactor),
            "factors": [{"monomial": monomial_to_json(u), "inverted": inv}
                        for u, inv in ep.factors]}


def euler_from_json(d) -> EulerProduct:
    return EulerProduct(
        [(monomial_from_json(f["monomial"]), f["inverted"]) for f in d["factors"]],
        monomial_from_json(d["prefactor"]))


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def format_float(x) -> str:
    if isinstance(x, complex):
        return f"{format_float(x.real)}{'+' if x.imag >= 0 else '-'}{format_float(abs(x.imag))}j"
    return format(float(x), ".15g")


def fixture_io(path: str, mode: str, obj=None):
    """read / write / compare canonical JSON fixtures.

    compare returns {'match': bool, 'first_divergence': path string or None}.
    """
    if mode == "write":
        with open(path, "w") as fh:
            fh.write(canonical_dumps(obj))
        return {"status": "written", "path": path}
    if mode == "read":
        with open(path) as fh:
            return json.load(fh)
    if mode == "compare":
        if not os.path.exists(path):
            raise FileNotFoundError(path)
        with open(path) as fh:
            stored = json.load(fh)
        diverge = _first_divergence(stored, json.loads(canonical_dumps(obj)), "$")
        return {"match": diverge is None, "first_divergence": diverge}
    raise ValueError(f"unknown mode {mode}")


def _first_divergence(a, b, path):
    if type(a) is not type(b):
        return f"{path}: type {type(a).__name__} != {type(b).__name__}"
    if isinstance(a, dict):
        for k in sorted(set(a) | set(b)):
            if k not in a:
                return f"{path}.{k}: missing on disk"
            if k not in b:
                return f"{path}.{k}: missing in object"
            d = _first_divergence(a[k], b[k], f"{path}.{k}")
            if d:
                return d
        return None
    if isinstance(a, list):
        for i in range(max(len(a), len(b))):
            if i >= len(a) or i >= len(b):
                return f"{path}[{i}]: length mismatch {len(a)} != {len(b)}"
            d = _first_divergence(a[i], b[i], f"{path}[{i}]")
            if d:
                return d
        return None
    if a != b:
        return f"{path}: {a!r} != {b!r}"
    return None
