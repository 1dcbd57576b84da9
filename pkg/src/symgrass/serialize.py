"""JSON encodings for fields, scalars, matrices and forms.

Field descriptor: {"kind": "Q"} or {"kind": "Fp", "p": 7} or, for an
extension, {"kind": "Fp", "p": 2, "e": 2} (a deterministic modulus is
chosen; outputs echo it for reproducibility). Scalars are "a/b" or "a"
strings over Q, plain integers over a prime field, and coefficient lists
over an extension. Matrices carry {"field", "rows", "cols", "entries"}.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError
from .fields import ExtensionField, Field, GF, PrimeField, QQ, RationalField
from .forms import AlternatingForm
from .matrices import Matrix


def field_to_json(field: Field) -> dict:
    if isinstance(field, RationalField):
        return {"kind": "Q"}
    if isinstance(field, PrimeField):
        return {"kind": "Fp", "p": field.p}
    if isinstance(field, ExtensionField):
        return {
            "kind": "Fp",
            "p": field.p,
            "e": field.e,
            "modulus": list(field.modulus),
        }
    raise PreconditionError(f"unknown field {field!r}")


def field_from_json(obj: dict) -> Field:
    kind = obj.get("kind")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        p = int(obj["p"])
        e = int(obj.get("e", 1))
        field = GF(p, e)
        if "modulus" in obj and e > 1:
            if tuple(obj["modulus"]) != field.modulus:
                raise PreconditionError(
                    "modulus differs from the deterministic default; "
                    "custom moduli are not supported in the JSON interface"
                )
        return field
    raise PreconditionError(f"unknown field kind {kind!r}")


def scalar_to_json(field: Field, a):
    if isinstance(field, RationalField):
        fr = Fraction(a)
        return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"
    if isinstance(field, PrimeField):
        return int(a)
    if isinstance(field, ExtensionField):
        return list(a)
    raise PreconditionError(f"unknown field {field!r}")


def scalar_from_json(field: Field, obj):
    if isinstance(field, RationalField):
        if isinstance(obj, str):
            if "/" in obj:
                num, den = obj.split("/")
                return Fraction(int(num), int(den))
            return Fraction(int(obj))
        if isinstance(obj, int):
            return Fraction(obj)
        raise PreconditionError(f"bad rational scalar {obj!r}")
    if isinstance(field, PrimeField):
        return field.check(int(obj))
    if isinstance(field, ExtensionField):
        if isinstance(obj, int):
            return field.from_int(obj)
        return field.check(tuple(int(x) for x in obj))
    raise PreconditionError(f"unknown field {field!r}")


def matrix_to_json(m: Matrix) -> dict:
    return {
        "field": field_to_json(m.field),
        "rows": m.nrows,
        "cols": m.ncols,
        "entries": [[scalar_to_json(m.field, x) for x in row] for row in m.data],
    }


def matrix_from_json(obj: dict) -> Matrix:
    field = field_from_json(obj["field"])
    entries = obj["entries"]
    if len(entries) != int(obj["rows"]):
        raise PreconditionError("row count mismatch")
    rows = [[scalar_from_json(field, x) for x in row] for row in entries]
    for row in rows:
        if len(row) != int(obj["cols"]):
            raise PreconditionError("column count mismatch")
    m = Matrix(field, rows)
    if m.nrows == 0:
        m.ncols = int(obj["cols"])
    return m


def form_to_json(f: AlternatingForm) -> dict:
    out = matrix_to_json(f.gram)
    out["type"] = "alternating"
    return out


def form_from_json(obj: dict) -> AlternatingForm:
    if obj.get("type") != "alternating":
        raise PreconditionError('form JSON must declare "type": "alternating"')
    m = matrix_from_json(obj)
    F = m.field
    for i in range(m.nrows):
        if not F.is_zero(m[i, i]):
            raise PreconditionError(
                f"entries[{i}][{i}] must be zero for an alternating form"
            )
        for j in range(i + 1, m.ncols):
            if m[i, j] != F.neg(m[j, i]):
                raise PreconditionError(
                    f"entries[{i}][{j}] and entries[{j}][{i}] are not antisymmetric"
                )
    return AlternatingForm(m)
