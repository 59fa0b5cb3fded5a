"""JSON input documents: exact parsing, validation with field paths, round trip.

Rationals are strings ``"p/q"`` (plain JSON integers are accepted too).  A
number-field coefficient is a list of rationals in ascending powers of the
generator; a bare rational is shorthand for a constant.
"""
from __future__ import annotations

import json
from importlib import resources
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from .arrangement import Curve, CurveError, ProjLine, SingularPointSpec
from .covers import Quotient
from .exactmath import ExactMathError, FieldElement, NumberField
from .quasiadjunction import LocalFaceDescriptor

__all__ = [
    "DocumentError",
    "InputDocument",
    "parse_document",
    "parse_input",
    "parse_quotient",
    "document_from_curve",
    "format_rational",
    "fixture_path",
    "load_fixture",
]

_RATIONAL = {"oneOf": [{"type": "string"}, {"type": "integer"}]}
_COEFF = {"oneOf": [_RATIONAL, {"type": "array", "items": _RATIONAL, "minItems": 1}]}
_QUOTIENT = {
    "type": "object",
    "required": ["moduli", "matrix"],
    "properties": {
        "moduli": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "matrix": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
    "additionalProperties": False,
}
SCHEMA = {
    "type": "object",
    "required": ["field", "mode"],
    "properties": {
        "schema": {"const": 1},
        "name": {"type": "string"},
        "field": {
            "type": "object",
            "required": ["generator", "minpoly"],
            "properties": {
                "generator": {"type": "string"},
                "minpoly": {"type": "array", "items": {"type": "integer"}, "minItems": 2},
            },
            "additionalProperties": False,
        },
        "mode": {"enum": ["lines", "components"]},
        "names": {"type": "array", "items": {"type": "string"}},
        "lines": {"type": "array", "items": {"type": "array", "items": _COEFF, "minItems": 3, "maxItems": 3}},
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["degree"],
                "properties": {"degree": {"type": "integer", "minimum": 1}, "name": {"type": "string"}},
                "additionalProperties": False,
            },
        },
        "singular_points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coords", "type", "branches"],
                "properties": {
                    "coords": {"type": "array", "items": _COEFF, "minItems": 2, "maxItems": 3},
                    "type": {"type": "string"},
                    "m": {"type": "integer", "minimum": 1},
                    "branches": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "descriptors": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["equations", "exponent"],
                            "properties": {
                                "equations": {
                                    "type": "array",
                                    "minItems": 1,
                                    "items": {
                                        "type": "object",
                                        "required": ["coefficients", "rhs"],
                                        "properties": {
                                            "coefficients": {"type": "array", "items": _RATIONAL},
                                            "rhs": _RATIONAL,
                                        },
                                        "additionalProperties": False,
                                    },
                                },
                                "exponent": {"type": "integer", "minimum": 0},
                                "ideal": {"type": "string"},
                                "label": {"type": "string"},
                            },
                            "additionalProperties": False,
                        },
                    },
                },
                "additionalProperties": False,
            },
        },
        "quotient": _QUOTIENT,
        "orders": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "scheme": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coords", "order"],
                "properties": {
                    "coords": {"type": "array", "items": _COEFF, "minItems": 2, "maxItems": 3},
                    "order": {"type": "integer", "minimum": 1},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


class DocumentError(CurveError):
    """Schema or value error, with the JSON path of the offending field."""

    def __init__(self, path: str, message: str, unsupported: bool = False):
        super().__init__(f"{path}: {message}" if path else message, unsupported)
        self.path = path


def _path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def _rational(x: Any, path: str) -> Fraction:
    if isinstance(x, bool):
        raise DocumentError(path, "expected a rational, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        num, _, den = s.partition("/")
        try:
            if not num.lstrip("+-").isdigit() or (den and not den.isdigit()):
                raise ValueError
            return Fraction(int(num), int(den) if den else 1)
        except (ValueError, ZeroDivisionError):
            raise DocumentError(path, f"malformed rational {x!r}") from None
    raise DocumentError(path, f"expected a rational string, got {type(x).__name__}")


def _coeff(F: NumberField, x: Any, path: str) -> FieldElement:
    if not isinstance(x, list):
        return F([_rational(x, path)])
    if len(x) > F.degree:
        raise DocumentError(path, f"at most {F.degree} coefficients in the generator are allowed")
    return F([_rational(v, f"{path}[{k}]") for k, v in enumerate(x)])


def _coeff_json(c: FieldElement) -> list[str]:
    return [format_rational(q) for q in c.coeffs]


@dataclass(frozen=True)
class InputDocument:
    field: NumberField
    mode: str
    lines: tuple[tuple[FieldElement, FieldElement, FieldElement], ...] = ()
    degrees: tuple[int, ...] = ()
    points: tuple[SingularPointSpec, ...] = ()
    names: tuple[str, ...] = ()
    quotient: Quotient | None = None
    orders: tuple[int, ...] | None = None
    scheme: tuple[tuple[tuple[FieldElement, ...], int], ...] | None = None
    name: str = ""

    def curve(self) -> Curve:
        if self.mode == "lines":
            return Curve.from_lines([ProjLine.make(self.field, *t) for t in self.lines], self.field, self.names)
        return Curve.from_components(self.degrees, self.points, self.field, self.names)

    def to_json(self) -> dict:
        out: dict = {"schema": 1, "field": {"generator": self.field.name, "minpoly": list(self.field.minpoly)}, "mode": self.mode}
        if self.name:
            out["name"] = self.name
        if self.names:
            out["names"] = list(self.names)
        if self.mode == "lines":
            out["lines"] = [[_coeff_json(c) for c in t] for t in self.lines]
        else:
            out["components"] = [{"degree": d} for d in self.degrees]
            out["singular_points"] = [_point_json(P) for P in self.points]
        if self.quotient is not None:
            out["quotient"] = {"moduli": list(self.quotient.moduli), "matrix": [list(r) for r in self.quotient.matrix]}
        if self.orders is not None:
            out["orders"] = list(self.orders)
        if self.scheme is not None:
            out["scheme"] = [{"coords": [_coeff_json(c) for c in p], "order": a} for p, a in self.scheme]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def _point_json(P: SingularPointSpec) -> dict:
    d: dict = {"coords": [_coeff_json(c) for c in P.coords], "type": P.kind, "branches": list(P.branches)}
    if P.kind == "ordinary":
        d["m"] = P.m
    if P.descriptors:
        d["descriptors"] = [
            {
                "equations": [
                    {"coefficients": [format_rational(a) for a in row], "rhs": format_rational(c)}
                    for row, c in lf.equations
                ],
                "exponent": lf.exponent,
                "ideal": "power",
                **({"label": lf.label} if lf.label else {}),
            }
            for lf in P.descriptors
        ]
    return d


def _validate(obj: Any) -> None:
    v = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(v.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise DocumentError(_path(e.absolute_path), e.message)


def _parse_point(F: NumberField, d: dict, path: str) -> SingularPointSpec:
    coords = tuple(_coeff(F, c, f"{path}.coords[{k}]") for k, c in enumerate(d["coords"]))
    kind = d["type"]
    descriptors = []
    for k, desc in enumerate(d.get("descriptors", [])):
        dp = f"{path}.descriptors[{k}]"
        ideal = desc.get("ideal", "power")
        if ideal != "power":
            raise DocumentError(dp + ".ideal", f"ideal {ideal!r} is not a power of the maximal ideal", unsupported=True)
        eqs = []
        for j, eq in enumerate(desc["equations"]):
            ep = f"{dp}.equations[{j}]"
            coeffs = tuple(_rational(a, f"{ep}.coefficients[{i}]") for i, a in enumerate(eq["coefficients"]))
            if len(coeffs) != len(d["branches"]):
                raise DocumentError(ep + ".coefficients", "one coefficient per branch is required")
            eqs.append((coeffs, _rational(eq["rhs"], ep + ".rhs")))
        descriptors.append(LocalFaceDescriptor(tuple(eqs), desc["exponent"], desc.get("label", "")))
    if kind == "custom" and not descriptors:
        raise DocumentError(path + ".descriptors", "a custom point needs local face descriptors")
    if kind != "custom" and descriptors:
        raise DocumentError(path + ".descriptors", "descriptors are only allowed on custom points")
    if len(coords) == 3:
        if coords[2].is_zero():
            raise DocumentError(path + ".coords", "point lies on the line at infinity", unsupported=True)
        zi = coords[2].inverse()
        coords = (coords[0] * zi, coords[1] * zi)
    try:
        return SingularPointSpec(coords, kind, tuple(d["branches"]), d.get("m", 0), tuple(descriptors))
    except CurveError as e:
        raise DocumentError(path, str(e), e.unsupported) from None


def parse_document(obj: Any) -> InputDocument:
    """Validate a decoded JSON object and build the document exactly."""
    _validate(obj)
    fd = obj["field"]
    try:
        F = NumberField(fd["generator"], tuple(fd["minpoly"]))
    except ExactMathError as e:
        raise DocumentError("$.field.minpoly", str(e)) from None
    mode = obj["mode"]
    names = tuple(obj.get("names", ()))
    lines: tuple = ()
    degrees: tuple = ()
    points: tuple = ()
    if mode == "lines":
        if "lines" not in obj:
            raise DocumentError("$.lines", "lines mode needs a 'lines' array")
        if "components" in obj or "singular_points" in obj:
            raise DocumentError("$", "lines mode takes no components or singular points")
        parsed = []
        for i, t in enumerate(obj["lines"]):
            trip = tuple(_coeff(F, c, f"$.lines[{i}][{k}]") for k, c in enumerate(t))
            if all(c.is_zero() for c in trip):
                raise DocumentError(f"$.lines[{i}]", "degenerate line: all coefficients are zero")
            parsed.append(trip)
        lines = tuple(parsed)
        r = len(lines)
    else:
        if "components" not in obj:
            raise DocumentError("$.components", "components mode needs a 'components' array")
        if "lines" in obj:
            raise DocumentError("$.lines", "components mode takes no lines")
        degrees = tuple(c["degree"] for c in obj["components"])
        points = tuple(
            _parse_point(F, p, f"$.singular_points[{k}]") for k, p in enumerate(obj.get("singular_points", []))
        )
        r = len(degrees)
    if names and len(names) != r:
        raise DocumentError("$.names", "one name per component is required")
    quotient = parse_quotient(obj["quotient"], "$.quotient") if "quotient" in obj else None
    orders = tuple(obj["orders"]) if "orders" in obj else None
    scheme = None
    if "scheme" in obj:
        scheme = tuple(
            (tuple(_coeff(F, c, f"$.scheme[{k}].coords[{j}]") for j, c in enumerate(p["coords"])), p["order"])
            for k, p in enumerate(obj["scheme"])
        )
    return InputDocument(F, mode, lines, degrees, points, names, quotient, orders, scheme, obj.get("name", ""))


def parse_quotient(obj: Any, path: str = "$") -> Quotient:
    errors = sorted(jsonschema.Draft202012Validator(_QUOTIENT).iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        raise DocumentError(path + _path(errors[0].absolute_path)[1:], errors[0].message)
    try:
        return Quotient(tuple(obj["moduli"]), tuple(tuple(r) for r in obj["matrix"]))
    except ValueError as e:
        raise DocumentError(path, str(e)) from None


def _load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise DocumentError("$", f"invalid JSON: {e}") from None


def parse_input(path: str | Path) -> InputDocument:
    return parse_document(_load_json(path))


def document_from_curve(curve: Curve, **extra) -> InputDocument:
    """Document describing an already built curve."""
    if curve.mode == "lines":
        return InputDocument(curve.field, "lines", tuple(L.coeffs for L in curve.lines), names=curve.names, **extra)
    return InputDocument(curve.field, "components", (), curve.degrees, curve.points, curve.names, **extra)


def fixture_path(name: str) -> Path:
    """Path of a bundled example document, e.g. ``fixture_path("ceva")``."""
    p = Path(str(resources.files("qav") / "data" / f"{name}.json"))
    if not p.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return p


def load_fixture(name: str) -> InputDocument:
    return parse_input(fixture_path(name))
