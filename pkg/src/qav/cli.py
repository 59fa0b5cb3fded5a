"""Command line front end: ``qav <command> input.json [options]``.

Reports are JSON with sorted keys and no timestamps, so identical inputs and
flags give identical bytes.  Exit codes: 0 success, 2 invalid input,
3 input outside what the library supports.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .arrangement import Curve, CurveError
from .charvariety import CharacteristicVariety, FaceRecord, assemble
from .covers import CoverSpec, betti_branched, betti_unbranched, irregularity, milnor_b1
from .document import DocumentError, InputDocument, _load_json, format_rational, parse_document, parse_quotient
from .exactmath import ExactMathError, FieldElement
from .resonance import resonance_components, verify_thm54
from .sheafcoh import FatPointScheme, superabundance

__all__ = ["main", "run", "COMMANDS"]

COMMANDS = ("analyze", "faces", "covers", "milnor", "resonance", "superabundance")
RULES = ("max", "additive")

EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 2, 3


def _coords_json(coords: Sequence[FieldElement]) -> list:
    return [c.to_json() for c in coords]


def _curve_summary(curve: Curve) -> dict:
    census: dict[str, int] = {}
    for v in curve.vertices:
        key = f"{v.kind}:{v.multiplicity}" if v.kind == "ordinary" else v.kind
        census[key] = census.get(key, 0) + 1
    out = {
        "mode": curve.mode,
        "components": curve.r,
        "degrees": list(curve.degrees),
        "degree": curve.degree,
        "field": {"generator": curve.field.name, "minpoly": list(curve.field.minpoly)},
        "vertex_census": census,
        "vertices": [
            {"coords": _coords_json(v.coords), "type": v.kind, "components": list(v.components), "m": v.multiplicity}
            for v in curve.vertices
        ],
    }
    if curve.mode == "components":
        # nothing beyond the declared points is searched for
        out["assumptions"] = ["the declared singular points are all the singular points of the curve"]
    return out


def _face_json(rec: FaceRecord) -> dict:
    f = rec.face
    out: dict[str, Any] = {
        "subcurve": list(f.support),
        "vertices": list(f.vertices),
        "local_faces": list(f.labels),
        "level": format_rational(f.level),
        "order": rec.order,
        "dimension": f.dimension,
        "twist": rec.twist,
        "witness": [format_rational(x) for x in f.witness],
    }
    if rec.cohomology is None:
        out.update(h0=None, chi=None, h1=0, dismissed=True)
    else:
        c = rec.cohomology
        out.update(h0=c.h0, chi=c.chi, h1=c.h1, dismissed=False)
    return out


def _faces_json(cv: CharacteristicVariety) -> list:
    return [_face_json(rec) for support in sorted(cv.records) for rec in cv.records[support]]


def _components_json(cv: CharacteristicVariety) -> list:
    return [c.to_json() for c in cv.components]


def _resonance_report(curve: Curve, cv: CharacteristicVariety | None, seed: int) -> dict:
    if curve.mode != "lines":
        return {"skipped": "resonance is computed for line arrangements only"}
    res = resonance_components(curve, seed)
    out: dict[str, Any] = {"seed": seed, "components": [rc.to_json() for rc in res]}
    if cv is not None:
        ok, checks = verify_thm54(cv.components, res)
        out["cross_check"] = {
            "passed": ok,
            "matches": [
                {"component": ch.component.to_json(), "depth_ok": ch.depth_ok, "resonance_index": ch.matched}
                for ch in checks
            ],
        }
    return out


def _parse_orders(text: str, r: int) -> tuple[int, ...]:
    try:
        orders = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise DocumentError("--orders", f"expected comma separated integers, got {text!r}") from None
    if len(orders) != r:
        raise DocumentError("--orders", f"expected {r} orders, got {len(orders)}")
    return orders


def _cover_spec(doc: InputDocument, args, target: str) -> CoverSpec:
    curve_r = len(doc.lines) if doc.mode == "lines" else len(doc.degrees)
    if args.orders and args.quotient:
        raise DocumentError("--orders", "give either --orders or --quotient, not both")
    if args.orders:
        return CoverSpec(_parse_orders(args.orders, curve_r), None, target)
    if args.quotient:
        return CoverSpec(None, parse_quotient(_load_json(args.quotient), "--quotient"), target)
    if doc.quotient is not None:
        return CoverSpec(None, doc.quotient, target)
    if doc.orders is not None:
        return CoverSpec(doc.orders, None, target)
    raise DocumentError("--orders", "covers needs --orders, --quotient, or a cover in the document")


def _scheme(doc: InputDocument, args) -> FatPointScheme:
    if args.scheme:
        obj = _load_json(args.scheme)
        wrapped = {"field": {"generator": doc.field.name, "minpoly": list(doc.field.minpoly)}, "mode": "lines",
                   "lines": [], "scheme": obj}
        pts = parse_document(wrapped).scheme
    elif doc.scheme is not None:
        pts = doc.scheme
    else:
        raise DocumentError("--scheme", "superabundance needs --scheme or a 'scheme' entry in the document")
    try:
        return FatPointScheme.make(pts)
    except (ValueError, ExactMathError) as e:
        raise DocumentError("$.scheme", str(e)) from None


def run(command: str, doc: InputDocument, args: argparse.Namespace) -> dict:
    """Run one command and return the report as a JSON-ready dict."""
    report: dict[str, Any] = {"schema": 1, "command": command, "fast": bool(args.fast)}
    if doc.name:
        report["name"] = doc.name
    if command == "superabundance":
        if args.degree is None:
            raise DocumentError("--degree", "superabundance needs --degree")
        scheme = _scheme(doc, args)
        c = superabundance(args.degree, scheme)
        report["superabundance"] = {
            "degree": c.n, "h0": c.h0, "chi": c.chi, "h1": c.h1, "conditions": c.conditions,
            "points": [{"coords": [x.to_json() if isinstance(x, FieldElement) else format_rational(Fraction(x)) for x in p],
                        "order": a} for p, a in scheme.points],
        }
        return report

    curve = doc.curve()
    report["curve"] = _curve_summary(curve)
    if command == "resonance":
        report["resonance"] = _resonance_report(curve, None, args.seed)
        return report

    cv = assemble(curve, fast=args.fast)
    report["warnings"] = list(cv.warnings)
    report["subcurves_examined"] = cv.subcurves_examined
    if command in ("faces", "analyze"):
        report["faces"] = _faces_json(cv)
    if command == "analyze":
        report["components"] = _components_json(cv)
        report["census"] = {
            "components": len(cv.components),
            "essential": sum(c.essential for c in cv.components),
            "by_dimension": _count_by(c.dimension for c in cv.components),
        }
        report["resonance"] = _resonance_report(curve, cv, args.seed)
    if command == "covers":
        out: dict[str, Any] = {}
        spec = _cover_spec(doc, args, "branched")
        out["cover"] = (
            {"orders": list(spec.orders)} if spec.orders is not None
            else {"moduli": list(spec.quotient.moduli), "matrix": [list(r) for r in spec.quotient.matrix]}
        )
        if spec.orders is None or any(m > 1 for m in spec.orders):
            out["irregularity"] = irregularity(cv, spec)
            out["betti_branched"] = {rule: betti_branched(cv, spec, rule) for rule in RULES}
        unb = CoverSpec(spec.orders, spec.quotient, "unbranched")
        out["betti_unbranched"] = {rule: betti_unbranched(cv, unb, rule) for rule in RULES}
        report["covers"] = out
    if command == "milnor":
        report["milnor_b1"] = {rule: milnor_b1(cv, rule) for rule in RULES}
    return report


def _count_by(values) -> dict[str, int]:
    out: dict[str, int] = {}
    for v in values:
        out[str(v)] = out.get(str(v), 0) + 1
    return out


def _summary(report: dict) -> str:
    lines = [f"qav {report['command']}"]
    if "curve" in report:
        c = report["curve"]
        census = ", ".join(f"{k} x{v}" for k, v in sorted(c["vertex_census"].items()))
        lines.append(f"  curve: {c['components']} components of degree {c['degree']}; singular points: {census or 'none'}")
    if "faces" in report:
        lines.append(f"  contributing faces: {len(report['faces'])}")
    if "census" in report:
        k = report["census"]
        lines.append(f"  components: {k['components']} ({k['essential']} essential)")
    if "resonance" in report and "cross_check" in report["resonance"]:
        lines.append(f"  resonance cross-check: {'passed' if report['resonance']['cross_check']['passed'] else 'FAILED'}")
    elif "resonance" in report and "components" in report["resonance"]:
        lines.append(f"  resonance components: {len(report['resonance']['components'])}")
    if "covers" in report:
        cov = report["covers"]
        if "irregularity" in cov:
            lines.append(f"  irregularity: {cov['irregularity']}")
            lines.append(f"  b1 branched: {cov['betti_branched']['max']}")
        lines.append(f"  b1 unbranched: {cov['betti_unbranched']['max']}")
    if "milnor_b1" in report:
        lines.append(f"  Milnor fiber b1: {report['milnor_b1']['max']}")
    if "superabundance" in report:
        s = report["superabundance"]
        lines.append(f"  h0={s['h0']} chi={s['chi']} h1={s['h1']} (degree {s['degree']})")
    warnings = report.get("warnings", [])
    for w in warnings[:3]:
        lines.append(f"  warning: {w}")
    if len(warnings) > 3:
        lines.append(f"  ... {len(warnings) - 3} more warnings in the JSON report")
    return "\n".join(lines)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qav", description="Characteristic varieties and cover invariants of plane curves.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="input document (JSON)")
    p.add_argument("--orders", help="branching orders m1,...,mr for covers")
    p.add_argument("--quotient", help="JSON file with a quotient {moduli, matrix}")
    p.add_argument("--degree", type=int, help="twist n for superabundance")
    p.add_argument("--scheme", help="JSON file with a fat point list [{coords, order}]")
    p.add_argument("--fast", action="store_true", help="skip faces killed by the blow-up bound")
    p.add_argument("--seed", type=int, default=0, help="seed for resonance sampling")
    p.add_argument("--json", dest="json_out", help="write the JSON report here and print a summary")
    return p


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if not Path(args.input).is_file():
            raise DocumentError("input", f"no such file: {args.input}")
        doc = parse_document(_load_json(args.input))
        report = run(args.command, doc, args)
    except (CurveError, ExactMathError, ValueError) as e:
        unsupported = getattr(e, "unsupported", False)
        kind = "unsupported input" if unsupported else "invalid input"
        print(f"qav: {kind}: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED if unsupported else EXIT_INVALID
    text = dumps(report)
    if args.json_out:
        Path(args.json_out).write_text(text)
        print(_summary(report))
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
