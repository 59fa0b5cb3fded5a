"""Curves in the projective plane: line arrangements or declared components.

The line at infinity is ``z = 0``.  In lines mode every vertex is computed
from the equations; in components mode the caller lists the singular points
and says which branch belongs to which component.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, Sequence

from .exactmath import QQ, FieldElement, NumberField

__all__ = [
    "CurveError",
    "ProjLine",
    "SingularPointSpec",
    "Curve",
    "Vertex",
    "InducedVertex",
    "Subcurve",
    "build_incidence",
    "validate_input",
    "enumerate_subcurves",
    "induced_kind",
]

LOCAL_KINDS = ("ordinary", "cusp", "tacnode", "custom")


class CurveError(ValueError):
    """Invalid curve input; ``unsupported`` marks inputs outside the model."""

    def __init__(self, message: str, unsupported: bool = False):
        super().__init__(message)
        self.unsupported = unsupported


def _normalize(coeffs: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    lead = next((c for c in coeffs if not c.is_zero()), None)
    if lead is None:
        raise CurveError("degenerate line: all coefficients are zero")
    inv = lead.inverse()
    return tuple(c * inv for c in coeffs)


@dataclass(frozen=True)
class ProjLine:
    """``a x + b y + c z = 0``, scaled so the first nonzero coefficient is 1."""

    coeffs: tuple[FieldElement, FieldElement, FieldElement]

    @staticmethod
    def make(F: NumberField, a, b, c) -> "ProjLine":
        vals = [x if isinstance(x, FieldElement) else F(x) for x in (a, b, c)]
        return ProjLine(_normalize(vals))

    @property
    def field(self) -> NumberField:
        return self.coeffs[0].field

    def is_infinity(self) -> bool:
        a, b, c = self.coeffs
        return a.is_zero() and b.is_zero()

    def meet(self, other: "ProjLine") -> tuple[FieldElement, FieldElement, FieldElement]:
        a1, b1, c1 = self.coeffs
        a2, b2, c2 = other.coeffs
        return (b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)

    def contains_affine(self, x: FieldElement, y: FieldElement) -> bool:
        a, b, c = self.coeffs
        return (a * x + b * y + c).is_zero()


@dataclass(frozen=True)
class SingularPointSpec:
    """A declared singular point.

    ``branches`` maps each local branch to a component index.  ``descriptors``
    is only used by the ``custom`` kind and holds local face data
    ``(equations, exponent)`` with ``equations`` a tuple of
    ``(coefficients per branch, rhs)``.
    """

    coords: tuple[FieldElement, FieldElement]
    kind: str
    branches: tuple[int, ...]
    m: int = 0
    descriptors: tuple = ()

    def __post_init__(self):
        if self.kind not in LOCAL_KINDS:
            raise CurveError(f"unknown local type {self.kind!r}", unsupported=True)
        expected = {"cusp": 1, "tacnode": 2}.get(self.kind)
        if self.kind == "ordinary":
            if self.m < 1:
                raise CurveError("ordinary point needs a multiplicity m >= 1")
            expected = self.m
        if expected is not None and len(self.branches) != expected:
            raise CurveError(
                f"{self.kind} point expects {expected} branches, got {len(self.branches)}"
            )
        if self.kind == "custom" and not self.branches:
            raise CurveError("custom point needs at least one branch")

    @property
    def multiplicity(self) -> int:
        return len(self.branches)


@dataclass(frozen=True)
class Vertex:
    """A singular point of the whole curve.

    ``branches`` lists the component of every local branch, sorted.
    """

    coords: tuple[FieldElement, FieldElement]
    branches: tuple[int, ...]
    kind: str = "ordinary"
    descriptors: tuple = ()

    @property
    def multiplicity(self) -> int:
        return len(self.branches)

    @property
    def components(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.branches)))


@dataclass(frozen=True)
class Curve:
    mode: str
    field: NumberField
    degrees: tuple[int, ...]
    lines: tuple[ProjLine, ...] = ()
    points: tuple[SingularPointSpec, ...] = ()
    names: tuple[str, ...] = ()
    vertices: tuple[Vertex, ...] = field(default=(), compare=False, repr=False)

    @staticmethod
    def from_lines(lines: Sequence[ProjLine], F: NumberField = QQ, names: Sequence[str] = ()) -> "Curve":
        c = Curve("lines", F, (1,) * len(lines), tuple(lines), (), tuple(names))
        validate_input(c)
        object.__setattr__(c, "vertices", tuple(build_incidence(c)))
        return c

    @staticmethod
    def from_components(
        degrees: Sequence[int],
        points: Sequence[SingularPointSpec],
        F: NumberField = QQ,
        names: Sequence[str] = (),
    ) -> "Curve":
        c = Curve("components", F, tuple(degrees), (), tuple(points), tuple(names))
        validate_input(c)
        object.__setattr__(c, "vertices", tuple(build_incidence(c)))
        return c

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def full(self) -> "Subcurve":
        return _induce(self, tuple(range(self.r)))

    def subcurve(self, support: Sequence[int]) -> "Subcurve":
        return _induce(self, tuple(sorted(support)))


def validate_input(curve: Curve) -> None:
    """Raise :class:`CurveError` unless the curve fits the model."""
    if curve.mode == "lines":
        if len(curve.degrees) != len(curve.lines) or any(d != 1 for d in curve.degrees):
            raise CurveError("lines mode: every component has degree 1")
        seen = {}
        for i, L in enumerate(curve.lines):
            if L.field != curve.field:
                raise CurveError(f"line {i} is over a different number field")
            if L.is_infinity():
                raise CurveError(f"line {i} is the line at infinity z=0", unsupported=True)
            if L.coeffs in seen:
                raise CurveError(f"non-reduced curve: lines {seen[L.coeffs]} and {i} coincide")
            seen[L.coeffs] = i
        for i, j in combinations(range(len(curve.lines)), 2):
            if curve.lines[i].meet(curve.lines[j])[2].is_zero():
                raise CurveError(
                    f"line at infinity not transversal: lines {i} and {j} are parallel",
                    unsupported=True,
                )
    elif curve.mode == "components":
        if not curve.degrees or any(d < 1 for d in curve.degrees):
            raise CurveError("components mode needs positive degrees")
        coords = set()
        for k, P in enumerate(curve.points):
            if any(b < 0 or b >= len(curve.degrees) for b in P.branches):
                raise CurveError(f"singular point {k}: branch refers to an unknown component")
            if P.coords in coords:
                raise CurveError(f"singular point {k} is declared twice")
            coords.add(P.coords)
            for b in set(P.branches):
                if P.kind != "custom" and curve.degrees[b] < P.branches.count(b):
                    raise CurveError(f"singular point {k}: component {b} has too many branches")
    else:
        raise CurveError(f"unknown mode {curve.mode!r}")


def build_incidence(curve: Curve) -> list[Vertex]:
    """Singular points of the whole curve, ordered by incident components."""
    if curve.mode == "components":
        out = [
            Vertex(P.coords, tuple(sorted(P.branches)), P.kind, P.descriptors)
            for P in curve.points
        ]
        out.sort(key=lambda v: (v.branches, [c.sort_key() for c in v.coords]))
        return out
    groups: dict[tuple, set[int]] = {}
    for i, j in combinations(range(len(curve.lines)), 2):
        if curve.lines[i].coeffs == curve.lines[j].coeffs:
            raise CurveError(f"non-reduced curve: lines {i} and {j} coincide")
        x, y, z = curve.lines[i].meet(curve.lines[j])
        if z.is_zero():
            raise CurveError(f"line at infinity not transversal: lines {i} and {j} are parallel", unsupported=True)
        zi = z.inverse()
        groups.setdefault((x * zi, y * zi), set()).update((i, j))
    out = [Vertex(pt, tuple(sorted(ls))) for pt, ls in groups.items()]
    out.sort(key=lambda v: v.branches)
    return out


# --------------------------------------------------------------------------
# subcurves


@dataclass(frozen=True)
class InducedVertex:
    """A vertex seen inside a subcurve.

    ``branches`` are positions in the subcurve's coordinate list (one per
    local branch); ``parent`` indexes the whole curve's vertex list.
    """

    parent: int
    coords: tuple[FieldElement, FieldElement]
    branches: tuple[int, ...]
    kind: str
    descriptors: tuple = ()

    @property
    def multiplicity(self) -> int:
        return len(self.branches)


@dataclass(frozen=True)
class Subcurve:
    """Components ``support`` (indices into the whole curve) with induced vertices."""

    curve: Curve
    support: tuple[int, ...]
    vertices: tuple[InducedVertex, ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(self.curve.degrees[i] for i in self.support)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    @property
    def key(self) -> tuple[int, ...]:
        return self.support

    def eligible(self) -> list[InducedVertex]:
        """Vertices that carry at least one local face of quasiadjunction."""
        return [v for v in self.vertices if _has_faces(v)]


def _has_faces(v: InducedVertex) -> bool:
    if v.kind == "ordinary":
        return v.multiplicity >= 3
    return True


def induced_kind(v: Vertex, kept: Sequence[bool]) -> str | None:
    """Local type of ``v`` once only the kept branches remain, or None if smooth/gone."""
    k = sum(kept)
    if k == 0:
        return None
    if v.kind == "ordinary":
        return "ordinary" if k >= 2 else None
    if v.kind == "cusp":
        return "cusp"
    if v.kind == "tacnode":
        return "tacnode" if k == 2 else None
    # custom data refer to every branch; a partial restriction is not modelled
    return "custom" if k == len(kept) else None


def _induce(curve: Curve, support: tuple[int, ...]) -> Subcurve:
    pos = {c: i for i, c in enumerate(support)}
    out = []
    for idx, v in enumerate(curve.vertices):
        kept = [b in pos for b in v.branches]
        kind = induced_kind(v, kept)
        if kind is None:
            continue
        out.append(
            InducedVertex(
                idx,
                v.coords,
                tuple(pos[b] for b in v.branches if b in pos),
                kind,
                v.descriptors if kind == "custom" else (),
            )
        )
    return Subcurve(curve, support, tuple(out))


def enumerate_subcurves(
    curve: Curve, prune: Callable[[tuple[int, ...]], bool] | None = None
) -> Iterator[Subcurve]:
    """Every nonempty subset of components, by size then lexicographically.

    ``prune(support)`` returning True skips that subset.
    """
    for k in range(1, curve.r + 1):
        for support in combinations(range(curve.r), k):
            if prune is not None and prune(support):
                continue
            yield _induce(curve, support)
