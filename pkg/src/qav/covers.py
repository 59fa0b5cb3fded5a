"""Irregularity and first Betti numbers of abelian covers and the Milnor fiber.

A cover is either the full group prod Z/m_i (``orders``) or a quotient
H_1 -> prod Z/n_j given by an integer matrix whose column i is the image of
the meridian of component i.  Characters of a quotient pull back to
characters of H_1 with x_i = frac(sum_j c_j Q_ji / n_j).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .arrangement import Curve
from .charvariety import (
    CharacteristicVariety,
    FaceRecord,
    count_torsion_points,
    depth_at,
    frac_vector,
    torsion_points,
)
from .quasiadjunction import face_lattice_points, vertex_faces

__all__ = [
    "Quotient",
    "CoverSpec",
    "face_at",
    "irregularity",
    "betti_branched",
    "betti_unbranched",
    "milnor_b1",
]


@dataclass(frozen=True)
class Quotient:
    moduli: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(n < 1 for n in self.moduli):
            raise ValueError("quotient moduli must be positive")
        if len(self.matrix) != len(self.moduli):
            raise ValueError("quotient matrix needs one row per modulus")
        if len({len(row) for row in self.matrix}) > 1:
            raise ValueError("quotient matrix rows must have equal length")

    @property
    def r(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def characters(self) -> Iterator[tuple[Fraction, ...]]:
        """Pulled-back characters of the quotient, trivial one included."""
        for c in product(*(range(n) for n in self.moduli)):
            yield frac_vector(
                sum(Fraction(cj * row[i], n) for cj, row, n in zip(c, self.matrix, self.moduli))
                for i in range(self.r)
            )


@dataclass(frozen=True)
class CoverSpec:
    """Branching orders or a quotient; ``target`` is ``branched`` or ``unbranched``."""

    orders: tuple[int, ...] | None = None
    quotient: Quotient | None = None
    target: str = "branched"

    def __post_init__(self):
        if (self.orders is None) == (self.quotient is None):
            raise ValueError("give exactly one of orders or quotient")
        if self.orders is not None:
            if any(m < 1 for m in self.orders):
                raise ValueError("orders must be positive")
            if all(m == 1 for m in self.orders) and self.target == "branched":
                raise ValueError("a branched cover needs some order >= 2")
        if self.target not in ("branched", "unbranched"):
            raise ValueError(f"unknown cover target {self.target!r}")

    @staticmethod
    def uniform(n: int, r: int, target: str = "branched") -> "CoverSpec":
        return CoverSpec(tuple([n] * r), None, target)

    def check(self, curve: Curve) -> None:
        r = len(self.orders) if self.orders is not None else self.quotient.r
        if r != curve.r:
            raise ValueError(f"cover has {r} coordinates, the curve has {curve.r} components")

    def characters(self) -> Iterator[tuple[Fraction, ...]]:
        if self.quotient is not None:
            yield from self.quotient.characters()
            return
        for ys in product(*(range(m) for m in self.orders)):
            yield tuple(Fraction(y, m) for y, m in zip(ys, self.orders))


# -- face lookup -----------------------------------------------------------


@lru_cache(maxsize=4096)
def _options(curve: Curve, support: tuple[int, ...]):
    sub = curve.subcurve(support)
    return [(v.parent, vertex_faces(v, len(support))) for v in sub.eligible()]


def _satisfied(curve: Curve, support: tuple[int, ...], xs: Sequence[Fraction]) -> frozenset:
    out = set()
    for parent, faces in _options(curve, support):
        for k, (_, eqs) in enumerate(faces):
            if all(sum(a * v for a, v in zip(row, xs)) == c for row, c in eqs):
                out.add((parent, k))
                break
    return frozenset(out)


def face_at(cv: CharacteristicVariety, x: Sequence[Fraction]) -> FaceRecord | None:
    """The contributing face whose relative interior holds the character x."""
    x = frac_vector(x)
    support = tuple(i for i, v in enumerate(x) if v)
    recs = cv.faces_of(support)
    if not recs:
        return None
    key = _satisfied(cv.curve, support, [x[i] for i in support])
    return next((rec for rec in recs if rec.key == key), None)


def _others(cv: CharacteristicVariety, rec: FaceRecord):
    chosen = set(rec.face.vertices)
    return [
        eqs
        for parent, faces in _options(cv.curve, rec.face.support)
        if parent not in chosen
        for _, eqs in faces
    ]


# -- irregularity ----------------------------------------------------------


def irregularity(cv: CharacteristicVariety, spec: CoverSpec) -> int:
    """Sum over subcurves and contributing faces of N(face) * h1.

    For the full group N is the number of lattice points in the relative
    interior of the face; for a quotient the characters are swept and each
    one charged to the face that holds it.
    """
    spec.check(cv.curve)
    if spec.quotient is not None:
        total = 0
        for x in spec.characters():
            rec = face_at(cv, x)
            if rec is not None:
                total += rec.h1
        return total
    total = 0
    for support, recs in cv.records.items():
        orders = [spec.orders[i] for i in support]
        for rec in recs:
            if rec.h1:
                total += rec.h1 * len(face_lattice_points(rec.face, orders, _others(cv, rec)))
    return total


# -- Betti numbers ---------------------------------------------------------


def _points_with_depth(comps, orders, full_support: bool) -> dict:
    best: dict = {}
    for c in comps:
        for p in torsion_points(c, orders):
            if not any(p):
                continue
            if full_support and not all(p[j] for j in c.support):
                continue
            best[p] = max(best.get(p, 0), c.depth)
    return best


def betti_branched(cv: CharacteristicVariety, spec: CoverSpec, rule: str = "max") -> int:
    """Sum over nontrivial characters of the depth at the character.

    A character with support T is judged against the components of the
    subcurve T, i.e. components whose support is exactly T.
    """
    spec.check(cv.curve)
    if spec.quotient is not None:
        total = 0
        for x in spec.characters():
            if any(x):
                sup = tuple(i for i, v in enumerate(x) if v)
                total += depth_at(cv.with_support(sup), x, rule)
        return total
    groups: dict[tuple[int, ...], list] = {}
    for c in cv.components:
        groups.setdefault(c.support, []).append(c)
    total = 0
    for comps in groups.values():
        if rule == "additive" or len(comps) == 1:
            total += sum(c.depth * count_torsion_points(c, spec.orders, "full-support") for c in comps)
        elif rule == "max":
            total += sum(_points_with_depth(comps, spec.orders, True).values())
        else:
            raise ValueError(f"unknown depth rule {rule!r}")
    return total


def betti_unbranched(cv: CharacteristicVariety, spec: CoverSpec, rule: str = "max") -> int:
    """r plus the sum of depths over nontrivial characters, against all components."""
    spec.check(cv.curve)
    r = cv.curve.r
    if spec.quotient is not None:
        return r + sum(depth_at(cv.components, x, rule) for x in spec.characters() if any(x))
    if rule == "additive":
        return r + sum(c.depth * count_torsion_points(c, spec.orders, "nontrivial") for c in cv.components)
    if rule != "max":
        raise ValueError(f"unknown depth rule {rule!r}")
    return r + sum(_points_with_depth(cv.components, spec.orders, False).values())


def milnor_b1(cv: CharacteristicVariety, rule: str = "max") -> int:
    """r - 1 plus the depths at the d - 1 nontrivial diagonal characters of order d.

    Every meridian maps to 1 in Z/d, whatever the degree of its component.
    """
    curve = cv.curve
    d = curve.degree
    total = curve.r - 1
    for i in range(1, d):
        x = (Fraction(i, d),) * curve.r
        total += depth_at(cv.components, x, rule)
    return total
