"""Ready-made curves: the classical arrangements and random line sets."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .arrangement import Curve, ProjLine, SingularPointSpec
from .exactmath import QQ, FieldElement, NumberField, solve_affine

__all__ = [
    "ZETA3",
    "transversal_lines",
    "triangle",
    "ceva",
    "four_lines",
    "dual_hesse",
    "hesse",
    "random_arrangement",
    "six_cusp_sextic",
]

ZETA3 = NumberField("w", (1, 1, 1))


def _projective_vertices(lines: Sequence[ProjLine]) -> list[tuple[FieldElement, ...]]:
    return [lines[i].meet(lines[j]) for i, j in combinations(range(len(lines)), 2)]


def transversal_lines(lines: Sequence[ProjLine], F: NumberField) -> list[ProjLine]:
    """Change coordinates so that no vertex lies on z = 0.

    Searches small integer lines for a new line at infinity that avoids every
    pairwise intersection, then rewrites the equations in the new frame.
    Lines already transversal are returned unchanged.
    """
    verts = _projective_vertices(lines)
    if all(not v[2].is_zero() for v in verts) and not any(L.is_infinity() for L in lines):
        return list(lines)
    for ell in sorted(product(range(-3, 4), repeat=3), key=lambda t: (sum(map(abs, t)), t)):
        if not any(ell[:2]):
            continue
        if any((ell[0] * v[0] + ell[1] * v[1] + ell[2] * v[2]).is_zero() for v in verts):
            continue
        rows = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        for i, j in ((0, 1), (0, 2), (1, 2)):
            T = [rows[i], rows[j], list(ell)]
            if _det3(T):
                break
        Tinv = _inverse3(T)
        out = []
        for L in lines:
            a = L.coeffs
            new = [sum((a[k] * Tinv[k][c] for k in range(3)), F.zero()) for c in range(3)]
            out.append(ProjLine.make(F, *new))
        return out
    raise RuntimeError("no transversal line at infinity found")


def _det3(T) -> int:
    return (
        T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1])
        - T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0])
        + T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0])
    )


def _inverse3(T) -> list[list[Fraction]]:
    cols = []
    for c in range(3):
        e = [Fraction(int(r == c)) for r in range(3)]
        x, _ = solve_affine(T, e)
        cols.append(x)
    return [[cols[c][r] for c in range(3)] for r in range(3)]


def _lines(F: NumberField, triples) -> list[ProjLine]:
    return [ProjLine.make(F, *t) for t in triples]


def triangle() -> Curve:
    """Three concurrent lines x = 0, y = 0, x = y."""
    return Curve.from_lines(_lines(QQ, [(1, 0, 0), (0, 1, 0), (1, -1, 0)]), QQ)


def four_lines() -> Curve:
    """Four lines through the origin."""
    return Curve.from_lines(_lines(QQ, [(1, 0, 0), (0, 1, 0), (1, -1, 0), (1, 1, 0)]), QQ)


def ceva() -> Curve:
    """The complete quadrilateral: sides x, y, z and medians x-y, y-z, x-z.

    Triple points sit on lines (1,2,4), (2,3,5), (1,3,6), (4,5,6) in
    1-based numbering.
    """
    raw = _lines(QQ, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (0, 1, -1), (1, 0, -1)])
    return Curve.from_lines(transversal_lines(raw, QQ), QQ)


def dual_hesse() -> Curve:
    """(x^3 - y^3)(y^3 - z^3)(z^3 - x^3) = 0 over Q(w), w^2 + w + 1 = 0."""
    F = ZETA3
    w = [F.one(), F.gen(), F.gen() * F.gen()]
    raw = []
    for k in range(3):
        raw.append((F.one(), -w[k], F.zero()))  # x = w^k y
    for k in range(3):
        raw.append((F.zero(), F.one(), -w[k]))  # y = w^k z
    for k in range(3):
        raw.append((-w[k], F.zero(), F.one()))  # z = w^k x
    return Curve.from_lines(transversal_lines(_lines(F, raw), F), F)


def hesse() -> Curve:
    """The 12 lines of the four singular fibers of x^3 + y^3 + z^3 - 3 t xyz.

    Lines 0-2 are x, y, z; line 3 + 3a + b is x + w^a y + w^b z.  Fibers
    group the latter by a + b mod 3.
    """
    F = ZETA3
    w = [F.one(), F.gen(), F.gen() * F.gen()]
    raw = [(F.one(), F.zero(), F.zero()), (F.zero(), F.one(), F.zero()), (F.zero(), F.zero(), F.one())]
    for a in range(3):
        for b in range(3):
            raw.append((F.one(), w[a], w[b]))
    return Curve.from_lines(transversal_lines(_lines(F, raw), F), F)


def hesse_fibers() -> list[list[int]]:
    """Line indices of :func:`hesse` grouped by singular fiber."""
    fibers = [[0, 1, 2]]
    for c in range(3):
        fibers.append([3 + 3 * a + b for a in range(3) for b in range(3) if (a + b) % 3 == c])
    return fibers


def random_arrangement(seed: int, r: int | None = None, bound: int = 3) -> Curve:
    """Random rational lines, biased toward concurrency.

    Lines are drawn through points of a small grid so that multiple points
    appear; draws are repeated until the set is reduced and transversal.
    """
    rng = random.Random(seed)
    r = r if r is not None else rng.randint(3, 8)
    pts = [(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(3)]
    while True:
        lines: list[ProjLine] = []
        tries = 0
        while len(lines) < r and tries < 1000:
            tries += 1
            if rng.random() < 0.7:
                px, py = rng.choice(pts)
                a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
                if a == 0 and b == 0:
                    continue
                L = ProjLine.make(QQ, a, b, -(a * px + b * py))
            else:
                a, b, c = (rng.randint(-bound, bound) for _ in range(3))
                if a == 0 and b == 0:
                    continue
                L = ProjLine.make(QQ, a, b, c)
            if any(L == M or L.meet(M)[2].is_zero() for M in lines):
                continue
            lines.append(L)
        if len(lines) == r:
            return Curve.from_lines(lines, QQ)
        pts = [(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(3)]


def six_cusp_sextic(on_conic: bool = True) -> Curve:
    """An irreducible sextic declared with six cusps.

    With ``on_conic`` the cusps lie on the unit circle (as for the dual of a
    smooth cubic); otherwise they are in general position.  Only the declared
    singular data matter to the pipeline.
    """
    if on_conic:
        # rational points of x^2 + y^2 = 1
        ts = [0, 1, 2, 3, Fraction(1, 2), -1]
        coords = [(Fraction(1 - t * t, 1 + t * t), Fraction(2 * t, 1 + t * t)) for t in map(Fraction, ts)]
    else:
        coords = [(0, 0), (1, 0), (0, 1), (2, 3), (5, 1), (3, 7)]
    points = [SingularPointSpec((QQ(x), QQ(y)), "cusp", (0,)) for x, y in coords]
    return Curve.from_components((6,), points, QQ)
