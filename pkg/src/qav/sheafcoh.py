"""Fat points in the plane: dimension of the linear system and superabundance.

A fat point of order ``a`` at P asks a plane curve of degree n to vanish to
order ``a`` at P, i.e. every Taylor coefficient of total degree < a in the
affine chart z = 1 is zero.  The superabundance is h1 = h0 - chi where chi
is the expected dimension; for the twists used here h2 vanishes, so h1 is
the first cohomology of the twisted ideal sheaf.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .arrangement import CurveError
from .exactmath import FieldElement, matrix_rank

__all__ = [
    "FatPointScheme",
    "CohomologyResult",
    "condition_matrix",
    "h0_linear_system",
    "superabundance",
]


def _affine(coords: Sequence) -> tuple:
    if len(coords) == 2:
        return tuple(coords)
    if len(coords) == 3:
        x, y, z = coords
        if z == 0:
            raise ValueError("fat point on the line at infinity: conditions live in the affine chart")
        zi = 1 / z
        return (x * zi, y * zi)
    raise ValueError("point coordinates must be a pair or a projective triple")


def _key(c) -> tuple:
    return c.sort_key() if isinstance(c, FieldElement) else (c,)


@dataclass(frozen=True)
class FatPointScheme:
    """Distinct points with vanishing orders, kept in a canonical order."""

    points: tuple[tuple[tuple, int], ...]

    @staticmethod
    def make(pairs: Iterable[tuple[Sequence, int]]) -> "FatPointScheme":
        pts = []
        for coords, a in pairs:
            if a < 1:
                raise ValueError("vanishing orders must be at least 1")
            pts.append((_affine(coords), int(a)))
        seen = set()
        for p, _ in pts:
            if p in seen:
                raise ValueError("fat points must be pairwise distinct")
            seen.add(p)
        pts.sort(key=lambda t: (tuple(_key(c) for c in t[0]), t[1]))
        return FatPointScheme(tuple(pts))

    @property
    def conditions(self) -> int:
        return sum(a * (a + 1) // 2 for _, a in self.points)


@dataclass(frozen=True)
class CohomologyResult:
    n: int
    h0: int
    chi: int
    h1: int
    conditions: int


def condition_matrix(n: int, scheme: FatPointScheme) -> list[list]:
    """One row per Taylor condition, one column per monomial x^p y^q, p + q <= n."""
    monos = [(p, t - p) for t in range(n + 1) for p in range(t, -1, -1)]
    rows = []
    for (u, v), a in scheme.points:
        for i in range(a):
            for j in range(a - i):
                row = []
                for p, q in monos:
                    if p < i or q < j:
                        row.append(0)
                    else:
                        row.append(comb(p, i) * comb(q, j) * u ** (p - i) * v ** (q - j))
                rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _h0(n: int, scheme: FatPointScheme) -> int:
    if n < 0:
        return 0
    total = (n + 1) * (n + 2) // 2
    if not scheme.points:
        return total
    return total - matrix_rank(condition_matrix(n, scheme))


def h0_linear_system(n: int, scheme: FatPointScheme) -> int:
    """Dimension of the space of degree-n forms through the scheme."""
    return _h0(n, scheme)


def superabundance(n: int, scheme: FatPointScheme) -> CohomologyResult:
    """h0, chi and h1 = h0 - chi of the scheme's ideal twisted by O(n), n >= -2."""
    if n < -2:
        raise CurveError("h² obstruction; unsupported twist", unsupported=True)
    h0 = _h0(n, scheme)
    chi = (n + 1) * (n + 2) // 2 - scheme.conditions
    return CohomologyResult(n, h0, chi, h0 - chi, scheme.conditions)
