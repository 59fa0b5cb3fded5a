"""Faces of quasiadjunction: local catalogs, global enumeration, orders.

A global face of a subcurve is the affine solution set of one local face
equation per chosen vertex, cut down to the open unit cube of the
subcurve's coordinates.  Faces are enumerated by a depth-first search over
the eligible vertices that keeps the chosen system in reduced echelon form,
prunes as soon as the system leaves the open cube (feasibility only shrinks
as equations are added) and refuses to skip a vertex whose equation already
holds identically, so that every saturated choice appears exactly once.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .arrangement import InducedVertex, SingularPointSpec, Subcurve
from .exactmath import (
    AffineLatticePointSet,
    enumerate_affine_lattice_points,
    interior_feasible,
    rank_nullspace,
    smith_normal_form,
)

__all__ = [
    "LocalFaceDescriptor",
    "QFace",
    "local_faces",
    "vertex_faces",
    "enumerate_faces",
    "face_order",
    "face_lattice_points",
    "vanishing_guaranteed",
]


@dataclass(frozen=True)
class LocalFaceDescriptor:
    """Equations in the branch variables plus the ideal exponent ``a`` (stalk M^a).

    ``equations`` holds pairs ``(coefficients per branch, rhs)``.
    """

    equations: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    exponent: int
    label: str = ""

    def __post_init__(self):
        if not self.equations:
            raise ValueError("a local face needs at least one equation")
        if self.exponent < 0:
            raise ValueError("ideal exponent must be nonnegative")


def local_faces(point: SingularPointSpec | InducedVertex) -> list[LocalFaceDescriptor]:
    """Catalog faces for ``point``'s local type.

    An ordinary m-fold point has faces ``sum = s`` with exponent ``m-1-s``
    for s = 1..m-2; a cusp has ``x = 1/6``; a tacnode ``x + y = 1/2``; both
    with exponent 1.  Custom descriptors pass through unchanged.
    """
    m = len(point.branches)
    if point.kind == "ordinary":
        ones = (Fraction(1),) * m
        return [
            LocalFaceDescriptor(((ones, Fraction(s)),), m - 1 - s, f"s={s}")
            for s in range(1, m - 1)
        ]
    if point.kind == "cusp":
        return [LocalFaceDescriptor((((Fraction(1),), Fraction(1, 6)),), 1, "cusp")]
    if point.kind == "tacnode":
        return [LocalFaceDescriptor((((Fraction(1), Fraction(1)), Fraction(1, 2)),), 1, "tacnode")]
    return list(point.descriptors)


def vertex_faces(v: InducedVertex, width: int) -> list[tuple[LocalFaceDescriptor, list[tuple[list[Fraction], Fraction]]]]:
    """Local faces of ``v`` with equations rewritten in subcurve coordinates."""
    out = []
    for lf in local_faces(v):
        eqs = []
        for coeffs, rhs in lf.equations:
            if len(coeffs) != len(v.branches):
                raise ValueError("local face equation does not match the branch count")
            row = [Fraction(0)] * width
            for b, c in zip(v.branches, coeffs):
                row[b] += c
            eqs.append((row, Fraction(rhs)))
        out.append((lf, eqs))
    return out


@dataclass(frozen=True)
class QFace:
    """A saturated face of a subcurve.

    ``choices`` pairs each vertex of S (index into the whole curve's vertex
    list) with the index of its local face; ``rows``/``rhs`` is the system in
    the subcurve's coordinates; ``point`` + span(``basis``) is its solution
    set and ``witness`` a point of it inside the open cube.
    """

    support: tuple[int, ...]
    degrees: tuple[int, ...]
    choices: tuple[tuple[int, int], ...]
    labels: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    point: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    witness: tuple[Fraction, ...]
    exponents: tuple[tuple[int, int], ...]
    multiplicities: tuple[int, ...]
    level: Fraction | None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def contributing(self) -> bool:
        return self.level is not None

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.choices)

    @property
    def ident(self) -> str:
        sup = ",".join(str(i) for i in self.support)
        ch = ",".join(f"P{v}:{lab}" for (v, _), lab in zip(self.choices, self.labels))
        return f"[{sup}]{{{ch}}}"


class _Echelon:
    """Reduced row echelon system kept up to date as equations arrive."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[tuple[list[Fraction], Fraction, int]] = []

    def copy(self) -> "_Echelon":
        e = _Echelon(self.width)
        e.rows = list(self.rows)
        return e

    def reduce(self, row: Sequence[Fraction], rhs: Fraction) -> tuple[list[Fraction], Fraction]:
        r = list(row)
        c = rhs
        for er, eb, p in self.rows:
            f = r[p]
            if f:
                r = [a - f * b for a, b in zip(r, er)]
                c -= f * eb
        return r, c

    def constant_value(self, row: Sequence[Fraction]) -> Fraction | None:
        """Value of the form ``row`` if it is constant on the solution set."""
        r, c = self.reduce(row, Fraction(0))
        return None if any(r) else -c

    def add(self, row: Sequence[Fraction], rhs: Fraction) -> bool | None:
        """Add an equation; True if new, False if implied, None if inconsistent."""
        r, c = self.reduce(row, rhs)
        p = next((j for j, a in enumerate(r) if a), None)
        if p is None:
            return False if c == 0 else None
        inv = 1 / r[p]
        r = [a * inv for a in r]
        c *= inv
        new = []
        for er, eb, q in self.rows:
            f = er[p]
            if f:
                er = [a - f * b for a, b in zip(er, r)]
                eb = eb - f * c
            new.append((er, eb, q))
        new.append((r, c, p))
        new.sort(key=lambda t: t[2])
        self.rows = new
        return True

    def system(self) -> tuple[list[list[Fraction]], list[Fraction]]:
        return [list(r) for r, _, _ in self.rows], [b for _, b, _ in self.rows]


def _holds_identically(ech: _Echelon, eqs) -> bool:
    return all(ech.constant_value(row) == rhs for row, rhs in eqs)


def _contradicted(ech: _Echelon, eqs) -> bool:
    for row, rhs in eqs:
        v = ech.constant_value(row)
        if v is not None and v != rhs:
            return True
    return False


def enumerate_faces(subcurve: Subcurve, min_weight: int | None = None) -> list[QFace]:
    """All saturated faces of ``subcurve`` meeting its open cube.

    Candidates run over subsets S of eligible vertices (by size, then
    lexicographically) and local-face choices; the output is sorted the
    same way.  With ``min_weight`` only faces whose S has sum of squared
    multiplicities at least that value are produced (branches that cannot
    reach it are cut).
    """
    width = len(subcurve.support)
    elig = subcurve.eligible()
    weights = [v.multiplicity ** 2 for v in elig]
    tail = [sum(weights[i:]) for i in range(len(elig) + 1)]
    options = [vertex_faces(v, width) for v in elig]
    degs = [Fraction(d) for d in subcurve.degrees]
    found: list[QFace] = []

    def emit(ech: _Echelon, chosen: list[tuple[int, int]], witness):
        A = [row for i, k in chosen for row, _ in options[i][k][1]]
        b = [rhs for i, k in chosen for _, rhs in options[i][k][1]]
        _, basis = rank_nullspace(ech.system()[0], width)
        x0 = [Fraction(0)] * width
        for (row, c, p) in ech.rows:
            x0[p] = c
        used = {i for i, _ in chosen}
        avoid = [eqs for i, opts in enumerate(options) if i not in used for _, eqs in opts]
        witness = _generic_point(witness, basis, avoid)
        lev = ech.constant_value(degs)
        level = lev if lev is not None and lev.denominator == 1 else None
        vs = [elig[i] for i, _ in chosen]
        found.append(
            QFace(
                support=subcurve.support,
                degrees=subcurve.degrees,
                choices=tuple((v.parent, k) for v, (_, k) in zip(vs, chosen)),
                labels=tuple(options[i][k][0].label for i, k in chosen),
                rows=tuple(tuple(r) for r in A),
                rhs=tuple(b),
                point=tuple(x0),
                basis=tuple(tuple(v) for v in basis),
                witness=tuple(witness),
                exponents=tuple((v.parent, options[i][k][0].exponent) for v, (i, k) in zip(vs, chosen)),
                multiplicities=tuple(v.multiplicity for v in vs),
                level=level,
            )
        )

    def dfs(i: int, ech: _Echelon, chosen: list, skipped: list[int], witness):
        if min_weight is not None and sum(weights[j] for j, _ in chosen) + tail[i] < min_weight:
            return
        if i == len(elig):
            if chosen:
                emit(ech, chosen, witness)
            return
        forced = [k for k, (_, eqs) in enumerate(options[i]) if _holds_identically(ech, eqs)]
        if forced:
            dfs(i + 1, ech, chosen + [(i, forced[0])], skipped, witness)
            return
        for k, (_, eqs) in enumerate(options[i]):
            if _contradicted(ech, eqs):
                continue
            e2 = ech.copy()
            if any(e2.add(row, rhs) is None for row, rhs in eqs):
                continue
            A, b = e2.system()
            ok, w = interior_feasible(A, b)
            if not ok:
                continue
            if any(
                _holds_identically(e2, eqs2)
                for j in skipped
                for _, eqs2 in options[j]
            ):
                continue
            dfs(i + 1, e2, chosen + [(i, k)], skipped, w)
        dfs(i + 1, ech, chosen, skipped + [i], witness)

    dfs(0, _Echelon(width), [], [], None)
    found.sort(key=lambda f: (len(f.choices), f.choices))
    return found


def _dot(row, x) -> Fraction:
    return sum((a * v for a, v in zip(row, x) if a), Fraction(0))


def _bad_steps(eqs, w, v) -> set | None:
    """Steps t with w + t v solving the system ``eqs``; None means every t."""
    fixed = None
    for row, c in eqs:
        a, b = _dot(row, w) - c, _dot(row, v)
        if b == 0:
            if a != 0:
                return set()
            continue
        t = -a / b
        if fixed is not None and fixed != t:
            return set()
        fixed = t
    return None if fixed is None else {fixed}


def _generic_point(w, basis, avoid):
    """Move ``w`` inside its face, staying in the open cube, off every system in ``avoid``.

    Along a line each system is met at most once unless it contains the
    line, so a direction that no system contains leaves finitely many bad
    steps to dodge.
    """
    if not any(all(_dot(row, w) == c for row, c in eqs) for eqs in avoid):
        return w
    margin = min(min(x, 1 - x) for x in w)
    for j in range(1, 64):
        # moment-curve directions: only finitely many are contained in a bad system
        v = [sum(Fraction(j) ** k * b[i] for k, b in enumerate(basis)) for i in range(len(w))]
        size = max(abs(a) for a in v)
        if size == 0:
            continue
        bad: set = set()
        for eqs in avoid:
            steps = _bad_steps(eqs, w, v)
            if steps is None:
                break
            bad |= steps
        else:
            step = margin / (2 * size)
            n = 1
            while step / n in bad:
                n += 1
            return [a + step / n * b for a, b in zip(w, v)]
    raise AssertionError("no generic point found on a saturated face")


def face_order(face: QFace) -> int:
    """Torsion order of Z^r modulo the coefficient rows of the face's equations.

    Each equation is first scaled to a primitive integer row (coefficients
    and right-hand side together); the order is then the gcd of the maximal
    nonzero minors of the coefficient part, read off the Smith form.
    """
    rows = []
    for row, c in zip(face.rows, face.rhs):
        vals = list(row) + [c]
        den = lcm(*(v.denominator for v in vals))
        ints = [int(v * den) for v in vals]
        g = gcd(*ints)
        rows.append([x // g for x in ints[:-1]])
    return smith_normal_form(rows).gcd_maximal_minors


def face_lattice_points(
    face: QFace,
    orders: Sequence[int],
    others: Sequence[Sequence[tuple[Sequence[Fraction], Fraction]]] = (),
) -> list[tuple[Fraction, ...]]:
    """Points with coordinates in (1/m_j)Z in the face's open-cube part.

    ``orders`` are the branching orders of the subcurve's components.  Points
    on any equation system in ``others`` (local faces of vertices outside S)
    lie on the boundary and are dropped.
    """
    pts = enumerate_affine_lattice_points(AffineLatticePointSet(face.rows, face.rhs, tuple(orders)))
    if not others:
        return pts
    out = []
    for x in pts:
        if any(all(sum(a * v for a, v in zip(row, x)) == c for row, c in eqs) for eqs in others):
            continue
        out.append(x)
    return out


def vanishing_guaranteed(face: QFace) -> bool:
    """Blow-up positivity test: deg^2 > sum of m_P^2 over S kills h^1.

    For S of uniform multiplicity m this is the bound d^2 > m^2 |S|.  Only
    ordinary points are covered; anything else returns False.
    """
    d = sum(face.degrees)
    return d * d > sum(m * m for m in face.multiplicities) and all(m >= 3 for m in face.multiplicities)
