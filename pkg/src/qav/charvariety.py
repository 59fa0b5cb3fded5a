"""Characteristic varieties assembled from contributing faces.

Each contributing face with positive superabundance gives a coset of a
subtorus of (C*)^r: the saturated exponent rows of its equations, translated
by the exponential of a witness point.  Characters are written additively,
as vectors of rationals mod 1 (``x_i`` stands for ``exp(2 pi i x_i)``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import lcm, prod
from typing import Iterable, Sequence

from .arrangement import Curve, Subcurve, enumerate_subcurves
from .exactmath import hermite_normal_form, matrix_rank, rank_nullspace, saturate_row_lattice, solve_affine
from .quasiadjunction import QFace, enumerate_faces, face_order, vanishing_guaranteed
from .sheafcoh import CohomologyResult, FatPointScheme, superabundance

__all__ = [
    "TorusComponent",
    "FaceRecord",
    "CharacteristicVariety",
    "face_scheme",
    "face_twist",
    "component_from_face",
    "assemble",
    "contains",
    "is_contained",
    "depth_at",
    "count_torsion_points",
    "torsion_points",
    "frac_vector",
]


def _mod1(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def frac_vector(xs: Iterable) -> tuple[Fraction, ...]:
    """Reduce each entry into [0, 1)."""
    return tuple(_mod1(Fraction(x)) for x in xs)


@dataclass(frozen=True)
class TorusComponent:
    """Coset ``{x : rows . x = beta mod 1}`` in additive character coordinates.

    ``rows`` is the Hermite basis of a saturated lattice, so the coset is
    connected; coordinates off ``support`` are pinned to 0 by unit rows.
    """

    r: int
    support: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    beta: tuple[Fraction, ...]
    depth: int
    essential: bool
    provenance: tuple[tuple[int, ...], str]
    witness: tuple[Fraction, ...]
    order: int = 1

    @property
    def dimension(self) -> int:
        return self.r - len(self.rows)

    @property
    def through_identity(self) -> bool:
        return not any(self.beta)

    @property
    def key(self) -> tuple:
        return (self.support, self.rows, self.beta)

    def translation_order(self) -> int:
        return lcm(*(b.denominator for b in self.beta)) if self.beta else 1

    def conjugate(self) -> "TorusComponent":
        sub, ident = self.provenance
        return TorusComponent(
            self.r,
            self.support,
            self.rows,
            frac_vector(-b for b in self.beta),
            self.depth,
            self.essential,
            (sub, ident + "*"),
            tuple(_mod1(1 - w) if i in self.support else Fraction(0) for i, w in enumerate(self.witness)),
            self.order,
        )

    def to_json(self) -> dict:
        return {
            "support": list(self.support),
            "rows": [list(r) for r in self.rows],
            "beta": [str(b) for b in self.beta],
            "dimension": self.dimension,
            "depth": self.depth,
            "essential": self.essential,
            "provenance": {"subcurve": list(self.provenance[0]), "face": self.provenance[1]},
        }


@dataclass(frozen=True)
class FaceRecord:
    """A contributing face with its cohomology.

    ``cohomology`` is None when the face was dismissed by the blow-up bound
    without computing anything (fast mode); its h1 is then 0.
    """

    face: QFace
    order: int
    twist: int
    cohomology: CohomologyResult | None

    @property
    def h1(self) -> int:
        return self.cohomology.h1 if self.cohomology is not None else 0

    @property
    def key(self) -> frozenset:
        return frozenset(self.face.choices)


@dataclass
class CharacteristicVariety:
    curve: Curve
    fast: bool
    records: dict[tuple[int, ...], list[FaceRecord]]
    components: list[TorusComponent]
    warnings: list[str] = field(default_factory=list)
    subcurves_examined: int = 0

    def faces_of(self, support: Sequence[int]) -> list[FaceRecord]:
        return self.records.get(tuple(support), [])

    def with_support(self, support: Sequence[int]) -> list[TorusComponent]:
        s = tuple(support)
        return [c for c in self.components if c.support == s]


def face_scheme(curve: Curve, face: QFace) -> FatPointScheme:
    """Fat points of S with the exponents of the chosen local faces."""
    return FatPointScheme.make(
        (curve.vertices[v].coords, a) for v, a in face.exponents if a > 0
    )


def face_twist(face: QFace) -> int:
    """deg C' - 3 - l for a contributing face of the subcurve C'."""
    return sum(face.degrees) - 3 - int(face.level)


def _integer_coefficients(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = lcm(*(Fraction(a).denominator for a in row))
        out.append([int(Fraction(a) * den) for a in row])
    return out


def _ambient(face: QFace, r: int) -> tuple[list[list[int]], tuple[Fraction, ...]]:
    sat = saturate_row_lattice(_integer_coefficients(face.rows))
    rows = []
    for s in sat:
        full = [0] * r
        for pos, c in zip(face.support, s):
            full[pos] = c
        rows.append(full)
    for j in range(r):
        if j not in face.support:
            rows.append([int(i == j) for i in range(r)])
    w = [Fraction(0)] * r
    for pos, x in zip(face.support, face.witness):
        w[pos] = x
    return hermite_normal_form(rows), tuple(w)


def component_from_face(face: QFace, h1: int, r: int | None = None, essential: bool | None = None) -> TorusComponent:
    """The coset through exp(witness) cut out by the face's saturated rows."""
    if h1 < 1:
        raise ValueError("only faces with positive superabundance give components")
    r = r if r is not None else len(face.support)
    rows, w = _ambient(face, r)
    beta = frac_vector(sum(a * x for a, x in zip(row, w)) for row in rows)
    return TorusComponent(
        r,
        face.support,
        tuple(tuple(row) for row in rows),
        beta,
        h1,
        essential if essential is not None else len(face.support) == r,
        (face.support, face.ident),
        w,
        face_order(face),
    )


def _covered(sub: Subcurve) -> bool:
    seen = {b for v in sub.eligible() for b in v.branches}
    return len(seen) == len(sub.support)


def _weight(sub: Subcurve) -> int:
    return sum(v.multiplicity ** 2 for v in sub.eligible())


def _ordinary_only(sub: Subcurve) -> bool:
    return all(v.kind == "ordinary" for v in sub.eligible())


def assemble(curve: Curve, fast: bool = False) -> CharacteristicVariety:
    """Faces, cohomology and components over every subcurve.

    A subcurve with a component through no eligible vertex has that
    coordinate free on every face, so nothing there is contributing and it
    is skipped.  In ``fast`` mode (lines only) the blow-up bound
    d^2 > sum m_P^2 over S is used to skip subcurves and faces whose
    superabundance must vanish.
    """
    use_bound = fast and curve.mode == "lines"
    records: dict[tuple[int, ...], list[FaceRecord]] = {}
    found: dict[tuple, TorusComponent] = {}
    notes: list[str] = []
    examined = 0
    for sub in enumerate_subcurves(curve):
        if not sub.eligible() or not _covered(sub):
            continue
        d = sub.degree
        bound = use_bound and _ordinary_only(sub)
        if bound and d * d > _weight(sub):
            continue
        examined += 1
        recs = []
        for face in enumerate_faces(sub, d * d if bound else None):
            if not face.contributing:
                continue
            n = face_twist(face)
            if bound and vanishing_guaranteed(face):
                recs.append(FaceRecord(face, face_order(face), n, None))
                continue
            coh = superabundance(n, face_scheme(curve, face))
            recs.append(FaceRecord(face, face_order(face), n, coh))
        if recs:
            records[sub.support] = recs
        for rec in recs:
            if rec.h1 < 1:
                continue
            comp = component_from_face(rec.face, rec.h1, curve.r)
            for c in (comp, comp.conjugate()):
                old = found.get(c.key)
                if old is None:
                    found[c.key] = c
                    continue
                if c.depth != old.depth:
                    notes.append(
                        f"merged equal cosets from {old.provenance[1]} (depth {old.depth}) "
                        f"and {c.provenance[1]} (depth {c.depth}); kept {max(c.depth, old.depth)}"
                    )
                if c.depth > old.depth:
                    found[c.key] = c
    comps = _drop_dominated(list(found.values()))
    comps.sort(key=lambda c: (len(c.support), c.support, c.rows, c.beta))
    return CharacteristicVariety(curve, use_bound, records, comps, notes, examined)


def is_contained(a: TorusComponent, b: TorusComponent) -> bool:
    """Whether the coset ``a`` lies inside the coset ``b``."""
    ra = [list(r) for r in a.rows]
    k = len(ra)
    if any(matrix_rank(ra + [list(row)]) > k for row in b.rows):
        return False
    return contains(b, a.witness)


def _drop_dominated(comps: list[TorusComponent]) -> list[TorusComponent]:
    # a coset inside another of the same support and at least its depth is
    # not an irreducible piece of the jump locus
    out = []
    for a in comps:
        if any(
            b is not a and b.support == a.support and b.depth >= a.depth
            and b.dimension > a.dimension and is_contained(a, b)
            for b in comps
        ):
            continue
        out.append(a)
    return out


def _check_nontrivial(x: Sequence[Fraction]) -> None:
    if not any(frac_vector(x)):
        raise ValueError("excluded by formulas; sums run over nontrivial ω")


def contains(comp: TorusComponent, x: Sequence[Fraction]) -> bool:
    """Exact membership: every row satisfies rows . x = beta mod 1."""
    return all(
        _mod1(sum(a * Fraction(v) for a, v in zip(row, x)) - b) == 0
        for row, b in zip(comp.rows, comp.beta)
    )


def depth_at(components: Iterable[TorusComponent], x: Sequence[Fraction], rule: str = "max") -> int:
    """Depth of the character x read off the component list.

    ``max`` is the largest depth of a component through x; ``additive`` sums
    the depths of all distinct components through x.
    """
    _check_nontrivial(x)
    depths = [c.depth for c in components if contains(c, x)]
    if rule == "max":
        return max(depths, default=0)
    if rule == "additive":
        return sum(depths)
    raise ValueError(f"unknown depth rule {rule!r}")


def _kernel_basis(comp: TorusComponent) -> list[list[int]]:
    if comp.dimension == 0:
        return []
    _, null = rank_nullspace([list(r) for r in comp.rows], comp.r)
    ints = _integer_coefficients(null)
    return saturate_row_lattice(ints)


def torsion_points(comp: TorusComponent, orders: Sequence[int]) -> set[tuple[Fraction, ...]]:
    """Every character of prod mu_{m_i} on the component, listed explicitly.

    The coset is w + B t mod 1 with B a basis of the kernel lattice.  Fixing
    the coordinates on a set I of rows where B is invertible determines t up
    to the finite group Z^k / B_I Z^k, so only prod_{i in I} m_i values of
    x_I need trying.
    """
    w = comp.witness
    B = _kernel_basis(comp)
    k = len(B)
    if k == 0:
        x = frac_vector(w)
        return {x} if all((v * m).denominator == 1 for v, m in zip(x, orders)) else set()
    cols = [[B[a][j] for a in range(k)] for j in range(comp.r)]  # row j of the r x k matrix
    best = None
    for I in combinations(range(comp.r), k):
        sub = [cols[j] for j in I]
        det = _det([[Fraction(v) for v in row] for row in sub])
        if det and (best is None or abs(det) < abs(best[1])):
            best = (I, det)
            if abs(det) == 1:
                break
    I, det = best
    inv = _inverse([[Fraction(v) for v in cols[j]] for j in I])
    span = range(abs(int(det)))
    out = set()
    for xs in product(*(range(orders[j]) for j in I)):
        for z in product(span, repeat=k):
            rhs = [Fraction(xv, orders[j]) - w[j] + zv for xv, j, zv in zip(xs, I, z)]
            t = [sum(a * b for a, b in zip(row, rhs)) for row in inv]
            x = frac_vector(w[j] + sum(c * tv for c, tv in zip(cols[j], t)) for j in range(comp.r))
            if all((v * m).denominator == 1 for v, m in zip(x, orders)):
                out.add(x)
    return out


def _det(M: list[list[Fraction]]) -> Fraction:
    n = len(M)
    A = [row[:] for row in M]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


def _inverse(M: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    cols = [solve_affine(M, [Fraction(int(i == j)) for i in range(n)])[0] for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _lattice_index_and_member(gens: list[list[int]], target: list[int]) -> tuple[int, bool]:
    """Index of the full-rank lattice spanned by ``gens`` and whether it holds ``target``."""
    H = hermite_normal_form(gens)
    t = list(target)
    for row in H:
        p = next(j for j, a in enumerate(row) if a)
        if t[p] % row[p]:
            return prod(r[next(j for j, a in enumerate(r) if a)] for r in H), False
        q = t[p] // row[p]
        t = [a - q * b for a, b in zip(t, row)]
    return prod(r[next(j for j, a in enumerate(r) if a)] for r in H), not any(t)


def _count_all(comp: TorusComponent, orders: Sequence[int]) -> int:
    k = len(comp.rows)
    if k == 0:
        return prod(orders)
    L = lcm(*orders, *(b.denominator for b in comp.beta))
    gens = [[row[j] * (L // orders[j]) for row in comp.rows] for j in range(comp.r)]
    gens += [[L * (s == t) for t in range(k)] for s in range(k)]
    target = [int(b * L) for b in comp.beta]
    index, member = _lattice_index_and_member(gens, target)
    if not member:
        return 0
    # image has L^k / index elements; the solution set is a kernel coset
    return prod(orders) * index // L ** k


def count_torsion_points(comp: TorusComponent, orders: Sequence[int], predicate: str = "all") -> int:
    """Characters of prod mu_{m_i} on the component.

    ``full-support`` keeps characters whose coordinates are nonzero at every
    index of ``comp.support``; ``nontrivial`` drops the trivial character.
    """
    orders = tuple(int(m) for m in orders)
    if len(orders) != comp.r or any(m < 1 for m in orders):
        raise ValueError("one positive order per coordinate is required")
    if predicate == "all":
        return _count_all(comp, orders)
    if predicate == "nontrivial":
        return _count_all(comp, orders) - (1 if comp.through_identity else 0)
    if predicate == "full-support":
        total = 0
        sup = comp.support
        for k in range(len(sup) + 1):
            for J in combinations(sup, k):
                pinned = tuple(1 if j in J else m for j, m in enumerate(orders))
                total += (-1) ** k * _count_all(comp, pinned)
        return total
    raise ValueError(f"unknown predicate {predicate!r}")
