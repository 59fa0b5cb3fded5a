"""Resonance of a line arrangement from the Aomoto complex.

For a residue vector s the degree-one cocycles of ``A -> A ^ s`` are the
solutions A of

    A_j * (sum_{i through P} s_i) - (sum_{i through P} A_i) * s_j = 0

for every vertex P and every line j through P.  Their dimension minus one
is h1(s).  Components are found by sweeping a sub-arrangement L' and a set
T of its vertices of multiplicity >= 3, sampling s in

    W = {s supported on L' : vertex sums over T vanish}

and keeping the solution space whenever h1(s) >= 1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .arrangement import Curve
from .charvariety import TorusComponent
from .exactmath import rank_nullspace, rref as _rref

__all__ = [
    "ResonanceComponent",
    "aomoto_system",
    "aomoto_h1",
    "resonance_components",
    "TangentCheck",
    "verify_thm54",
]

MAX_DRAWS = 64


@dataclass(frozen=True)
class ResonanceComponent:
    """A linear subspace of Q^r given by its reduced echelon basis."""

    basis: tuple[tuple[Fraction, ...], ...]
    support: tuple[int, ...]
    vertices: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def h1(self) -> int:
        return self.dimension - 1

    @property
    def essential(self) -> bool:
        r = len(self.basis[0]) if self.basis else 0
        return len(self.support) == r

    def to_json(self) -> dict:
        return {
            "basis": [[str(x) for x in v] for v in self.basis],
            "dimension": self.dimension,
            "support": list(self.support),
            "vertices": list(self.vertices),
        }


def _canonical(vectors: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    R, _ = _rref([[Fraction(x) for x in v] for v in vectors])
    return tuple(tuple(x for x in row) for row in R)


def _incidence(curve: Curve) -> list[tuple[int, ...]]:
    if curve.mode != "lines":
        raise ValueError("resonance is defined here for line arrangements only")
    return [v.components for v in curve.vertices]


def aomoto_system(curve: Curve, s: Sequence[Fraction]) -> list[list[Fraction]]:
    """Rows of the linear system in A for the residue vector s."""
    r = curve.r
    rows = []
    for lines in _incidence(curve):
        total = sum(Fraction(s[i]) for i in lines)
        for j in lines:
            row = [Fraction(0)] * r
            row[j] += total
            for i in lines:
                row[i] -= Fraction(s[j])
            rows.append(row)
    return rows


def aomoto_h1(curve: Curve, s: Sequence[Fraction]) -> int:
    """dim H^1 of the Aomoto complex at s (the span of s itself removed)."""
    if not any(s):
        raise ValueError("the residue vector must be nonzero")
    if len(s) != curve.r:
        raise ValueError("one residue per line is required")
    rank, _ = rank_nullspace(aomoto_system(curve, s), curve.r)
    return curve.r - rank - 1


def _solution_space(curve: Curve, s) -> tuple[tuple[Fraction, ...], ...]:
    _, null = rank_nullspace(aomoto_system(curve, s), curve.r)
    return _canonical(null)


def _blocks(lines: Sequence[int], joins: Sequence[Sequence[int]]) -> int:
    parent = {l: l for l in lines}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for group in joins:
        g = [l for l in group if l in parent]
        for a in g[1:]:
            parent[find(a)] = find(g[0])
    return len({find(l) for l in lines})


def _sweep_sets(width: int, sums: list[list[Fraction]]):
    """Saturated subsets T of the vertex sums, with the echelon rows of W's equations.

    A branch is cut when a coordinate is forced to zero (that subspace lives
    on a smaller sub-arrangement) or when a skipped vertex sum vanishes
    identically (the same W arises with that vertex included).
    """
    out = []

    def forced_zero(R) -> bool:
        # coordinate e_j is zero on W iff e_j lies in the row span
        for j in range(width):
            e = [Fraction(int(i == j)) for i in range(width)]
            if len(_rref(R + [e])[0]) == len(R):
                return True
        return False

    def in_span(R, row) -> bool:
        return len(_rref(R + [row])[0]) == len(R)

    def dfs(i: int, R, chosen, skipped):
        if i == len(sums):
            if chosen:
                out.append((tuple(chosen), R))
            return
        if R and in_span(R, sums[i]):
            dfs(i + 1, R, chosen + [i], skipped)
            return
        R2 = _rref(R + [sums[i]])[0]
        if width - len(R2) >= 2 and not forced_zero(R2):
            if not any(in_span(R2, sums[j]) for j in skipped):
                dfs(i + 1, R2, chosen + [i], skipped)
        dfs(i + 1, R, chosen, skipped + [i])

    dfs(0, [], [], [])
    return out


def resonance_components(curve: Curve, seed: int = 0) -> list[ResonanceComponent]:
    """Maximal resonance components of positive h1, deduplicated."""
    inc = _incidence(curve)
    r = curve.r
    found: dict[tuple, ResonanceComponent] = {}
    for size in range(3, r + 1):
        for lines in combinations(range(r), size):
            pos = {l: k for k, l in enumerate(lines)}
            local = [tuple(l for l in P if l in pos) for P in inc]
            idx = [k for k, P in enumerate(local) if len(P) >= 3]
            if not idx:
                continue
            sums = [[Fraction(int(l in local[k])) for l in lines] for k in idx]
            for chosen, R in _sweep_sets(size, sums):
                T = {idx[c] for c in chosen}
                rest = [P for k, P in enumerate(local) if k not in T and len(P) >= 2]
                if _blocks(lines, rest) < 3:
                    continue
                _, W = rank_nullspace(R, size)
                s = _draw(W, lines, rest, f"{seed}:{lines}:{sorted(T)}")
                if s is None:
                    continue
                full = [Fraction(0)] * r
                for l, v in zip(lines, s):
                    full[l] = v
                if aomoto_h1(curve, full) < 1:
                    continue
                basis = _solution_space(curve, full)
                if basis not in found:
                    sup = tuple(j for j in range(r) if any(v[j] for v in basis))
                    found[basis] = ResonanceComponent(basis, sup, tuple(sorted(T)))
    comps = list(found.values())
    maximal = [c for c in comps if not any(d is not c and d.dimension > c.dimension and _subspace(c, d) for d in comps)]
    maximal.sort(key=lambda c: (c.dimension, c.support, c.basis))
    return maximal


def _draw(W, lines, rest, key: str):
    rng = random.Random(key)
    pos = {l: k for k, l in enumerate(lines)}
    for _ in range(MAX_DRAWS):
        coeffs = [rng.randint(-1000, 1000) for _ in W]
        s = [sum((c * w[i] for c, w in zip(coeffs, W)), Fraction(0)) for i in range(len(lines))]
        if any(v == 0 for v in s):
            continue
        if any(sum(s[pos[l]] for l in P) == 0 for P in rest):
            continue
        return s
    return None


def _subspace(a: ResonanceComponent, b: ResonanceComponent) -> bool:
    R = [list(v) for v in b.basis]
    return all(len(_rref(R + [list(v)])[0]) == len(R) for v in a.basis)


# -- cross-check against the quasiadjunction pipeline -----------------------


@dataclass(frozen=True)
class TangentCheck:
    component: TorusComponent
    depth_ok: bool
    matched: int | None

    @property
    def ok(self) -> bool:
        return self.depth_ok and self.matched is not None


def _tangent_space(comp: TorusComponent) -> tuple[tuple[Fraction, ...], ...]:
    _, null = rank_nullspace([list(r) for r in comp.rows], comp.r)
    return _canonical(null)


def _inside(a: TorusComponent, b: TorusComponent) -> bool:
    Ta = [list(v) for v in _tangent_space(a)]
    Tb = [list(v) for v in _tangent_space(b)]
    return len(_rref(Tb + Ta)[0]) == len(Tb)


def verify_thm54(
    components: Sequence[TorusComponent], resonance: Sequence[ResonanceComponent]
) -> tuple[bool, list[TangentCheck]]:
    """Match identity components of positive dimension with resonance components.

    Only components not contained in a larger identity component are
    matched.  Every one must have depth = dimension - 1 and a tangent space
    equal to a resonance component, and the matching must be a bijection.
    """
    ident = [c for c in components if c.through_identity and c.dimension > 0]
    maximal = [c for c in ident if not any(d is not c and d.dimension > c.dimension and _inside(c, d) for d in ident)]
    spaces = {rc.basis: k for k, rc in enumerate(resonance)}
    checks = []
    for c in maximal:
        checks.append(TangentCheck(c, c.depth == c.dimension - 1, spaces.get(_tangent_space(c))))
    hit = [ch.matched for ch in checks if ch.matched is not None]
    bijective = len(hit) == len(set(hit)) == len(resonance) == len(checks)
    return bijective and all(ch.ok for ch in checks), checks
