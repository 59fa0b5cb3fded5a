from fractions import Fraction
from functools import lru_cache
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from qav.arrangement import Curve, SingularPointSpec
from qav.catalog import ceva, dual_hesse, four_lines, random_arrangement, triangle
from qav.exactmath import QQ
from qav.quasiadjunction import (
    LocalFaceDescriptor,
    enumerate_faces,
    face_order,
    local_faces,
    vertex_faces,
)

F = Fraction


def ordinary(m):
    return SingularPointSpec((QQ(0), QQ(0)), "ordinary", tuple(range(m)), m)


def test_ordinary_four_local_faces():
    faces = local_faces(ordinary(4))
    assert [(lf.equations[0][1], lf.exponent) for lf in faces] == [(1, 2), (2, 1)]
    assert all(lf.equations[0][0] == (1, 1, 1, 1) for lf in faces)


def test_ordinary_three_local_face():
    [lf] = local_faces(ordinary(3))
    assert lf.equations == (((1, 1, 1), 1),)
    assert lf.exponent == 1


def test_double_point_has_no_faces():
    assert local_faces(ordinary(2)) == []


def test_cusp_local_face():
    [lf] = local_faces(SingularPointSpec((QQ(0), QQ(0)), "cusp", (0,)))
    assert lf.equations == (((1,), F(1, 6)),)
    assert lf.exponent == 1


def test_tacnode_local_face():
    [lf] = local_faces(SingularPointSpec((QQ(0), QQ(0)), "tacnode", (0, 1)))
    assert lf.equations == (((1, 1), F(1, 2)),)


def test_descriptor_validation():
    with pytest.raises(ValueError):
        LocalFaceDescriptor((), 1)
    with pytest.raises(ValueError):
        LocalFaceDescriptor(((((1,), F(1, 2)),)), -1)


@lru_cache(maxsize=None)
def dual_hesse_faces():
    return enumerate_faces(dual_hesse().full())


def contributing(sub):
    return [f for f in enumerate_faces(sub) if f.contributing]


def test_ceva_single_contributing_face():
    [face] = contributing(ceva().full())
    assert face.level == 2
    assert face.dimension == 2
    assert len(face.choices) == 4


def test_four_lines_levels():
    faces = contributing(four_lines().full())
    assert sorted(f.level for f in faces) == [1, 2]


def test_dual_hesse_full_curve_faces():
    faces = [f for f in dual_hesse_faces() if f.contributing]
    nine = [f for f in faces if len(f.choices) == 9]
    assert len(nine) == 4
    assert all(f.level == 3 and f.dimension == 2 for f in nine)
    # smaller candidate sets are enumerated too; their superabundance vanishes
    sizes = {len(f.choices) for f in faces}
    assert {3, 6} <= sizes


def test_cusp_face_order():
    curve = Curve.from_components((6,), [SingularPointSpec((QQ(0), QQ(0)), "cusp", (0,))], QQ)
    [face] = enumerate_faces(curve.full())
    assert face.point == (F(1, 6),)
    assert face_order(face) == 6


def test_ceva_face_order():
    [face] = contributing(ceva().full())
    assert face_order(face) == 2


def test_triple_point_face_order():
    [face] = enumerate_faces(triangle().full())
    assert face_order(face) == 1


def grid_faces(sub, n):
    """Saturated choice sets met by grid points with denominator n."""
    width = len(sub.support)
    options = [(v.parent, vertex_faces(v, width)) for v in sub.eligible()]
    out = set()
    for ys in product(range(1, n), repeat=width):
        x = [F(y, n) for y in ys]
        hit = set()
        for parent, faces in options:
            for k, (_, eqs) in enumerate(faces):
                if all(sum(a * v for a, v in zip(row, x)) == c for row, c in eqs):
                    hit.add((parent, k))
        if hit:
            out.add(frozenset(hit))
    return out


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_face_enumeration_matches_grid_scan(seed):
    curve = random_arrangement(seed, r=4)
    sub = curve.full()
    found = {frozenset(f.choices) for f in enumerate_faces(sub)}
    assert found == grid_faces(sub, 12)


def catalog_and_random():
    yield from (triangle(), four_lines(), ceva(), dual_hesse())
    for seed in range(8):
        yield random_arrangement(seed)


def all_subcurve_faces(curve):
    from qav.arrangement import enumerate_subcurves

    for sub in enumerate_subcurves(curve):
        if sub.eligible():
            yield sub, enumerate_faces(sub)


@pytest.mark.parametrize("curve", list(catalog_and_random()))
def test_face_invariants(curve):
    for sub, faces in all_subcurve_faces(curve):
        if len(sub.support) > 7:
            continue
        width = len(sub.support)
        options = {v.parent: vertex_faces(v, width) for v in sub.eligible()}
        degsum = sum(sub.degrees)
        keys = {}
        for f in faces:
            w = f.witness
            assert all(0 < x < 1 for x in w)
            for row, c in zip(f.rows, f.rhs):
                assert sum(a * x for a, x in zip(row, w)) == c
            # every solution of S avoids the equations of vertices outside S generically
            for parent, opts in options.items():
                if parent in f.vertices:
                    continue
                for _, eqs in opts:
                    assert not all(sum(a * x for a, x in zip(row, w)) == c for row, c in eqs)
            for c in f.rhs:
                assert c.denominator == 1
            m = dict(zip(f.vertices, f.multiplicities))
            for (v, _), lab in zip(f.choices, f.labels):
                s = int(lab.split("=")[1])
                assert 1 <= s <= m[v] - 2
            if f.contributing:
                assert 0 < f.level < degsum
            keys[frozenset((v, lab) for (v, _), lab in zip(f.choices, f.labels))] = f
        # x -> 1 - x sends a face to an affine set of complementary level
        for f in faces:
            if f.contributing:
                conj = conjugate_level(f)
                assert conj is not None and f.level + conj == degsum


def conjugate_level(face):
    """Level of {1 - x : x in face}, or None if it is not constant there."""
    w = [1 - x for x in face.witness]
    base = sum(w)
    for v in face.basis:
        if sum(v) != 0:
            return None
    return base


@pytest.mark.parametrize("orders", [(5, 5, 5), (4, 6, 3), (7, 7, 7)])
def test_conjugate_lattice_counts(orders):
    from dataclasses import replace

    from qav.quasiadjunction import face_lattice_points

    for curve in (triangle(), ceva()):
        sub = curve.full()
        os = (orders * 2)[: curve.r]
        for f in contributing(sub):
            conj = replace(f, rhs=tuple(sum(row) - c for row, c in zip(f.rows, f.rhs)))
            pts = face_lattice_points(f, os)
            assert len(pts) == len(face_lattice_points(conj, os))
            assert sorted(tuple(1 - x for x in p) for p in pts) == sorted(face_lattice_points(conj, os))


def test_min_weight_only_drops_light_faces():
    every = dual_hesse_faces()
    heavy = enumerate_faces(dual_hesse().full(), min_weight=81)
    want = [f for f in every if sum(m * m for m in f.multiplicities) >= 81]
    assert [f.choices for f in heavy] == [f.choices for f in want]
