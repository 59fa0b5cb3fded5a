from collections import Counter
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from qav.arrangement import (
    Curve,
    CurveError,
    ProjLine,
    SingularPointSpec,
    build_incidence,
    enumerate_subcurves,
    validate_input,
)
from qav.catalog import ceva, dual_hesse, four_lines, hesse, random_arrangement, triangle
from qav.exactmath import QQ


def census(curve):
    return Counter(v.multiplicity for v in curve.vertices)


def test_ceva_vertices():
    assert census(ceva()) == {3: 4, 2: 3}


def test_dual_hesse_vertices():
    assert census(dual_hesse()) == {3: 12}


def test_hesse_vertices():
    c = census(hesse())
    assert c[4] == 9
    assert set(c) == {2, 4}


def test_parallel_lines_rejected():
    lines = [ProjLine.make(QQ, 1, 0, 0), ProjLine.make(QQ, 1, 0, -1)]
    with pytest.raises(CurveError) as e:
        Curve.from_lines(lines)
    assert e.value.unsupported


def test_ceva_validates():
    validate_input(ceva())


def test_tacnode_with_three_branches_rejected():
    with pytest.raises(CurveError):
        SingularPointSpec((QQ(0), QQ(0)), "tacnode", (0, 1, 2))


def test_unknown_local_type_is_unsupported():
    with pytest.raises(CurveError) as e:
        SingularPointSpec((QQ(0), QQ(0)), "E6", (0,))
    assert e.value.unsupported


def test_repeated_line_rejected():
    L = ProjLine.make(QQ, 1, 2, 3)
    M = ProjLine.make(QQ, 2, 4, 6)
    with pytest.raises(CurveError):
        Curve.from_lines([L, M, ProjLine.make(QQ, 0, 1, 5)])


def test_line_at_infinity_rejected():
    with pytest.raises(CurveError):
        ProjLine.make(QQ, 0, 0, 0)
    with pytest.raises(CurveError):
        Curve.from_lines([ProjLine.make(QQ, 0, 0, 1), ProjLine.make(QQ, 1, 0, 0)])


def test_ceva_triple_of_lines_has_one_triple_point():
    curve = ceva()
    v = next(v for v in curve.vertices if v.multiplicity == 3)
    sub = curve.subcurve(v.components)
    assert [w.multiplicity for w in sub.vertices] == [3]


def test_dual_hesse_six_line_subsets_never_have_four_triple_points():
    curve = dual_hesse()
    for S in combinations(range(9), 6):
        sub = curve.subcurve(S)
        assert sum(w.multiplicity == 3 for w in sub.vertices) < 4


def test_full_subcurve_is_the_curve():
    curve = ceva()
    full = curve.full()
    assert full.support == tuple(range(6))
    assert [v.parent for v in full.vertices] == list(range(len(curve.vertices)))
    assert [w.multiplicity for w in full.vertices] == [v.multiplicity for v in curve.vertices]


def test_subcurve_enumeration_order_and_count():
    subs = list(enumerate_subcurves(four_lines()))
    assert len(subs) == 2 ** 4 - 1
    assert [len(s.support) for s in subs] == sorted(len(s.support) for s in subs)


def test_pair_count_identity_on_catalog():
    for curve in (triangle(), four_lines(), ceva(), dual_hesse(), hesse()):
        assert sum(comb(v.multiplicity, 2) for v in curve.vertices) == comb(curve.r, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_pair_count_identity_random(seed):
    curve = random_arrangement(seed)
    assert sum(comb(v.multiplicity, 2) for v in curve.vertices) == comb(curve.r, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.randoms(use_true_random=False))
def test_incidence_permutation_invariant(seed, rnd):
    curve = random_arrangement(seed)
    perm = list(range(curve.r))
    rnd.shuffle(perm)
    moved = Curve.from_lines([curve.lines[p] for p in perm])
    inv = {p: k for k, p in enumerate(perm)}
    before = {(v.coords, tuple(sorted(inv[b] for b in v.branches))) for v in curve.vertices}
    after = {(v.coords, v.branches) for v in moved.vertices}
    assert before == after
    assert build_incidence(moved) == list(moved.vertices)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_subcurve_multiplicities_bounded(seed, data):
    curve = random_arrangement(seed)
    S = data.draw(st.sets(st.integers(0, curve.r - 1), min_size=1).map(sorted))
    sub = curve.subcurve(S)
    for w in sub.vertices:
        assert w.multiplicity <= curve.vertices[w.parent].multiplicity
        assert w.coords == curve.vertices[w.parent].coords


def test_components_mode_checks_branch_indices():
    P = SingularPointSpec((QQ(0), QQ(0)), "cusp", (3,))
    with pytest.raises(CurveError):
        Curve.from_components((6,), [P], QQ)


def test_components_mode_rejects_duplicate_points():
    P = SingularPointSpec((QQ(0), QQ(0)), "cusp", (0,))
    with pytest.raises(CurveError):
        Curve.from_components((6,), [P, P], QQ)


def test_cusp_restricts_to_itself():
    P = SingularPointSpec((QQ(1), QQ(2)), "cusp", (0,))
    curve = Curve.from_components((6,), [P], QQ)
    assert [v.kind for v in curve.full().eligible()] == ["cusp"]
