import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sturmpair.lattice import (AffineMap, DimensionError, GuardExceeded, Support, apply_affine, boundary, box,
                               box_between, canonical_difference_set, determinant, enumerate_connected_supports,
                               is_connected, minkowski_diff, rational_rank)


def _bfs_connected(pts):
    pts = set(pts)
    if not pts:
        return False
    todo, seen = [next(iter(pts))], set()
    while todo:
        p = todo.pop()
        if p in seen:
            continue
        seen.add(p)
        for i in range(len(p)):
            for s in (-1, 1):
                q = p[:i] + (p[i] + s,) + p[i + 1:]
                if q in pts:
                    todo.append(q)
    return len(seen) == len(pts)


def _brute_classes(d, k):
    """Connected k-subsets anchored at their lexicographic minimum, by subset search."""
    r = k - 1
    cells = [p for p in itertools.product(range(-r, r + 1), repeat=d) if p > (0,) * d]
    out = set()
    for rest in itertools.combinations(cells, k - 1):
        pts = ((0,) * d,) + rest
        if _bfs_connected(pts):
            out.add(frozenset(pts))
    return out


def test_connectivity_examples():
    assert is_connected(Support([(0, 0)]))
    assert not is_connected(Support([(0, 0), (2, 0)]))
    assert is_connected(Support([(0, 0), (1, 0), (2, 0), (0, 1)]))
    assert not is_connected(Support([], 2))


def test_minkowski_examples():
    F = canonical_difference_set(2)
    assert minkowski_diff(F, Support([(0, 0)])) == Support([(0, 0), (-1, 0), (0, -1)])
    assert len(minkowski_diff(F, Support([(0, 0), (1, 0), (2, 0), (0, 1)]))) == 8
    assert len(minkowski_diff(F, box((2, 3)))) == 11
    with pytest.raises(DimensionError):
        minkowski_diff(F, Support([(0,)]))


def test_boxes_and_difference_sets():
    assert box((1,)) == Support([(0,)])
    assert len(box((2, 2))) == 4
    assert box((3, 1)) == Support([(0, 0), (1, 0), (2, 0)])
    assert box_between((-1, -1), (1, 1)) == box((3, 3), (-1, -1))
    assert canonical_difference_set(1) == Support([(0,), (-1,)])
    assert canonical_difference_set(2) == Support([(0, 0), (-1, 0), (0, -1)])
    assert len(canonical_difference_set(3)) == 4


def test_support_set_semantics():
    a = Support([(1, 0), (0, 0), (1, 0)])
    assert len(a) == 2
    assert a == Support([(0, 0), (1, 0)])
    assert Support.from_text(a.to_text()) == a
    assert boundary({(0, 0)}) == sorted([(1, 0), (-1, 0), (0, 1), (0, -1)])


def test_small_enumerations():
    assert [s.points for s in enumerate_connected_supports(1, 2)] == [((0,),), ((0,), (1,))]
    got = [s.points for s in enumerate_connected_supports(2, 2)]
    assert sorted(got) == [((0, 0),), ((0, 0), (0, 1)), ((0, 0), (1, 0))]
    assert got == [s.points for s in enumerate_connected_supports(2, 2)]


@pytest.mark.parametrize("d,n,expected", [(2, 5, [1, 2, 6, 19, 63]), (3, 4, [1, 3, 15, 86]), (1, 6, [1] * 6)])
def test_polyomino_counts_match_brute_force(d, n, expected):
    got = list(enumerate_connected_supports(d, n))
    counts = [sum(1 for s in got if len(s) == k) for k in range(1, n + 1)]
    assert counts == expected
    for k in range(1, min(n, 4) + 1):
        assert {frozenset(s.points) for s in got if len(s) == k} == _brute_classes(d, k)


def test_enumeration_guard():
    with pytest.raises(GuardExceeded):
        list(enumerate_connected_supports(2, 11))


def test_affine_maps():
    A = AffineMap([[0, 1], [1, 0]], (2, -1))
    assert A((1, 5)) == (7, 0)
    assert A.inverse()(A((3, 4))) == (3, 4)
    assert A.compose(A.inverse()) == AffineMap.identity(2)
    with pytest.raises(ValueError):
        AffineMap([[2, 0], [0, 1]])
    assert apply_affine(A, Support([(0, 0), (1, 0)])) == Support([(2, -1), (2, 0)])
    assert determinant([[1, 2], [3, 4]]) == -2
    assert rational_rank([(1, 2), (2, 4)]) == 1


unimodular = st.sampled_from([((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1)), ((2, 1), (1, 1)),
                              ((-1, 0), (0, 1)), ((1, -3), (0, -1))])
pts = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(unimodular, st.tuples(st.integers(-5, 5), st.integers(-5, 5)), pts, pts)
def test_minkowski_commutes_with_linear_part(m, v, f, s):
    A = AffineMap([list(r) for r in m], v)
    L = AffineMap([list(r) for r in m])
    F, S = Support(f), Support(s)
    assert apply_affine(L, minkowski_diff(F, S)) == minkowski_diff(apply_affine(A, F), apply_affine(A, S))
    if all(sorted(abs(c) for c in r) == [0, 1] for r in m):
        assert is_connected(apply_affine(A, S)) == is_connected(S)


@settings(max_examples=60, deadline=None)
@given(pts)
def test_connectivity_matches_bfs(s):
    assert is_connected(Support(s)) == _bfs_connected(set(s))


@settings(max_examples=40, deadline=None)
@given(pts, st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_minkowski_size_bound_and_translation(s, v):
    F = canonical_difference_set(2)
    S = Support(s)
    D = minkowski_diff(F, S)
    assert len(D) <= len(F) * len(S)
    assert minkowski_diff(F, S.translate(v)) == D.translate(tuple(-c for c in v))


def test_affine_worked_values():
    swap = AffineMap([[0, 1], [1, 0]])
    assert set(apply_affine(swap, Support([(1, 0)], 2))) == {(0, 1)}
    F = canonical_difference_set(2)
    shifted = apply_affine(AffineMap.shift((3, 1)), F)
    assert set(shifted) == {(3, 1), (2, 1), (3, 0)}
    A = AffineMap([[2, 1], [1, 1]], (4, -7))
    for p in box((3, 3), lo=(-1, -1)):
        assert A.inverse()(A(p)) == p
