import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sturmpair.combinatorics import (ExactLanguage, PositionClash, WindowLanguage, bipartite_multiplicity,
                                     complexity, counting_bound_holds, extension_graph, extensions,
                                     bilateral_multiplicity, evil_pattern, gamma_sets, is_cyclic_permutation,
                                     is_evil_triple, joint_language_size, multiplicity_records,
                                     multiplicity_sum_identity, paired_images, rectangular_complexity)
from sturmpair.exactreal import parse_slope
from sturmpair.lattice import (Support, box, canonical_difference_set, enumerate_connected_supports,
                               minkowski_diff)
from sturmpair.pairs import sturmian_pair
from sturmpair.sturmian import Patch, SturmianConfig

from oracles import dfs_has_cycle, union_find_components

DATA = Path(__file__).parent / "data"
A1 = "sqrt(3)-1,sqrt(2)-1"
A2 = "1/2*sqrt(2),sqrt(19)-4"


def test_bispecial_fixture():
    fx = json.load(open(DATA / "bispecial_l.json"))
    src = ExactLanguage(parse_slope(",".join(fx["alpha"])))
    S = Support([tuple(p) for p in fx["support"]])
    w = Patch(S, fx["values"])
    assert w in src.language(S)
    g = extension_graph(src, w, tuple(fx["left"]), tuple(fx["right"]))
    assert g.edges == frozenset(tuple(e) for e in fx["edges"])
    assert g.left_vertices == frozenset({1, 2}) and g.right_vertices == frozenset({0, 1})
    rec = bilateral_multiplicity(g)
    assert rec.m == 0 and rec.classification == "neutral" and rec.acyclic
    assert extensions(src, w, tuple(fx["left"])) == {1, 2}


@pytest.mark.parametrize("text", [A1, A2, "sqrt(3)-1,sqrt(2)-1,sqrt(5)-2"])
def test_empty_pattern(text):
    alpha = parse_slope(text)
    d = alpha.dim
    src = ExactLanguage(alpha, radius=6)
    e1 = tuple(int(i == 0) for i in range(d))
    [rec] = multiplicity_records(src, Support([], d), (0,) * d, e1)
    assert rec.m == 0 and rec.n_edges == 2 * d + 1


def test_positions_must_avoid_support():
    src = ExactLanguage(parse_slope(A1), radius=5)
    S = box((2, 1))
    with pytest.raises(PositionClash):
        multiplicity_records(src, S, (0, 0), (3, 0))
    with pytest.raises(PositionClash):
        multiplicity_records(src, S, (3, 0), (3, 0))


def test_evil_triples():
    F = canonical_difference_set(2)
    S1 = box((5, 3))
    assert is_evil_triple(S1, (4, 3), (5, 2), F) == (-5, -3)
    assert is_evil_triple(S1, (3, 3), (5, 2), F) is None
    assert is_evil_triple(Support([(0, 0)]), (-1, 0), (0, -1), F) is None
    assert is_evil_triple(Support([], 2), (0, 0), (1, 0), F) is None
    x = SturmianConfig(parse_slope(A1))
    assert evil_pattern(x, S1, (4, 3), (5, 2), F) == x.patch_at(S1, (-5, -3))
    with pytest.raises(ValueError):
        evil_pattern(x, S1, (3, 3), (5, 2), F)


@pytest.mark.parametrize("text", [A1, A2])
def test_laws_on_small_supports(text):
    src = ExactLanguage(parse_slope(text))
    for S in enumerate_connected_supports(2, 3):
        bd = sorted({(p[0] + dx, p[1] + dy) for p in S for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))}
                    - set(S))
        for i, left in enumerate(bd):
            for right in bd[i + 1:]:
                recs = multiplicity_records(src, S, left, right)
                for r in recs:
                    assert r.acyclic
                    assert r.m == 1 - r.components
                    assert (r.m == -1) == bool(r.evil)
                total, rhs = multiplicity_sum_identity(src, S, left, right)
                assert total == rhs


def test_window_language_agrees_with_exact():
    alpha = parse_slope(A2)
    ex = ExactLanguage(alpha)
    win = WindowLanguage([SturmianConfig(alpha)], (-80, -80), (80, 80))
    for S in enumerate_connected_supports(2, 4):
        assert ex.language(S) == win.language(S)


def test_complexity_and_closed_form():
    src = ExactLanguage(parse_slope(A1))
    for m, n in [((1, 3), 7), ((3, 1), 7), ((2, 2), 8), ((2, 3), 11), ((3, 2), 11), ((5, 5), 35)]:
        res = complexity(src, box(m))
        assert res.match and res.measured == n == rectangular_complexity(m)
    assert rectangular_complexity((4,)) == 5
    with pytest.raises(ValueError):
        rectangular_complexity((0, 2))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=3))
def test_closed_form_counts_minkowski_difference(m):
    m = tuple(m)
    assert rectangular_complexity(m) == len(minkowski_diff(canonical_difference_set(len(m)), box(m)))


def test_joint_language_lower_bound():
    pair = sturmian_pair(parse_slope(A1))
    F = pair.difference_set
    for S in enumerate_connected_supports(2, 4):
        assert joint_language_size(pair, S, (-30, -30), (30, 30)) >= len(minkowski_diff(F, S))


def test_gamma_sets_are_edges():
    alpha = parse_slope(A1)
    pair = sturmian_pair(alpha)
    src = ExactLanguage(alpha)
    S = box((2, 1))
    left, right = (-1, 0), (2, 0)
    for w in src.language(S):
        g = extension_graph(src, w, left, right)
        gl, gr, gs = gamma_sets(pair, w, left, right)
        assert (gl | gr | gs) <= g.edges


def test_multiplicity_helper_small_graphs():
    assert bipartite_multiplicity({0}, {0}, {(0, 0)}) == (0, 1, True)
    assert bipartite_multiplicity({0, 1}, {0, 1}, {(0, 0), (1, 1)}) == (-1, 2, True)
    assert bipartite_multiplicity({0, 1}, {0, 1}, {(0, 0), (0, 1), (1, 0), (1, 1)}) == (1, 1, False)


def test_random_bipartite_graphs_against_dfs():
    rng = random.Random(2024)
    for _ in range(300):
        nl, nr = rng.randint(1, 5), rng.randint(1, 5)
        edges = {(a, b) for a in range(nl) for b in range(nr) if rng.random() < 0.4}
        left = {a for a, _ in edges} or {0}
        right = {b for _, b in edges} or {0}
        m, comps, acyclic = bipartite_multiplicity(left, right, edges)
        assert comps == union_find_components(left, right, edges)
        assert acyclic == (not dfs_has_cycle(left, right, edges))
        assert m >= 1 - comps
        assert (m == 1 - comps) == acyclic


def test_counting_helpers():
    cyc = {0: 1, 1: 2, 2: 0}
    assert is_cyclic_permutation(cyc)
    assert not is_cyclic_permutation({0: 1, 1: 0, 2: 2})
    assert not is_cyclic_permutation({0: 0})
    assert paired_images(cyc, {0: "a", 1: "a"}) == 3
    assert counting_bound_holds(cyc, {0: "a", 1: "a"})
    # with A = U the bound can fail, which is why the hypothesis A != U is needed
    full = {0: "a", 1: "a", 2: "a"}
    assert paired_images(cyc, full) < len(full) + 1
