import pytest

from ehcert.construct import (
    complete_graph, cycle_graph, empty_graph, join, path_graph, pattern_by_name, random_forest,
    subdivide, swiss_army, swiss_army_size,
)
from ehcert.errors import PreconditionError
from ehcert.graph import Graph, Multigraph, components, is_forest


def _is_cycle(g):
    return g.n >= 3 and all(d == 2 for d in g.degrees()) and len(components(g)) == 1


def _is_path(g):
    degs = sorted(g.degrees())
    return len(components(g)) == 1 and g.m == g.n - 1 and degs[-1] <= 2


def test_subdivide_single_edge_gives_p4():
    g = subdivide(Multigraph(2, {(0, 1): 1}), times=2)
    assert g.n == 4 and _is_path(g)


def test_subdivide_triangle_gives_c9():
    g = subdivide(Multigraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1}), times=2)
    assert g.n == 9 and _is_cycle(g)


def test_subdivide_parallel_pair_gives_c6():
    g = subdivide(Multigraph(2, {(0, 1): 2}), times=2)
    assert g.n == 6 and _is_cycle(g)


def test_subdivide_partial_selection_and_errors():
    mg = Multigraph(3, {(0, 1): 1, (1, 2): 1})
    g = subdivide(mg, select=[(1, 0)], times=3)
    assert g.n == 6 and _is_path(g)
    with pytest.raises(PreconditionError):
        subdivide(Multigraph(2, {(0, 1): 2}), select=[], times=2)
    with pytest.raises(PreconditionError):
        subdivide(mg, times=-1)


def test_swiss_null_forest():
    assert _is_path(swiss_army(empty_graph(0), 1, 2)) and swiss_army(empty_graph(0), 1, 2).n == 4
    c9 = swiss_army(empty_graph(0), 1, 3)
    assert c9.n == 9 and _is_cycle(c9)


def test_swiss_single_edge_is_c7():
    g = swiss_army(path_graph(2), 1, 1)
    assert g.n == 7 and _is_cycle(g)


@pytest.mark.parametrize("nf,s,t", [(0, 1, 2), (3, 2, 2), (4, 1, 3), (2, 3, 1)])
def test_swiss_size_and_layout(nf, s, t):
    f = random_forest(nf, 5) if nf else empty_graph(0)
    g = swiss_army(f, s, t)
    assert g.n == swiss_army_size(nf, s, t)
    assert g.induced(range(nf))[0] == f
    xs = range(nf, nf + t)
    assert all(not g.has_edge(a, b) for a in xs for b in xs if a != b)
    assert all(g.degree(x) == s * (t - 1 + nf) for x in xs)


def test_swiss_rejects_bad_input():
    with pytest.raises(PreconditionError):
        swiss_army(cycle_graph(3), 1, 1)
    with pytest.raises(PreconditionError):
        swiss_army(path_graph(2), 0, 1)


def test_join_and_pattern_names():
    assert join(empty_graph(2), empty_graph(3)).m == 6
    assert pattern_by_name("K4") == complete_graph(4)
    assert pattern_by_name("p3") == path_graph(3)
    assert pattern_by_name("C5") == cycle_graph(5)
    with pytest.raises(PreconditionError):
        pattern_by_name("Q2")


def test_random_forest_is_forest():
    for seed in range(10):
        assert is_forest(random_forest(12, seed))
    assert random_forest(12, 3) == random_forest(12, 3)
    assert isinstance(random_forest(0, 1), Graph)
