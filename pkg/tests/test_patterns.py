from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from ehcert.cliques import clique_list
from ehcert.construct import (
    complete_bipartite, complete_graph, cycle_graph, empty_graph, path_graph, random_bipartite,
    random_forest, random_graph, subdivide, swiss_army,
)
from ehcert.errors import PreconditionError, SearchLimitExceeded
from ehcert.graph import Blockade, Graph, Multigraph
from ehcert.limits import DEFAULT
from ehcert.patterns import (
    UNKNOWN, edge_chain, extension_counts, find_copy, ind_count, iter_copies, rainbow_find, rainbow_violations,
)

import oracles


def test_ind_count_trivial(k3, p3, petersen, c5):
    assert ind_count(k3, complete_graph(4)) == 24
    assert ind_count(p3, k3) == 0
    assert ind_count(c5, petersen) == oracles.ind_count(c5, petersen)


@pytest.mark.parametrize("seed", range(8))
def test_ind_count_matches_oracle(seed):
    h = random_graph(4, 0.5, seed)
    g = random_graph(9, 0.4, 100 + seed)
    assert ind_count(h, g) == oracles.ind_count(h, g)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_clique_count_is_labeled(k):
    g = random_graph(25, 0.5, k)
    assert ind_count(complete_graph(k), g) == len(clique_list(g, k)) * [1, 1, 2, 6, 24][k]


def test_ind_count_ceilings():
    with pytest.raises(SearchLimitExceeded):
        ind_count(path_graph(7), path_graph(10))
    with pytest.raises(SearchLimitExceeded):
        ind_count(path_graph(3), empty_graph(401))
    assert ind_count(path_graph(7), path_graph(10), limits=DEFAULT.with_(count_pattern_vertices=7)) == 8


def test_ind_count_masks_restrict_images():
    g = path_graph(5)
    masks = [0b00001, None, None]
    assert ind_count(path_graph(3), g, masks=masks) == 1


def test_find_copy_examples(p4):
    cm = find_copy(p4, cycle_graph(7))
    assert cm is not None and cm.is_valid()
    assert find_copy(complete_graph(3), complete_bipartite(5, 6)) is None
    c9 = subdivide(Multigraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1}), times=2)
    got = find_copy(c9, swiss_army(empty_graph(0), 1, 3))
    assert got is not None and oracles.is_induced_copy(c9, got.map, swiss_army(empty_graph(0), 1, 3))


@pytest.mark.parametrize("seed", range(12))
def test_find_copy_agrees_with_count(seed):
    h = random_graph(4, 0.5, seed)
    g = random_graph(10, 0.3, 50 + seed)
    cm = find_copy(h, g)
    assert (cm is None) == (ind_count(h, g) == 0)
    if cm is not None:
        assert oracles.is_induced_copy(h, cm.map, g)


def test_find_copy_large_pattern_in_bipartite_host():
    h = cycle_graph(10)
    g = random_bipartite(30, 30, 0.15, 4)
    cm = find_copy(h, g)
    if cm is not None:
        assert oracles.is_induced_copy(h, cm.map, g)
    assert find_copy(cycle_graph(9), g) is None


def test_iter_copies_matches_count():
    g = random_graph(9, 0.5, 7)
    h = path_graph(3)
    assert sum(1 for _ in iter_copies(h, g)) == ind_count(h, g)


def test_edge_chain_shapes():
    k3 = edge_chain(complete_graph(3))
    assert k3.m == 3 and len(k3.graphs) == 4 and k3.index_of_h == 3
    e3 = edge_chain(empty_graph(3))
    assert e3.index_of_h == 0
    p4 = path_graph(4)
    ch = edge_chain(p4)
    assert ch.m == 6 and ch[3] == p4
    for i, gi in enumerate(ch.graphs):
        assert gi.m == i
    assert ch[0] == empty_graph(4) and ch[6] == complete_graph(4)
    assert sum(gi == p4 for gi in ch.graphs) == 1


def test_extension_counts_k2():
    ch = edge_chain(complete_graph(2))
    ext = extension_counts(ch, 1, complete_graph(6), ())
    assert ext.x == 30 and ext.P == ext.Q == tuple(range(6))
    ext = extension_counts(ch, 1, empty_graph(6), ())
    assert ext.x == 0 and ext.y == 30


@pytest.mark.parametrize("seed", range(4))
def test_extension_counts_match_brute_force(seed):
    g = random_graph(9, 0.5, seed)
    ch = edge_chain(path_graph(4))
    for i in range(1, ch.m + 1):
        hi, lo = ch[i], ch[i - 1]
        p, q = ch.added[i - 1]
        jv = [v for v in range(4) if v not in (p, q)]
        for psi in permutations(range(g.n), 2):
            if hi.has_edge(*jv) != g.has_edge(*psi):
                continue
            ext = extension_counts(ch, i, g, psi)
            xs = ys = 0
            for a in range(g.n):
                for b in range(g.n):
                    if len({a, b, *psi}) < 4:
                        continue
                    m = {jv[0]: psi[0], jv[1]: psi[1], p: a, q: b}
                    tup = [m[v] for v in range(4)]
                    xs += oracles.is_induced_copy(hi, tup, g)
                    ys += oracles.is_induced_copy(lo, tup, g)
            assert (ext.x, ext.y) == (xs, ys)
            assert not set(ext.P) & set(ext.Q) or ext.P == ext.Q


def test_extension_counts_rejects_bad_psi():
    ch = edge_chain(path_graph(3))
    with pytest.raises(PreconditionError):
        extension_counts(ch, 1, path_graph(5), (0, 1, 2))
    with pytest.raises(PreconditionError):
        extension_counts(ch, 0, path_graph(5), (0,))


def test_rainbow_trivial():
    edge = path_graph(2)
    g = path_graph(2)
    assert rainbow_find(edge, Blockade([[0], [1]]), g) is not None
    assert rainbow_find(edge, Blockade([[0], [1]]), empty_graph(2)) is None
    assert rainbow_find(edge, Blockade([[0, 1]]), g) is None


def test_rainbow_finds_planted_path():
    from ehcert.fixtures import plant_rainbow

    blocks = [list(range(5 * i, 5 * i + 5)) for i in range(6)]
    f = path_graph(4)
    g, image = plant_rainbow(empty_graph(30), blocks, f, seed=3)
    cm = rainbow_find(f, Blockade(blocks), g)
    assert cm is not None and not rainbow_violations(cm, Blockade(blocks))
    assert set(cm.map) == set(image)


def test_rainbow_ceiling_and_forest_check():
    assert rainbow_find(random_forest(13, 1), Blockade([[0]]), empty_graph(1)) is UNKNOWN
    with pytest.raises(PreconditionError):
        rainbow_find(cycle_graph(3), Blockade([[0]]), empty_graph(1))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31), st.integers(2, 5), st.integers(5, 11))
def test_count_and_search_agree(seed, k, n):
    h = random_graph(k, 0.5, seed)
    g = random_graph(n, 0.5, seed + 1)
    cnt = ind_count(h, g)
    cm = find_copy(h, g)
    assert (cnt == 0) == (cm is None)
    if cm is not None:
        assert cm.is_valid()
