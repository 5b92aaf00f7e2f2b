from fractions import Fraction

import pytest

from ehcert.certificates import verify_certificate
from ehcert.constants import desk_sheet
from ehcert.construct import complete_graph, empty_graph, path_graph, random_bipartite, random_graph, swiss_army
from ehcert.errors import PreconditionError
from ehcert.fixtures import chain_diamond, handset_overrides, plant_rainbow, planted_handset, sparsity_level
from ehcert.graph import Graph, is_clique, is_stable
from ehcert.handset import (
    Handset, capped_induced_matching, compose_swiss, composition_certificate, find_clique_hub, gethandset,
    getstable_dichotomy, is_induced_matching, matching_is_maximal, verify_handset,
)
from ehcert.patterns import find_copy, rainbow_find

from mutations import toggle_edge
import oracles


def test_getstable_edgeless_and_complete():
    kind, stable = getstable_dichotomy(empty_graph(2**2 * 3), 2, 3, 2)
    assert kind == "stable" and len(stable) == 2 and is_stable(empty_graph(12), stable)
    f = complete_graph(12)
    kind, x, y = getstable_dichotomy(f, 2, 3, 2)
    assert kind == "clique" and len(x) == 2 and len(y) >= 3
    assert all(f.has_edge(a, b) for a in x for b in y)


@pytest.mark.parametrize("seed", range(6))
def test_getstable_random(seed):
    f = random_graph(3**2 * 2, 0.5, seed)
    out = getstable_dichotomy(f, 2, 2, 3)
    if out[0] == "stable":
        assert len(out[1]) == 3 and is_stable(f, out[1])
    else:
        _, x, y = out
        assert len(x) == 2 and is_clique(f, x) and len(y) >= 2
        assert all(f.has_edge(a, b) for a in x for b in y) and not set(x) & set(y)


def test_getstable_precondition_and_hub():
    with pytest.raises(PreconditionError):
        getstable_dichotomy(empty_graph(5), 2, 3, 2)
    assert find_clique_hub(complete_graph(5), 2, 3) == ((0, 1), (2, 3, 4))
    assert find_clique_hub(empty_graph(5), 2, 1) is None


def test_matching_examples():
    parts = [[0, 1], [2, 3]]
    assert capped_induced_matching(empty_graph(4), parts, 1) == []
    g = Graph.from_edges(4, [(0, 2), (1, 3)])
    m = capped_induced_matching(g, parts, 1)
    assert len(m) == 1 and matching_is_maximal(g, parts, 1, m)
    assert len(capped_induced_matching(g, parts, 2)) == 2


@pytest.mark.parametrize("seed", range(5))
def test_matching_maximal_on_random(seed):
    g = random_bipartite(12, 12, 0.15, seed)
    parts = [list(range(0, 6)), list(range(6, 12)), list(range(12, 18)), list(range(18, 24))]
    for s in (1, 2):
        m = capped_induced_matching(g, parts, s)
        assert is_induced_matching(g, m)
        assert matching_is_maximal(g, parts, s, m)


def test_matching_rejects_unstable_part():
    with pytest.raises(PreconditionError):
        capped_induced_matching(path_graph(3), [[0, 1], [2]], 1)


def _recover(k, s, t, seed=1):
    ph = planted_handset(k, s, t, seed=seed)
    y = sparsity_level(ph.graph)
    res = gethandset(ph.graph, range(ph.graph.n), y, s, t, chain_diamond(), desk_sheet(**handset_overrides(ph, y)))
    return ph, res


def test_gethandset_edgeless_gives_sparse():
    g = empty_graph(24)
    c = gethandset(g, range(24), Fraction(1, 4), 1, 1, chain_diamond(), desk_sheet())
    assert c.kind == "SparseSet" and len(c["S"]) == 24


@pytest.mark.parametrize("k,s,t", [(3, 1, 1), (4, 2, 2), (5, 1, 3)])
def test_planted_fixture_round_trip(k, s, t):
    ph, res = _recover(k, s, t)
    hs = res.handset
    assert hs.t == t and hs.s == s and len(hs.blocks) == k - t
    assert verify_handset(hs, ph.graph, res.certificate.bounds) == []
    assert verify_certificate(res.certificate, ph.graph) == []
    back = Handset.from_json(hs.to_json())
    assert back == hs


def test_deleting_a_link_vertex_is_rejected():
    ph, res = _recover(4, 1, 2)
    hs = res.handset
    (b, c), = hs.links[(0, 1)]
    g = ph.graph
    cut = Graph(g.n, [0 if v == b else a & ~(1 << b) for v, a in enumerate(g.adj)])
    assert verify_handset(hs, cut)
    assert verify_handset(hs, toggle_edge(g, b, c))


def test_arity_checks():
    hs = Handset(((0,),), (), {}, {}, 1)
    assert "arity" in verify_handset(hs, empty_graph(3))[0]


def test_composition_gives_induced_swiss():
    ph, res = _recover(6, 2, 3)
    hs = res.handset
    f = Graph.from_edges(3, [(0, 1)])
    g2, image = plant_rainbow(ph.graph, hs.blocks, f, seed=4)
    rc = rainbow_find(f, res.blockade, g2)
    cert = composition_certificate(hs, f, rc.map)
    assert verify_certificate(cert, g2) == []
    pattern = swiss_army(f, 2, 3)
    assert oracles.is_induced_copy(pattern, compose_swiss(hs, f, rc.map), g2)
    assert find_copy(pattern, g2) is not None
