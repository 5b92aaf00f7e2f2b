from fractions import Fraction

import numpy as np
import pytest

from ehcert import certificates as C
from ehcert.construct import complete_bipartite, complete_graph, cycle_graph, empty_graph, path_graph, random_graph
from ehcert.graph import Graph
from ehcert.numerics import Power

from mutations import mutate, toggle_edge


def _samples():
    g = random_graph(30, 0.5, 4)
    kb = complete_bipartite(4, 5)
    yield C.stable_set([0, 2], min_size=2), path_graph(4)
    yield C.clique(range(5), min_size=5), complete_graph(6)
    yield C.dense_pair(range(4), range(4, 9), eps=Fraction(1, 10), min_size=4), kb
    yield C.complete_bipartite(range(4), range(4, 9), min_a=4, min_b=5), kb
    yield C.anticomplete_pair([0, 1], [3, 4], min_size=2), Graph.from_edges(5, [(0, 1), (3, 4)])
    yield C.anticomplete_blockade([[0, 1], [2, 3], [4, 5]], length=3, min_width=2), empty_graph(6)
    yield C.induced_copy(path_graph(4), [0, 1, 2, 3]), cycle_graph(7)
    yield C.rainbow_copy(path_graph(2), [0, 1], [[0], [1, 2]]), path_graph(3)
    yield C.sparse_set(range(10), eps=Fraction(1, 2), min_size=Power.of(50, Fraction(1, 2))), empty_graph(12)
    yield C.clique_count(3, 6 * 4, 1), complete_graph(4)
    yield C.criticality_witness("BigStable", [0, 2, 4], min_size=3), cycle_graph(6)
    yield C.stable_set([0], min_size=1), g


@pytest.mark.parametrize("cert,g", list(_samples()))
def test_valid_samples_pass_and_round_trip(cert, g):
    assert C.verify_certificate(cert, g) == []
    back = C.from_text(C.to_text(cert))
    assert back == cert
    assert C.to_text(back) == C.to_text(cert)


def test_injected_edge_breaks_stable_set():
    g = path_graph(4)
    cert = C.stable_set([0, 2], min_size=2)
    bad = C.verify_certificate(cert, toggle_edge(g, 0, 2))
    assert bad and "not stable" in bad[0]


def test_bounds_are_rechecked():
    assert C.verify_certificate(C.stable_set([0, 2], min_size=3), path_graph(4))
    g = complete_bipartite(4, 5)
    assert C.verify_certificate(C.dense_pair(range(4), range(4, 9), eps=0), g)
    assert C.verify_certificate(C.clique_count(3, 25, 1), complete_graph(4))
    assert C.verify_certificate(C.sparse_set(range(4), eps=Fraction(1, 16)), complete_graph(4))
    assert C.verify_certificate(C.anticomplete_blockade([[0], [1]], length=3), empty_graph(2))


def test_dangling_and_duplicate_references():
    assert "dangling" in C.verify_certificate(C.stable_set([0, 9]), path_graph(4))[0]
    assert C.verify_certificate(C.Certificate("StableSet", {"S": [1, 1]}), path_graph(4))


def test_induced_copy_with_swiss_claim():
    from ehcert.construct import swiss_army

    g = swiss_army(path_graph(2), 1, 1)
    good = C.induced_copy(g, range(7), swiss={"forest_n": 2, "forest_edges": [[0, 1]], "s": 1, "t": 1})
    assert C.verify_certificate(good, g) == []
    wrong = C.induced_copy(g, range(7), swiss={"forest_n": 2, "forest_edges": [], "s": 1, "t": 1})
    assert C.verify_certificate(wrong, g)


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        C.Certificate("Nope")


@pytest.mark.parametrize("seed", range(3))
def test_mutations_break_every_sample(seed):
    rng = np.random.default_rng(seed)
    for cert, g in _samples():
        if cert.kind == "CliqueCountBound":
            continue
        c2, g2 = mutate(cert, g, rng)
        assert C.verify_certificate(c2, g2), cert.kind
