from fractions import Fraction

import pytest

from ehcert import anticomplete as AC
from ehcert.anticomplete import (
    anticomplete_pair_search, blockparty, firststep, getanti2, getanti2_s, pure1_step, useanticom,
)
from ehcert.bits import from_iter, popcount
from ehcert.certificates import verify_certificate
from ehcert.constants import desk_sheet
from ehcert.construct import complete_graph, disjoint_union, empty_graph, path_graph
from ehcert.errors import Inconclusive, PreconditionError
from ehcert.fixtures import clustered_blockade, plant_rainbow
from ehcert.graph import Blockade, Graph
from ehcert.patterns import UNKNOWN

from mutations import toggle_edge
import oracles

EDGE = path_graph(2)


def _blocks(count, w):
    return [list(range(i * w, (i + 1) * w)) for i in range(count)]


def test_pair_search_layers():
    g = disjoint_union(path_graph(6), path_graph(6))
    a, b = anticomplete_pair_search(g, g.full_mask, 6)
    assert popcount(a) == popcount(b) == 6 and not any(g.adj[v] & b for v in range(12) if (a >> v) & 1)
    long = path_graph(20)
    a, b = anticomplete_pair_search(long, long.full_mask, 5)
    assert popcount(a) >= 5 and popcount(b) >= 5
    assert anticomplete_pair_search(complete_graph(8), (1 << 8) - 1, 2) is None
    assert anticomplete_pair_search(complete_graph(30), (1 << 30) - 1, 2) is UNKNOWN


def test_pure1_two_components_give_pair():
    g = disjoint_union(path_graph(6), path_graph(6))
    b = Blockade(_blocks(2, 6))
    c = pure1_step(g, b, EDGE, 2)
    assert c.kind == "AnticompletePair" and verify_certificate(c, g) == []


def test_pure1_single_cross_edge_gives_rainbow():
    g = Graph.from_edges(8, [(1, 5)])
    c = pure1_step(g, Blockade(_blocks(2, 4)), EDGE, 2)
    assert c.kind == "RainbowCopy" and sorted(c.mapping) == [1, 5]
    assert verify_certificate(c, g) == []


def test_pure1_recovers_planted_p5():
    blocks = _blocks(6, 10)
    g, image = plant_rainbow(empty_graph(60), blocks, path_graph(5), seed=5)
    c = pure1_step(g, Blockade(blocks), path_graph(5), 2)
    assert c.kind == "RainbowCopy" and set(c.mapping) == set(image)


def test_pure1_preconditions_and_inconclusive():
    with pytest.raises(PreconditionError):
        pure1_step(empty_graph(4), Blockade([[0, 1]]), EDGE, 2)
    with pytest.raises(PreconditionError):
        pure1_step(complete_graph(8), Blockade(_blocks(2, 4)), EDGE, 2)
    # one block: no rainbow edge, and no room for two disjoint sets of size w
    with pytest.raises(Inconclusive):
        pure1_step(empty_graph(4), Blockade([[0, 1, 2, 3]]), EDGE, 1)


def test_firststep_anticomplete_blocks():
    g = empty_graph(12 * 4)
    c = firststep(g, Blockade(_blocks(12, 4)), EDGE, 2)
    assert c.kind == "AnticompletePair" and verify_certificate(c, g) == []
    assert min(len(c["A"]), len(c["B"])) >= 4
    a, b = c["A"][0], c["B"][0]
    assert verify_certificate(c, toggle_edge(g, a, b))


def test_firststep_planted_rainbow():
    blocks = _blocks(12, 8)
    g, image = plant_rainbow(empty_graph(96), [blocks[0], blocks[6]], EDGE, seed=2)
    c = firststep(g, Blockade(blocks), EDGE, 2)
    assert c.kind == "RainbowCopy" and sorted(c.mapping) == sorted(image)


def test_blockparty_s1_gives_two_blocks():
    g = empty_graph(16 * 3)
    c = blockparty(g, Blockade(_blocks(16, 3)), EDGE, 2, 1)
    assert c.kind == "AnticompleteBlockade" and len(c.blocks) == 2
    assert oracles.cross_edges(g, c.blocks) == 0


def test_blockparty_four_clusters():
    d, s = 2, 2
    g, b = clustered_blockade(4, 2 * (2 * d * d) ** s // 4, 8, Fraction(2, (2 * d * d) ** s), seed=3)
    c = blockparty(g, b, path_graph(3), d, s)
    assert c.kind == "AnticompleteBlockade" and len(c.blocks) == 4
    assert oracles.cross_edges(g, c.blocks) == 0
    assert min(len(x) for x in c.blocks) >= c.bounds["min_width"]
    assert verify_certificate(c, g) == []


def test_blockparty_rejects_dense_blockade():
    g = complete_graph(16 * 2)
    with pytest.raises(PreconditionError):
        blockparty(g, Blockade(_blocks(16, 2)), EDGE, 2, 1)


def test_getanti2_s_arithmetic():
    assert getanti2_s(Fraction(1, 2**64), 8, 1) == 9
    assert getanti2_s(Fraction(1, 2**8), 8, 1) == 1
    assert getanti2_s(Fraction(1, 2**7), 8, 1) == 0
    assert getanti2_s(Fraction(1, 2**64), 8, Fraction(1, 2)) == 4


def _anti2_fixture():
    y = Fraction(1, 2**9)
    g, b = clustered_blockade(4, 128, 2, y, seed=0)
    return g, b, y


def test_getanti2_output_bounds():
    g, b, y = _anti2_fixture()
    c = getanti2(g, b, path_graph(3), 8, y, 1, 1)
    assert c.kind == "AnticompleteBlockade" and verify_certificate(c, g) == []
    assert len(c.blocks) == 2 ** getanti2_s(y, 8, 1)
    assert c.extra["alpha_prime"] == "1/15"
    # width w / (2d^2)^(s-1) >= y^alpha w, recomputed on the output
    assert min(len(x) for x in c.blocks) >= y * b.width


def test_getanti2_preconditions():
    g, b, y = _anti2_fixture()
    with pytest.raises(PreconditionError):
        getanti2(g, b, path_graph(3), 4, y, 1, 1)
    with pytest.raises(PreconditionError):
        getanti2(g, Blockade(b.blocks[:100]), path_graph(3), 8, y, 1, 1)


def test_useanticom_stable_union():
    g, b, y = _anti2_fixture()
    sheet = desk_sheet(alpha=1, gamma=1, beta=1)
    c = useanticom(g, b, path_graph(3), sheet, y)
    assert c.kind == "CriticalityWitness" and c.extra["witness"] == "BigStable"
    assert verify_certificate(c, g) == []
    s = from_iter(c["S"])
    assert not any(g.adj[v] & s for v in c["S"])
    assert len(c["S"]) >= c.bounds["min_size"]


def test_useanticom_passes_rainbow_through(monkeypatch):
    g, b, y = _anti2_fixture()
    fake = AC.C.rainbow_copy(EDGE, [0, 2], b.blocks)
    monkeypatch.setattr(AC, "getanti2", lambda *a, **k: fake)
    assert useanticom(g, b, EDGE, desk_sheet(alpha=1, gamma=1, beta=1), y) is fake
