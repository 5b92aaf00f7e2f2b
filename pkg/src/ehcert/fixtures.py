"""Planted fixtures whose intended structure is known in advance.

The dense-pair machinery looks for pairs through the chain of a pattern, so
the blob fixtures come with the pattern that makes the descent fire on them:
the diamond labelled so that deleting its first edge leaves an induced
4-cycle.  Complete bipartite blobs are full of 4-cycles and (nearly) free of
induced 4-vertex paths, and a triangle-free host never contains the diamond.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .construct import disjoint_union, empty_graph, swiss_army
from .graph import Graph
from .patterns import edge_chain


def chain_diamond():
    """Diamond with chord 0-1; its chain descends diamond, C4, P4."""
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert edge_chain(g)[4].m == 4
    return g


def blob_graph(k, w, pad=0):
    """``k`` disjoint copies of ``K_{w,w}`` followed by ``pad`` isolated vertices.

    Blob ``i`` occupies ``[2wi, 2wi + w)`` (side A) and ``[2wi + w, 2w(i+1))`` (side B).
    """
    g = empty_graph(0)
    for _ in range(k):
        g = disjoint_union(g, _kww(w))
    return disjoint_union(g, empty_graph(pad))


def _kww(w):
    return Graph.from_edges(2 * w, ((i, w + j) for i in range(w) for j in range(w)))


def sparsity_level(g):
    """Least ``y`` in ``1, 1/2, 1/4, ...`` with every degree at most ``y |G|``."""
    worst = max(g.degrees(), default=0)
    y = Fraction(1)
    while worst <= (y / 2) * g.n and y > Fraction(1, 2**20):
        y /= 2
    return y


@dataclass(frozen=True)
class PlantedHandset:
    graph: Graph
    k: int
    w: int
    s: int
    t: int
    x: tuple
    y: tuple
    matching: tuple
    noise: tuple

    def side_a(self, i):
        return range(2 * self.w * i, 2 * self.w * i + self.w)

    def side_b(self, i):
        return range(2 * self.w * i + self.w, 2 * self.w * (i + 1))


def planted_handset(k, s, t, w=None, seed=0, noise=2):
    """Blobs ``K_{w,w}`` joined by an induced matching that realises the
    auxiliary graph "clique on the first ``t`` blobs, complete to the rest".

    Matching ends sit just above the least vertex of each B side, where the
    dense-pair search keeps them.  ``noise`` random A-to-A edges are added
    between blobs, skipping any that would close a triangle.
    """
    if not 1 <= t < k:
        raise ValueError("need 1 <= t < k")
    xs, ys = tuple(range(t)), tuple(range(t, k))
    ends_needed = s * (k - 1)
    if w is None:
        w = max(16, 2 * ends_needed + 8)
    g = blob_graph(k, w)
    edges = set(g.edges())
    nxt = {i: 2 * w * i + w + 1 for i in range(k)}
    matching = []
    for i in xs:
        for j in range(i + 1, k):
            for _ in range(s):
                u, v = nxt[i], nxt[j]
                nxt[i] += 1
                nxt[j] += 1
                matching.append((u, v))
                edges.add((u, v))
    rng = np.random.default_rng(seed)
    planted = []
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    tries = 0
    while len(planted) < noise and tries < 100 * (noise + 1):
        tries += 1
        i, j = (int(z) for z in rng.choice(k, size=2, replace=False))
        u = 2 * w * i + int(rng.integers(w // 2 + 1, w))
        v = 2 * w * j + int(rng.integers(w // 2 + 1, w))
        if adj.get(u, set()) & adj.get(v, set()) or v in adj.get(u, set()):
            continue
        planted.append((min(u, v), max(u, v)))
        edges.add((min(u, v), max(u, v)))
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    g = Graph.from_edges(2 * w * k, edges)
    return PlantedHandset(g, k, w, s, t, xs, ys, tuple(matching), tuple(planted))


def handset_overrides(ph, y):
    """Level constants for a planted handset: one pair per blob, trimmed to
    ``w - 4`` vertices, sparse outcome switched off."""
    n = ph.graph.n
    size_x = ph.w - 4
    return {
        "sd_eps": Fraction(1, 5),
        "sd_k": ph.k,
        "sd_pair_frac": Fraction(size_x, 2 * n),
        "sd_sparse_frac": Fraction(1),
        "hs_k": ph.k,
        "hs_n": len(ph.y),
        "hs_m": ph.k + 1,
        "hs_width_frac": Fraction(1, 4 * n) * ((size_x + 1) // 2 // 2),
    }


def plant_rainbow(g, blocks, f, seed=0):
    """Add the edges of forest ``f`` on one vertex from each of the first ``|f|`` blocks."""
    rng = np.random.default_rng(seed)
    if f.n > len(blocks):
        raise ValueError("forest has more vertices than the blockade has blocks")
    image = [int(blocks[i][int(rng.integers(len(blocks[i])))]) for i in range(f.n)]
    edges = set(g.edges()) | {tuple(sorted((image[a], image[b]))) for a, b in f.edges()}
    return Graph.from_edges(g.n, edges), tuple(image)


def clustered_blockade(clusters, per_cluster, w, x, seed=0, p=Fraction(1, 2)):
    """Blockade of ``clusters * per_cluster`` blocks of width ``w`` and its host graph.

    Each block spans a connected seeded random graph.  When a vertex may have
    one neighbour in another block (``x * w >= 1``), consecutive blocks of a
    cluster are chained by a single edge, so clusters are the components and
    no vertex has two neighbours outside its block.  This leaves no rainbow
    copy of a 3-vertex path.
    """
    rng = np.random.default_rng(seed)
    count = clusters * per_cluster
    n = count * w
    edges = set()
    for i in range(count):
        base = i * w
        for a in range(w - 1):
            edges.add((base + a, base + a + 1))
        for a in range(w):
            for b in range(a + 2, w):
                if rng.random() < float(p):
                    edges.add((base + a, base + b))
    if x * w >= 1 and w >= 2:
        for c in range(clusters):
            for j in range(per_cluster - 1):
                i = c * per_cluster + j
                edges.add((i * w + w - 1, (i + 1) * w))
    from .graph import Blockade

    blocks = [range(i * w, (i + 1) * w) for i in range(count)]
    return Graph.from_edges(n, edges), Blockade(blocks)


def planted_swiss(f, s, t, pad):
    """``swiss_army(f, s, t)`` followed by ``pad`` isolated vertices."""
    return disjoint_union(swiss_army(f, s, t), empty_graph(pad))


def random_cograph(n, seed):
    """Random P4-free graph: recursive disjoint unions and joins."""
    from .construct import join

    rng = np.random.default_rng(seed)

    def build(k):
        if k == 1:
            return empty_graph(1)
        cut = int(rng.integers(1, k))
        a, b = build(cut), build(k - cut)
        return join(a, b) if rng.random() < 0.5 else disjoint_union(a, b)

    return build(n) if n else empty_graph(0)


def random_cluster_graph(n, seed):
    """Random P3-free graph: a disjoint union of cliques."""
    from .construct import complete_graph

    rng = np.random.default_rng(seed)
    parts, left = [], n
    while left:
        k = int(rng.integers(1, min(left, max(2, n // 3)) + 1))
        parts.append(complete_graph(k))
        left -= k
    return disjoint_union(*parts) if parts else empty_graph(0)


def free_host(name, n, seed, p=0.3):
    """Seeded graph on ``n`` vertices free of the named pattern (P3, P4, K3, C5)."""
    from .construct import random_bipartite

    key = name.upper()
    if key == "P3":
        return random_cluster_graph(n, seed)
    if key == "P4":
        return random_cograph(n, seed)
    if key in ("K3", "C5"):
        return random_bipartite(n // 2, n - n // 2, p, seed)
    raise ValueError(f"no free-host generator for {name!r}")
