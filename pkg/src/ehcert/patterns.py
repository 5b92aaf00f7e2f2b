"""Induced copies: counting, search, edge-addition chains, extensions, rainbow copies.

Copies are counted labeled: ``ind_count(h, g)`` is the number of injective maps
``V(h) -> V(g)`` that preserve both adjacency and non-adjacency.  An unlabeled
count is smaller by the automorphism count of ``h``.  Every bound used by the
dichotomies is a lower bound on such a count, so the labeled convention only
makes them easier to meet; clique-count bounds that come from counting vertex
sets pick up a factor ``h!``, which is recorded where it happens.
"""

from dataclasses import dataclass
from math import factorial

import numpy as np

from . import _kernels
from .bits import from_iter, iter_bits, to_list
from .errors import PreconditionError, SearchLimitExceeded
from .graph import Graph, is_forest
from .limits import DEFAULT


class _Unknown:
    """Result of a search abandoned above its ceiling."""

    def __bool__(self):
        return False

    def __repr__(self):
        return "UNKNOWN"


UNKNOWN = _Unknown()


@dataclass(frozen=True)
class CopyMap:
    pattern: Graph
    host: Graph
    map: tuple

    def violations(self):
        from .certificates import copy_violations

        return copy_violations(self.pattern, self.map, self.host)

    def is_valid(self):
        return not self.violations()

    def image(self):
        return tuple(self.map)

    def to_certificate(self, **extra):
        from .certificates import induced_copy

        return induced_copy(self.pattern, self.map, **extra)


def _rel(h, order=None):
    k = h.n
    order = list(range(k)) if order is None else list(order)
    rel = np.zeros((k, k), dtype=np.int8)
    for a in range(k):
        for b in range(k):
            if a != b and h.has_edge(order[a], order[b]):
                rel[a, b] = 1
    return rel


def _mask_words(mask, nw):
    out = np.zeros(nw, dtype=np.uint64)
    for j in range(nw):
        out[j] = (mask >> (64 * j)) & ((1 << 64) - 1)
    return out


def _init(g, k, masks=None):
    adjw, _ = g.words()
    nw = adjw.shape[1]
    init = np.zeros((max(k, 1), nw), dtype=np.uint64)
    full = _mask_words(g.full_mask, nw)
    for i in range(k):
        init[i] = full if masks is None or masks[i] is None else _mask_words(masks[i] & g.full_mask, nw)
    return init


def _guard(h, g, limits):
    if h.n > limits.count_pattern_vertices:
        raise SearchLimitExceeded(f"pattern has {h.n} vertices; ceiling is {limits.count_pattern_vertices}")
    if g.n > limits.count_host_vertices:
        raise SearchLimitExceeded(f"host has {g.n} vertices; ceiling is {limits.count_host_vertices}")


def _count_order(h):
    """Pattern order for counting: greedily keep each next vertex attached to the prefix."""
    k = h.n
    if k == 0:
        return []
    deg = h.degrees()
    order = [max(range(k), key=lambda v: (deg[v], -v))]
    rest = set(range(k)) - set(order)
    while rest:
        v = max(rest, key=lambda u: (sum(h.has_edge(u, w) for w in order), deg[u], -u))
        order.append(v)
        rest.remove(v)
    return order


def twin_classes(h):
    """Classes of vertices with identical relations to every other vertex.

    Permuting the images of a class maps copies to copies, so counting may fix
    their order and multiply by the class factorials.
    """
    k = h.n
    label = list(range(k))
    for u in range(k):
        if label[u] != u:
            continue
        for v in range(u + 1, k):
            if label[v] == v and all(h.has_edge(u, w) == h.has_edge(v, w) for w in range(k) if w not in (u, v)):
                label[v] = u
    classes = {}
    for v in range(k):
        classes.setdefault(label[v], []).append(v)
    return list(classes.values())


def _no_prev(k):
    return np.full(max(k, 1), -1, dtype=np.int64)


def ind_count(h, g, limits=DEFAULT, masks=None):
    """Number of labeled induced copies of ``h`` in ``g``.

    ``masks`` optionally restricts the image of pattern vertex ``i`` to the
    bitset ``masks[i]`` (``None`` entries are unrestricted).
    """
    _guard(h, g, limits)
    if h.n > g.n:
        return 0
    adjw, nonw = g.words()
    if masks is not None:
        order = list(range(h.n))
        init = _init(g, h.n, [masks[v] for v in order])
        count, _ = _kernels.search(adjw, nonw, _rel(h, order), init, False, _no_prev(h.n))
        return int(count)
    order = _count_order(h)
    at = {v: i for i, v in enumerate(order)}
    prev = _no_prev(h.n)
    factor = 1
    for cls in twin_classes(h):
        factor *= factorial(len(cls))
        levels = sorted(at[v] for v in cls)
        for a, b in zip(levels, levels[1:]):
            prev[b] = a
    count, _ = _kernels.search(adjw, nonw, _rel(h, order), _init(g, h.n), False, prev)
    return int(count) * factor


def clique_count_labeled(g, h):
    """Labeled ``K_h`` copies: ``h!`` times the number of ``h``-cliques."""
    from .construct import complete_graph

    if h > g.n:
        return 0
    if h > DEFAULT.count_pattern_vertices or g.n > DEFAULT.count_host_vertices:
        # unlabeled clique listing is cheap enough for the sizes the verifier sees
        from .cliques import clique_list

        return len(clique_list(g, h)) * factorial(h)
    return ind_count(complete_graph(h), g)


def find_copy(h, g, limits=DEFAULT, masks=None):
    """A copy of ``h`` in ``g`` as a :class:`CopyMap`, or ``None`` when ``g`` is ``h``-free.

    The search is deterministic: the same inputs always give the same copy.
    It raises :class:`SearchLimitExceeded` after ``limits.find_nodes`` placements.
    """
    if h.n > limits.find_pattern_vertices or g.n > limits.find_host_vertices:
        raise SearchLimitExceeded("find_copy input above ceiling")
    if h.n > g.n:
        return None
    init = _init(g, h.n, masks)
    deg, gdeg = h.degrees(), g.degrees()
    adjw, nonw = g.words()
    nw = adjw.shape[1]
    for u in range(h.n):
        fits = [v for v in range(g.n) if gdeg[v] >= deg[u] and g.n - 1 - gdeg[v] >= h.n - 1 - deg[u]]
        init[u] &= _mask_words(from_iter(fits), nw)
    status, phi = _kernels.find_first(adjw, nonw, _rel(h), init, limits.find_nodes)
    if status < 0:
        raise SearchLimitExceeded(f"find_copy gave up after {limits.find_nodes} placements")
    if status == 0:
        return None
    cm = CopyMap(h, g, tuple(int(v) for v in phi))
    assert cm.is_valid()
    return cm


def is_free(h, g, limits=DEFAULT):
    return find_copy(h, g, limits) is None


def iter_copies(h, g, masks=None):
    """All labeled copies in lexicographic order of the image tuple (pure Python)."""
    k = h.n
    full = g.full_mask
    phi = [0] * k

    def cands(level):
        c = full if masks is None or masks[level] is None else masks[level]
        for j in range(level):
            c &= g.adj[phi[j]] if h.has_edge(j, level) else g.nonadj(phi[j])
        return c

    def rec(level):
        if level == k:
            yield tuple(phi)
            return
        for v in iter_bits(cands(level)):
            phi[level] = v
            yield from rec(level + 1)

    yield from rec(0)


# -- edge-addition chains ---------------------------------------------------

@dataclass(frozen=True)
class EdgeChain:
    """Graphs ``H_0 .. H_m`` on ``V(h)``; ``added[i-1]`` is the edge turning ``H_{i-1}`` into ``H_i``."""

    graphs: tuple
    added: tuple
    index_of_h: int

    @property
    def m(self):
        return len(self.graphs) - 1

    def __getitem__(self, i):
        return self.graphs[i]


def edge_chain(h):
    """Chain through ``h``: downward by deleting its edges in lexicographic order,
    upward by adding its non-edges in lexicographic order."""
    k = h.n
    edges = h.edges()
    non = [(a, b) for a in range(k) for b in range(a + 1, k) if not h.has_edge(a, b)]
    e = len(edges)
    graphs = []
    for i in range(e + 1):
        graphs.append(Graph.from_edges(k, edges[e - i:]))
    for j in range(1, len(non) + 1):
        graphs.append(Graph.from_edges(k, edges + non[:j]))
    added = tuple(edges[e - i] for i in range(1, e + 1)) + tuple(non)
    return EdgeChain(tuple(graphs), added, e)


@dataclass(frozen=True)
class Extension:
    x: int
    y: int
    P: tuple
    Q: tuple


def _j_vertices(k, p, q):
    return [v for v in range(k) if v not in (p, q)]


def extension_counts(chain, i, g, psi):
    """Extensions of a copy ``psi`` of ``J = H_i - {p, q}`` (given as the image
    of J's vertices in ascending pattern order) to copies of ``H_i`` and ``H_{i-1}``."""
    if not 1 <= i <= chain.m:
        raise PreconditionError("step index out of range")
    hi = chain[i]
    p, q = chain.added[i - 1]
    if not hi.has_edge(p, q) or chain[i - 1].has_edge(p, q):
        raise PreconditionError("pq is not the edge added at this step")
    jv = _j_vertices(hi.n, p, q)
    psi = tuple(int(v) for v in psi)
    if len(psi) != len(jv):
        raise PreconditionError("psi has the wrong length")
    jgraph, _ = hi.induced(jv)
    if CopyMap(jgraph, g, psi).violations():
        raise PreconditionError("psi is not a copy of J")

    def ext_set(a):
        c = g.full_mask
        for idx, v in enumerate(jv):
            c &= g.adj[psi[idx]] if hi.has_edge(a, v) else g.nonadj(psi[idx])
        return c

    pm, qm = ext_set(p), ext_set(q)
    x = sum((g.adj[u] & qm).bit_count() for u in iter_bits(pm))
    y = sum((g.nonadj(u) & qm).bit_count() for u in iter_bits(pm))
    return Extension(x, y, tuple(to_list(pm)), tuple(to_list(qm)))


# -- rainbow copies ---------------------------------------------------------

def _bfs_order(f):
    order, seen = [], 0
    for r in range(f.n):
        if (seen >> r) & 1:
            continue
        seen |= 1 << r
        queue = [r]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in iter_bits(f.adj[v] & ~seen):
                seen |= 1 << u
                queue.append(u)
    return order


def rainbow_find(f, blockade, g, limits=DEFAULT, require_forest=True):
    """A copy of ``f`` inside ``V(blockade)`` meeting each block at most once.

    Returns a :class:`CopyMap`, ``None`` after an exhaustive search, or
    :data:`UNKNOWN` when the input is above the configured ceiling.
    """
    if require_forest and not is_forest(f):
        raise PreconditionError("rainbow search expects a forest pattern")
    if g.n > limits.rainbow_host_vertices or f.n > limits.rainbow_forest_vertices:
        return UNKNOWN
    if f.n == 0:
        return CopyMap(f, g, ())
    masks = blockade.masks
    owner = {}
    for bi, m in enumerate(masks):
        for v in iter_bits(m):
            owner[v] = bi
    union = blockade.union
    order = _bfs_order(f)
    phi = {}

    def rec(level, used):
        if level == len(order):
            return True
        a = order[level]
        c = union & ~used
        for b, v in phi.items():
            c &= g.adj[v] if f.has_edge(a, b) else g.nonadj(v)
        for v in iter_bits(c):
            phi[a] = v
            if rec(level + 1, used | masks[owner[v]]):
                return True
            del phi[a]
        return False

    if not rec(0, 0):
        return None
    cm = CopyMap(f, g, tuple(phi[a] for a in range(f.n)))
    assert cm.is_valid()
    return cm


def rainbow_violations(cm, blockade):
    owner = {}
    for bi, b in enumerate(blockade.blocks):
        for v in b:
            owner[v] = bi
    hits = [owner.get(v) for v in cm.map]
    out = []
    if None in hits:
        out.append("image leaves the blockade")
    used = [b for b in hits if b is not None]
    if len(used) != len(set(used)):
        out.append("a block is hit twice")
    return out + cm.violations()


__all__ = [
    "UNKNOWN",
    "CopyMap",
    "EdgeChain",
    "Extension",
    "ind_count",
    "clique_count_labeled",
    "find_copy",
    "is_free",
    "iter_copies",
    "edge_chain",
    "extension_counts",
    "rainbow_find",
    "rainbow_violations",
]
