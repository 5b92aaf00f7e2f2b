"""Constructors: subdivisions, Swiss Army graphs and seeded generators."""

import numpy as np

from .errors import PreconditionError
from .graph import Graph, Multigraph, is_forest


def subdivide(mg, select=None, times=2):
    """Replace every selected parallel class by paths with ``times`` new inner vertices each.

    ``select`` is an iterable of vertex pairs (``None`` selects every class) and
    ``times`` is an int or a dict from pairs to ints.  Original vertices keep
    their ids; new vertices follow, class by class in sorted order, each path
    listed from its smaller end.
    """
    chosen = None if select is None else {(min(u, v), max(u, v)) for u, v in select}
    if isinstance(times, dict):
        per = {(min(u, v), max(u, v)): int(k) for (u, v), k in times.items()}
    else:
        per = None
        times = int(times)
        if times < 0:
            raise PreconditionError("times must be non-negative")
    edges = []
    nxt = mg.n
    for (u, v), mult in mg.edges:
        if chosen is None or (u, v) in chosen:
            k = per.get((u, v), 0) if per is not None else times
            if k < 0:
                raise PreconditionError("times must be non-negative")
        else:
            k = 0
        if k == 0:
            if mult > 1:
                raise PreconditionError(f"class {u}-{v} keeps {mult} parallel edges")
            edges.append((u, v))
            continue
        for _ in range(mult):
            path = [u] + list(range(nxt, nxt + k)) + [v]
            nxt += k
            edges.extend(zip(path, path[1:]))
    return Graph.from_edges(nxt, edges)


def swiss_army(f, s, t):
    """The graph F^s_t.

    Vertices ``0..|F|-1`` are the forest, ``|F|..|F|+t-1`` the apex set X, and
    the subdivision vertices follow in the order fixed by :func:`subdivide`.
    """
    if s < 1 or t < 1:
        raise PreconditionError("s and t must be at least 1")
    if not is_forest(f):
        raise PreconditionError("the base graph must be a forest")
    nf = f.n
    xs = range(nf, nf + t)
    edges = {e: 1 for e in f.edges()}
    apex = []
    for i, x in enumerate(xs):
        for y in list(xs)[i + 1:]:
            apex.append((x, y))
        for v in range(nf):
            apex.append((v, x))
    for e in apex:
        edges[e] = s
    return subdivide(Multigraph(nf + t, edges), select=apex, times=2)


def swiss_army_size(nf, s, t):
    return nf + t + 2 * s * (t * (t - 1) // 2 + nf * t)


# -- generators ---------------------------------------------------------------

def empty_graph(n):
    return Graph(n)


def complete_graph(n):
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)], check=False)


def path_graph(n):
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n):
    if n < 3:
        raise PreconditionError("cycles need at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves):
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a, b):
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs):
    edges, off = [], 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges())
        off += g.n
    return Graph.from_edges(off, edges)


def join(*graphs):
    """Disjoint union plus every edge between different parts."""
    base = disjoint_union(*graphs)
    edges = base.edges()
    starts = np.cumsum([0] + [g.n for g in graphs])
    for i in range(len(graphs)):
        for j in range(i + 1, len(graphs)):
            edges.extend((u, v) for u in range(starts[i], starts[i + 1]) for v in range(starts[j], starts[j + 1]))
    return Graph.from_edges(base.n, edges)


def random_graph(n, p, seed):
    """Erdős–Rényi G(n, p); deterministic in ``seed``."""
    if not 0 <= p <= 1:
        raise PreconditionError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def random_bipartite(a, b, p, seed):
    rng = np.random.default_rng(seed)
    keep = rng.random((a, b)) < p
    us, vs = np.nonzero(keep)
    return Graph.from_edges(a + b, zip(us.tolist(), (vs + a).tolist()))


def random_forest(n, seed, keep=0.75):
    """Random recursive tree on ``n`` vertices with each edge kept with probability ``keep``."""
    rng = np.random.default_rng(seed)
    edges = []
    for v in range(1, n):
        if rng.random() < keep:
            edges.append((int(rng.integers(0, v)), v))
    return Graph.from_edges(n, edges)


_NAMED = {"P": path_graph, "C": cycle_graph, "K": complete_graph, "E": empty_graph, "S": star_graph}


def pattern_by_name(name):
    """``P4``, ``C5``, ``K3``, ``E2`` (edgeless) or ``S3`` (star with 3 leaves)."""
    name = name.strip()
    try:
        return _NAMED[name[0].upper()](int(name[1:]))
    except (KeyError, ValueError, IndexError):
        raise PreconditionError(f"unknown pattern name {name!r}") from None
