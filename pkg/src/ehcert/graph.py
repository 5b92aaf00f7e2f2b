"""Immutable simple graphs over dense vertex ids, stored as adjacency bitsets.

Vertex ``v`` of a :class:`Graph` on ``n`` vertices is an int in ``range(n)``;
``g.adj[v]`` is a Python int whose bit ``u`` is set iff ``uv`` is an edge.
"""

from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .bits import from_iter, iter_bits, popcount
from .numerics import exact
from .errors import PreconditionError


class Graph:
    __slots__ = ("_n", "_adj", "_cache")

    def __init__(self, n, adj=None, *, check=True):
        n = int(n)
        if n < 0:
            raise PreconditionError("vertex count must be non-negative")
        if adj is None:
            adj = (0,) * n
        adj = tuple(int(a) for a in adj)
        if len(adj) != n:
            raise PreconditionError("adjacency length differs from vertex count")
        if check:
            full = (1 << n) - 1
            for v, a in enumerate(adj):
                if a & ~full:
                    raise PreconditionError(f"vertex {v} has a neighbour out of range")
                if (a >> v) & 1:
                    raise PreconditionError(f"loop at vertex {v}")
                for u in iter_bits(a):
                    if not (adj[u] >> v) & 1:
                        raise PreconditionError(f"asymmetric adjacency {v}-{u}")
        self._n = n
        self._adj = adj
        self._cache = {}

    @classmethod
    def from_edges(cls, n, edges):
        adj = [0] * n
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, check=False)

    @classmethod
    def from_matrix(cls, mat):
        a = np.asarray(mat, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise PreconditionError("adjacency matrix must be square")
        if (a != a.T).any() or a.diagonal().any():
            raise PreconditionError("adjacency matrix must be symmetric with zero diagonal")
        us, vs = np.nonzero(np.triu(a, 1))
        return cls.from_edges(a.shape[0], zip(us.tolist(), vs.tolist()))

    # -- basic queries -------------------------------------------------
    @property
    def n(self):
        return self._n

    def __len__(self):
        return self._n

    @property
    def adj(self):
        return self._adj

    @property
    def full_mask(self):
        return (1 << self._n) - 1

    @property
    def m(self):
        if "m" not in self._cache:
            self._cache["m"] = sum(popcount(a) for a in self._adj) // 2
        return self._cache["m"]

    def has_edge(self, u, v):
        return bool((self._adj[u] >> v) & 1)

    def neighbors(self, v):
        return list(iter_bits(self._adj[v]))

    def degree(self, v):
        return popcount(self._adj[v])

    def degrees(self):
        return [popcount(a) for a in self._adj]

    def edges(self):
        out = []
        for u, a in enumerate(self._adj):
            for v in iter_bits(a >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def nonadj(self, v):
        """Bitset of vertices other than ``v`` not adjacent to ``v``."""
        return self.full_mask & ~self._adj[v] & ~(1 << v)

    def to_matrix(self):
        mat = np.zeros((self._n, self._n), dtype=bool)
        for u, v in self.edges():
            mat[u, v] = mat[v, u] = True
        return mat

    def words(self):
        """Adjacency and non-adjacency as ``(n, W)`` uint64 arrays (cached)."""
        if "words" not in self._cache:
            n = self._n
            w = max(1, (n + 63) // 64)
            adj = np.zeros((n, w), dtype=np.uint64)
            non = np.zeros((n, w), dtype=np.uint64)
            mask64 = (1 << 64) - 1
            for v in range(n):
                a, b = self._adj[v], self.nonadj(v)
                for j in range(w):
                    adj[v, j] = (a >> (64 * j)) & mask64
                    non[v, j] = (b >> (64 * j)) & mask64
            self._cache["words"] = (adj, non)
        return self._cache["words"]

    # -- derived graphs ------------------------------------------------
    def complement(self):
        full = self.full_mask
        return Graph(self._n, [full & ~a & ~(1 << v) for v, a in enumerate(self._adj)], check=False)

    def induced(self, vertices):
        return induced(self, vertices)

    def relabel(self, perm):
        """Graph whose vertex ``perm[v]`` plays the role of ``v``."""
        perm = list(perm)
        if sorted(perm) != list(range(self._n)):
            raise PreconditionError("relabel needs a permutation of the vertices")
        return Graph.from_edges(self._n, ((perm[u], perm[v]) for u, v in self.edges()))

    # -- dunder --------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Graph) and self._n == other._n and self._adj == other._adj

    def __hash__(self):
        return hash((self._n, self._adj))

    def __repr__(self):
        return f"Graph(n={self._n}, m={self.m})"


def complement(g):
    return g.complement()


def induced(g, vertices):
    """Return ``(G[X], back)`` where ``back[i]`` is the host id of new vertex ``i``.

    New ids follow ascending host ids.
    """
    vlist = [int(v) for v in vertices]
    vs = sorted(set(vlist))
    if len(vs) != len(vlist):
        raise PreconditionError("vertex list contains duplicates")
    for v in vs:
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} is not in the graph")
    pos = {v: i for i, v in enumerate(vs)}
    adj = []
    for v in vs:
        a = 0
        for u in iter_bits(g.adj[v]):
            i = pos.get(u)
            if i is not None:
                a |= 1 << i
        adj.append(a)
    return Graph(len(vs), adj, check=False), tuple(vs)


def mask_of(g, vertices):
    m = from_iter(vertices)
    if m >> g.n:
        raise PreconditionError("vertex set is not inside the graph")
    return m


def count_edges_between(g, a_mask, b_mask):
    """Edges with one end in each of two disjoint sets."""
    return sum(popcount(g.adj[v] & b_mask) for v in iter_bits(a_mask))


def count_edges_inside(g, mask):
    return sum(popcount(g.adj[v] & mask) for v in iter_bits(mask)) // 2


def nonedges_between(g, a_mask, b_mask):
    return popcount(a_mask) * popcount(b_mask) - count_edges_between(g, a_mask, b_mask)


PairSparsity = namedtuple("PairSparsity", "sparse dense max_deg_into_a min_deg_into_a")


def pair_sparsity(g, a, b, x):
    """Sparsity of ``b`` towards ``a``: every vertex of ``b`` has at most
    (``sparse``) or at least (``dense``) ``x|a|`` neighbours in ``a``."""
    am, bm = mask_of(g, a), mask_of(g, b)
    if am & bm:
        raise PreconditionError("sets overlap")
    if not am:
        raise PreconditionError("first set is empty")
    x = exact(x)
    lim = x * popcount(am)
    degs = [popcount(g.adj[v] & am) for v in iter_bits(bm)]
    hi = max(degs, default=0)
    lo = min(degs, default=0)
    return PairSparsity(hi <= lim, lo >= lim, hi, lo)


def is_sparse_graph(g, x, mask=None):
    """``G[mask]`` is x-sparse: every vertex has at most ``x|mask|`` neighbours inside."""
    if mask is None:
        mask = g.full_mask
    lim = exact(x) * popcount(mask)
    return all(popcount(g.adj[v] & mask) <= lim for v in iter_bits(mask))


def is_stable(g, vertices):
    m = from_iter(vertices)
    return all(not (g.adj[v] & m) for v in iter_bits(m))


def is_clique(g, vertices):
    m = from_iter(vertices)
    return all((g.adj[v] | (1 << v)) & m == m for v in iter_bits(m))


def is_forest(g):
    seen = 0
    for root in range(g.n):
        if (seen >> root) & 1:
            continue
        seen |= 1 << root
        stack = [(root, -1)]
        while stack:
            v, parent = stack.pop()
            for u in iter_bits(g.adj[v]):
                if u == parent:
                    continue
                if (seen >> u) & 1:
                    return False
                seen |= 1 << u
                stack.append((u, v))
    return True


def components(g, mask=None):
    """Connected components of ``G[mask]`` as bitsets, ordered by least vertex."""
    if mask is None:
        mask = g.full_mask
    out = []
    rest = mask
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


@dataclass(frozen=True)
class Multigraph:
    """Loopless multigraph: ``edges`` maps sorted pairs to multiplicities >= 1."""

    n: int
    edges: tuple

    def __init__(self, n, edges):
        table = {}
        items = edges.items() if isinstance(edges, dict) else ((e, 1) for e in edges)
        for (u, v), mult in items:
            u, v, mult = int(u), int(v), int(mult)
            if u == v:
                raise PreconditionError("multigraphs here have no loops")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge {u}-{v} out of range")
            if mult < 1:
                raise PreconditionError("multiplicities must be at least 1")
            key = (min(u, v), max(u, v))
            table[key] = table.get(key, 0) + mult
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(sorted(table.items())))

    def multiplicity(self, u, v):
        return dict(self.edges).get((min(u, v), max(u, v)), 0)


class Blockade:
    """Ordered sequence of pairwise disjoint vertex sets; empty blocks allowed."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        bl = tuple(tuple(sorted(int(v) for v in b)) for b in blocks)
        seen = 0
        for b in bl:
            m = from_iter(b)
            if len(b) != popcount(m):
                raise PreconditionError("a block lists a vertex twice")
            if m & seen:
                raise PreconditionError("blocks overlap")
            seen |= m
        self.blocks = bl

    @property
    def length(self):
        return len(self.blocks)

    @property
    def width(self):
        return min((len(b) for b in self.blocks), default=0)

    @property
    def masks(self):
        return [from_iter(b) for b in self.blocks]

    @property
    def union(self):
        m = 0
        for b in self.blocks:
            m |= from_iter(b)
        return m

    def is_equicardinal(self):
        return len({len(b) for b in self.blocks}) <= 1

    def sparsity_violations(self, g, x):
        """Ordered pairs (i, j) for which block j is not x-sparse to block i."""
        x = exact(x)
        masks = self.masks
        bad = []
        for i, bi in enumerate(masks):
            lim = x * popcount(bi)
            for j, bj in enumerate(masks):
                if i != j and any(popcount(g.adj[v] & bi) > lim for v in iter_bits(bj)):
                    bad.append((i, j))
        return bad

    def is_sym_sparse(self, g, x):
        return not self.sparsity_violations(g, x)

    def is_anticomplete(self, g):
        masks = self.masks
        u = 0
        for m in masks:
            if any(g.adj[v] & u for v in iter_bits(m)):
                return False
            u |= m
        return True

    def __eq__(self, other):
        return isinstance(other, Blockade) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"Blockade(length={self.length}, width={self.width})"
