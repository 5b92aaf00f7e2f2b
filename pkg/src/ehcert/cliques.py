"""Exact clique / stable-set search and constructive Ramsey extraction."""

from . import certificates as C
from .bits import lowest, popcount, to_list
from .errors import PreconditionError, SearchLimitExceeded
from .limits import DEFAULT


def _colour_order(adj, p):
    """Greedy sequential colouring of ``p``; returns vertices and colour bounds."""
    order, bounds = [], []
    rest = p
    colour = 0
    while rest:
        colour += 1
        q = rest
        while q:
            low = q & -q
            v = low.bit_length() - 1
            rest &= ~low
            q &= ~low & ~adj[v]
            order.append(v)
            bounds.append(colour)
    return order, bounds


def _branch_and_bound(adj, p, target):
    """Largest clique inside bitset ``p``; stops early once ``target`` is reached."""
    best = []

    def expand(r, p):
        nonlocal best
        order, bounds = _colour_order(adj, p)
        for i in range(len(order) - 1, -1, -1):
            if len(r) + bounds[i] <= len(best) or len(best) >= target:
                return
            v = order[i]
            r.append(v)
            np_ = p & adj[v]
            if np_:
                expand(r, np_)
            elif len(r) > len(best):
                best = list(r)
            r.pop()
            p &= ~(1 << v)

    if p:
        expand([], p)
    return sorted(best)


def _check_ceiling(g, limits):
    if g.n > limits.exact_clique_vertices:
        raise SearchLimitExceeded(f"exact clique search refused above {limits.exact_clique_vertices} vertices")


def max_clique(g, mask=None, limits=DEFAULT):
    """A maximum clique of ``G[mask]`` (whole graph by default), as a sorted list."""
    _check_ceiling(g, limits)
    p = g.full_mask if mask is None else mask
    return _branch_and_bound(g.adj, p, popcount(p) + 1)


def max_stable(g, mask=None, limits=DEFAULT):
    return max_clique(g.complement(), mask, limits)


def find_clique(g, k, mask=None, limits=DEFAULT):
    """Some clique of size exactly ``k`` inside ``mask``, or ``None``."""
    _check_ceiling(g, limits)
    if k <= 0:
        return []
    p = g.full_mask if mask is None else mask
    best = _branch_and_bound(g.adj, p, k)
    return sorted(best[:k]) if len(best) >= k else None


def find_stable(g, k, mask=None, limits=DEFAULT):
    return find_clique(g.complement(), k, mask, limits)


def clique_number(g, limits=DEFAULT):
    return len(max_clique(g, limits=limits))


def stability_number(g, limits=DEFAULT):
    return len(max_stable(g, limits=limits))


def ramsey_extract(g, t, k):
    """Stable set of size ``t`` or clique of size ``k`` in a graph with at least ``t**k`` vertices.

    Pick the least vertex; its neighbourhood holds at least ``t**(k-1)`` of the
    rest, or its non-neighbourhood holds at least ``(t-1)**k``.
    """
    if t < 1 or k < 1:
        raise PreconditionError("t and k must be positive")
    if g.n < t**k:
        raise PreconditionError(f"need at least t^k = {t**k} vertices, graph has {g.n}")
    stable, clq = [], []
    s = g.full_mask
    while True:
        if t == 1:
            stable.append(lowest(s))
            return C.stable_set(stable, min_size=len(stable))
        if k == 1:
            clq.append(lowest(s))
            return C.clique(clq, min_size=len(clq))
        v = lowest(s)
        nb = s & g.adj[v]
        non = s & ~g.adj[v] & ~(1 << v)
        if popcount(nb) >= t ** (k - 1):
            clq.append(v)
            s, k = nb, k - 1
        else:
            assert popcount(non) >= (t - 1) ** k
            stable.append(v)
            s, t = non, t - 1


def clique_list(g, k, mask=None):
    """All ``k``-cliques (as sorted tuples) inside ``mask``, in lexicographic order."""
    p = g.full_mask if mask is None else mask
    out = []

    def rec(prefix, cand):
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        for v in to_list(cand):
            prefix.append(v)
            rec(prefix, cand & g.adj[v] & ~((1 << (v + 1)) - 1))
            prefix.pop()

    rec([], p)
    return out

