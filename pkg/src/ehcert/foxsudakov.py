"""Copy-counting dichotomies: stable set or dense pair, clique count or sparse set.

All four procedures return a :class:`~ehcert.certificates.Certificate`.  When
the host turns out to contain the forbidden pattern, the copy itself is
returned as an ``InducedCopy`` certificate tagged ``diagnostic="pattern-found"``.

The dense-pair search walks the edge-addition chain from the complete graph
down, stops at the largest step ``i`` where ``f(i-1) < (eps/4) f(i)`` and scans
copies of ``J = H_i - {p, q}`` in lexicographic order for a royal one whose
extension sets give a pair with few nonedges.  Counting guarantees such a copy
exists, so failure to find one is reported as :class:`BoundDidNotFire`.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from . import certificates as C
from .bits import as_fraction, from_iter, iter_bits, popcount, to_list
from .cliques import find_stable
from .errors import BoundDidNotFire, PreconditionError
from .graph import count_edges_inside
from .limits import DEFAULT
from .numerics import ceil_frac, ceil_pow, ceil_scaled_power
from .patterns import clique_count_labeled, edge_chain, find_copy, ind_count


def _pattern_found(h, g, limits):
    cm = find_copy(h, g, limits)
    if cm is None:
        return None
    return cm.to_certificate(diagnostic="pattern-found")


def _check_eps(eps, upper=Fraction(1)):
    eps = as_fraction(eps)
    if not 0 < eps < upper:
        raise PreconditionError(f"eps must lie strictly between 0 and {upper}")
    return eps


@dataclass(frozen=True)
class Descent:
    """Outcome of the chain descent: step, counts seen, and the extracted pair."""

    step: int
    counts: dict
    w1: tuple
    w2: tuple
    psi: tuple
    split: str
    scanned: int


def chain_counts(chain, g, limits=DEFAULT):
    return [ind_count(hi, g, limits) for hi in chain.graphs]


def descend(g, h, eps, limits=DEFAULT, counts=None):
    """Locate the step and royal copy; ``None`` if no step qualifies."""
    eps = as_fraction(eps)
    chain = edge_chain(h)
    k, n = h.n, g.n
    seen = dict(counts or {})

    def cnt(i):
        if i not in seen:
            seen[i] = ind_count(chain[i], g, limits)
        return seen[i]

    step = None
    for i in range(chain.m, 0, -1):
        if 4 * eps.denominator * cnt(i - 1) < eps.numerator * cnt(i):
            step = i
            break
    if step is None:
        return None
    hi = chain[step]
    p, q = chain.added[step - 1]
    jv = [v for v in range(k) if v not in (p, q)]
    rel_j = np.zeros((len(jv), len(jv)), dtype=np.int8)
    for a, u in enumerate(jv):
        for b, w in enumerate(jv):
            if a != b and hi.has_edge(u, w):
                rel_j[a, b] = 1
    rel_p = np.array([1 if hi.has_edge(p, v) else 0 for v in jv], dtype=np.int8)
    rel_q = np.array([1 if hi.has_edge(q, v) else 0 for v in jv], dtype=np.int8)
    adjw, nonw = g.words()
    found, psi, scanned, _royal = _kernels.royal_search(
        adjw, nonw, rel_j, rel_p, rel_q, cnt(step), n, k, eps.numerator, eps.denominator
    )
    if not found:
        raise BoundDidNotFire("royal-copy scan", f"no royal copy of J yields a dense pair at step {step}")
    psi = tuple(int(v) for v in psi)

    def ext(a, rel):
        c = g.full_mask
        for idx in range(len(jv)):
            c &= g.adj[psi[idx]] if rel[idx] else g.nonadj(psi[idx])
        return c

    pm, qm = ext(p, rel_p), ext(q, rel_q)
    if pm == qm:
        members = to_list(pm)
        half = len(members) // 2
        w1, w2, split = tuple(members[:half]), tuple(members[half:]), "halves"
    else:
        assert not pm & qm
        w1, w2, split = tuple(to_list(pm)), tuple(to_list(qm)), "disjoint"
    return Descent(step, seen, w1, w2, psi, split, int(scanned))


def _single_edge(g):
    for u in range(g.n):
        if g.adj[u]:
            v = (g.adj[u] & -g.adj[u]).bit_length() - 1
            return (u,), (v,)
    return None


def foxsudmain_dichotomy(g, h, eps, t, limits=DEFAULT):
    """Stable set of size ``t``, or disjoint ``W1, W2`` in which every vertex of
    ``W1`` misses at most ``2 eps |W2|`` vertices of ``W2``."""
    eps = _check_eps(eps)
    n, k = g.n, h.n
    if t < 1:
        raise PreconditionError("t must be positive")
    if n < t:
        raise PreconditionError(f"graph has {n} < t = {t} vertices")
    found = _pattern_found(h, g, limits)
    if found is not None:
        return found
    s = find_stable(g, t, limits=limits)
    if s is not None:
        return C.stable_set(s, min_size=t)
    # |W| >= (2t)^{-k^2} eps^{k^2/2} n
    min_size = ceil_scaled_power(Fraction(n, (2 * t) ** (k * k)), eps, Fraction(k * k, 2))
    d = descend(g, h, eps, limits)
    if d is None:
        if n > t ** (k * k):
            raise BoundDidNotFire("chain descent", "no qualifying step although the graph is large")
        w1, w2 = _single_edge(g)
        return C.dense_pair(w1, w2, eps=eps, per_vertex=2 * eps, min_size=min_size, route="single-edge")
    w2m = from_iter(d.w2)
    lim = 2 * eps * len(d.w2)
    kept = [v for v in d.w1 if len(d.w2) - popcount(g.adj[v] & w2m) <= lim]
    if min(len(kept), len(d.w2)) < min_size:
        raise BoundDidNotFire("filtering", f"pair sizes {len(kept)},{len(d.w2)} below {min_size}")
    return C.dense_pair(kept, d.w2, eps=eps, per_vertex=2 * eps, min_size=min_size,
                        route="descent", step=d.step, split=d.split, psi=list(d.psi))


def stronger_certificate(g, h, delta, limits=DEFAULT):
    """Stable set of size at least ``n**c`` or a complete bipartite pair with
    sides at least ``n**(1-delta)`` and ``n**c``, where ``c = delta / (6|h|^2)``.

    At desk scale ``n**c <= 2`` always holds; then a non-edge is the stable
    set, and a complete graph yields the (degenerate) bipartite pair made of
    its first ``ceil(n**(1-delta))`` vertices and the next two.
    """
    delta = as_fraction(delta)
    n = g.n
    if not 0 < delta <= Fraction(1, 2):
        raise PreconditionError("delta must lie in (0, 1/2]")
    if not _pre_stronger(n, delta):
        raise PreconditionError("need 2/n + n^(-delta) <= 1")
    found = _pattern_found(h, g, limits)
    if found is not None:
        return found
    c = delta / (6 * h.n * h.n)
    side_a = ceil_pow(n, 1 - delta)
    side_c = ceil_pow(n, c)
    if _small_branch(n, c):
        for u in range(n):
            non = g.nonadj(u)
            if non:
                v = (non & -non).bit_length() - 1
                return C.stable_set([u, v], min_size=side_c, branch="small")
        a = list(range(side_a))
        b = list(range(side_a, side_a + side_c))
        return C.complete_bipartite(a, b, min_a=side_a, min_b=side_c, branch="small", degenerate=True)
    t = side_c
    eps = Fraction(1, 4 * t)
    res = foxsudmain_dichotomy(g, h, eps, t, limits)
    if res.kind == "StableSet":
        return C.stable_set(res["S"], min_size=side_c, branch="large")
    w1, w2 = res["W1"], res["W2"]
    if len(w1) < t:
        raise BoundDidNotFire("bipartite selection", f"|W1|={len(w1)} below t={t}")
    a = w1[:t]
    common = from_iter(w2)
    for v in a:
        common &= g.adj[v]
    b = to_list(common)
    if len(b) < side_a:
        raise BoundDidNotFire("bipartite selection", f"{len(b)} common neighbours, need {side_a}")
    return C.complete_bipartite(b, a, min_a=side_a, min_b=side_c, branch="large")


def _pre_stronger(n, delta):
    # 2/n + n^-delta <= 1  <=>  n^delta >= n/(n-2)
    if n <= 2:
        return False
    return Fraction(n) ** delta.numerator >= Fraction(n, n - 2) ** delta.denominator


def _small_branch(n, c):
    # n^c <= 2  <=>  n^p <= 2^q
    return Fraction(n) ** c.numerator <= Fraction(2) ** c.denominator


def countcliques_dichotomy(g, h, c, limits=DEFAULT):
    """Many labeled ``K_h`` copies, or a large set spanning few edges."""
    c = _check_eps(c)
    if h < 1:
        raise PreconditionError("h must be at least 1")
    n = g.n
    count = clique_count_labeled(g, h)
    lower = c ** (h * (h + 1) // 2) * n**h
    if count >= lower:
        return C.clique_count(h, count, lower, labeled=True)
    thr = c ** (h * (h - 1) // 2) * n
    min_size = ceil_frac(thr)
    witness = _sparse_witness(g, h, c, min_size)
    if witness is None:
        raise BoundDidNotFire("clique-count descent", "count below bound but no sparse common neighbourhood")
    return C.sparse_set(witness, eps=c, min_size=min_size, count=count)


def _sparse_witness(g, h, c, min_size):
    """First common neighbourhood of a clique on at most ``h-1`` vertices that is
    large and spans fewer than ``c|X|^2`` edges (depth-first, ascending vertices)."""
    if min_size < 1:
        min_size = 1

    def sparse(mask):
        s = popcount(mask)
        return s >= min_size and count_edges_inside(g, mask) < c * s * s

    def rec(mask, depth, start):
        if sparse(mask):
            return mask
        if depth == h - 1:
            return None
        for v in iter_bits(mask >> start << start):
            nxt = mask & g.adj[v]
            if popcount(nxt) >= min_size:
                r = rec(nxt, depth + 1, v + 1)
                if r is not None:
                    return r
        return None

    found = rec(g.full_mask, 0, 0)
    return None if found is None else to_list(found)


def strengthening_dichotomy(g, h, eps, limits=DEFAULT, sparse_min_size=None):
    """Sparse linear set or a dense pair, for graphs with few copies of ``h``.

    ``sparse_min_size`` replaces the size a sparse witness must reach.  With
    it set, a missing witness is not an error: the search moves on to the
    dense-pair descent, as it would if the clique count had been high.
    """
    eps = _check_eps(eps, Fraction(1, 4))
    n, k = g.n, h.n
    if n == 0:
        raise PreconditionError("graph is empty")
    copies = ind_count(h, g, limits)
    if not copies < (eps**k * n) ** k:
        raise PreconditionError(f"ind_H(G) = {copies} is not below (eps^h n)^h = {(eps**k * n) ** k}")
    if sparse_min_size is None:
        first = countcliques_dichotomy(g, k, eps, limits)
        if first.kind == "SparseSet":
            return first.with_(extra={"branch": "sparse"})
        top = int(first.bounds["count"])
    else:
        top = clique_count_labeled(g, k)
        witness = _sparse_witness(g, k, eps, sparse_min_size)
        if witness is not None:
            return C.sparse_set(witness, eps=eps, min_size=sparse_min_size, count=top, branch="sparse")
    d = descend(g, h, eps, limits, counts={edge_chain(h).m: top})
    if d is None:
        raise BoundDidNotFire("chain descent", "no qualifying step")
    min_size = ceil_frac(2 * (eps / 2) ** (k * k) * n)
    if min(len(d.w1), len(d.w2)) < min_size:
        raise BoundDidNotFire("pair size", f"sizes {len(d.w1)},{len(d.w2)} below {min_size}")
    return C.dense_pair(d.w1, d.w2, eps=eps, min_size=min_size, branch="dense", step=d.step, split=d.split,
                        psi=list(d.psi))


verify_certificate = C.verify_certificate

__all__ = [
    "foxsudmain_dichotomy",
    "stronger_certificate",
    "countcliques_dichotomy",
    "strengthening_dichotomy",
    "verify_certificate",
    "descend",
    "chain_counts",
    "Descent",
]
