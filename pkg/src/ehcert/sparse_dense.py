"""Mutually sparse sequences of dense pairs in a sparse ``h``-free graph.

Each round runs the strengthening dichotomy on what is left of the graph.  A
dense pair is trimmed to a fixed size, recorded, and every remaining vertex
with many neighbours in it is deleted, so later pairs are sparse to earlier
ones.  Within a pair, ``A`` is the side holding the smaller least vertex.  A
final cleaning pass makes the sparsity hold in both directions.  A
large sparse set from any round means the input had a much sparser linear
subset, which callers read as "descend to a smaller y".
"""

from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType

from . import certificates as C
from .bits import as_fraction, from_iter, iter_bits, popcount, to_list
from .errors import BoundDidNotFire, PreconditionError
from .foxsudakov import strengthening_dichotomy
from .graph import induced
from .limits import DEFAULT
from .numerics import Power, ceil_of, exact, real_text
from .patterns import find_copy


class Verdict(list):
    """Violation list that can also carry non-fatal flags."""

    def __init__(self, items=(), flags=()):
        super().__init__(items)
        self.flags = list(flags)


@dataclass(frozen=True)
class DensePairSequence:
    pairs: tuple
    y: object
    h: int
    bounds: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((tuple(a), tuple(b)) for a, b in self.pairs))
        object.__setattr__(self, "bounds", MappingProxyType({k: exact(v) for k, v in self.bounds.items()}))

    def __len__(self):
        return len(self.pairs)

    def to_certificate(self, **extra):
        blocks = [s for pair in self.pairs for s in pair]
        return C.Certificate("DensePairSequence", blocks=blocks, bounds=dict(self.bounds),
                             extra={"y": real_text(self.y), "h": self.h, **extra})

    @classmethod
    def from_certificate(cls, cert):
        b = cert.blocks
        if len(b) % 2:
            raise ValueError("odd number of blocks")
        pairs = [(b[i], b[i + 1]) for i in range(0, len(b), 2)]
        return cls(pairs, as_fraction(cert.extra["y"]), int(cert.extra["h"]), dict(cert.bounds))


def _sparse_to(g, src, dst_mask, dst_size, x):
    """Vertices of ``src`` with more than ``x * dst_size`` neighbours in ``dst``."""
    lim = x * dst_size
    return [v for v in src if popcount(g.adj[v] & dst_mask) > lim]


def verify_sequence(seq, g):
    out = Verdict()
    sets = [s for pair in seq.pairs for s in pair]
    for s in sets:
        if any(not 0 <= v < g.n for v in s):
            out.append("dangling vertex reference")
            return out
    seen = 0
    for i, s in enumerate(sets):
        m = from_iter(s)
        if m.bit_count() != len(s):
            out.append(f"set {i} lists a vertex twice")
        if m & seen:
            out.append(f"set {i} overlaps an earlier set")
        seen |= m
    bd = seq.bounds
    if "size" in bd:
        for i, s in enumerate(sets):
            if len(s) != bd["size"]:
                out.append(f"set {i} has size {len(s)}, claimed {bd['size']}")
    if "nonedge" in bd:
        for i, (a, b) in enumerate(seq.pairs):
            ma, mb = from_iter(a), from_iter(b)
            non = len(a) * len(b) - sum(popcount(g.adj[v] & mb) for v in iter_bits(ma))
            if non > bd["nonedge"] * len(a) * len(b):
                out.append(f"pair {i} has {non} nonedges, above {bd['nonedge']} * |A||B|")
    if "cross" in bd:
        x = bd["cross"]
        for i, j in combinations(range(len(seq.pairs)), 2):
            for si in seq.pairs[i]:
                for sj in seq.pairs[j]:
                    if _sparse_to(g, si, from_iter(sj), len(sj), x) or _sparse_to(g, sj, from_iter(si), len(si), x):
                        out.append(f"pairs {i} and {j} are not {real_text(x)}-sparse to each other")
    if "length" in bd and len(seq.pairs) < bd["length"]:
        if len(seq.pairs) == 0:
            out.flags.append(f"below-length: empty sequence, target {bd['length']}")
        else:
            out.append(f"length {len(seq.pairs)} below claimed {bd['length']}")
    return out


def trim_pair(g, w1, w2, size, bound, limits=DEFAULT):
    """Subsets of ``w1``, ``w2`` of exactly ``size`` vertices with at most
    ``bound * size**2`` nonedges between them.

    Greedy: drop the vertex with the most non-neighbours on the other side
    (ties drop the larger id), which never raises the nonedge density.  Below
    the exhaustive ceiling the lexicographically first feasible pair is
    searched directly if greedy misses.
    """
    a, b = list(w1), list(w2)
    if min(len(a), len(b)) < size:
        raise BoundDidNotFire("averaging", f"sides {len(a)},{len(b)} smaller than {size}")

    def miss(v, other):
        return len(other) - popcount(g.adj[v] & from_iter(other))

    while len(a) > size or len(b) > size:
        if len(a) - size >= len(b) - size:
            worst = max(a, key=lambda v: (miss(v, b), v))
            a.remove(worst)
        else:
            worst = max(b, key=lambda v: (miss(v, a), v))
            b.remove(worst)

    def non(x, y):
        my = from_iter(y)
        return len(x) * len(y) - sum(popcount(g.adj[v] & my) for v in x)

    lim = bound * size * size
    if non(a, b) <= lim:
        return tuple(sorted(a)), tuple(sorted(b))
    if len(w1) + len(w2) <= limits.averaging_exhaustive_vertices:
        for x in combinations(sorted(w1), size):
            for y in combinations(sorted(w2), size):
                if non(x, y) <= lim:
                    return x, y
    raise BoundDidNotFire("averaging", "no trimmed pair meets the nonedge bound")


def _lift(back, vs):
    return [back[v] for v in vs]


def sparse_dense_sequence(g, h, y, sheet, limits=DEFAULT, trace=None):
    """Dense-pair sequence of the configured length, or a large ``y^2``-sparse set.

    Returns a :class:`DensePairSequence`, a ``SparseSet`` certificate, or the
    ``InducedCopy`` diagnostic when ``g`` contains ``h``.
    """
    y = as_fraction(y)
    if not 0 < y <= 1:
        raise PreconditionError("y must lie in (0, 1]")
    n, k = g.n, h.n
    if n == 0:
        raise PreconditionError("graph is empty")
    worst = max(g.degrees())
    if worst > y * n:
        raise PreconditionError(f"graph is not {y}-sparse: a vertex has degree {worst} > {y * n}")
    cm = find_copy(h, g, limits)
    if cm is not None:
        return cm.to_certificate(diagnostic="pattern-found")

    def at(key):
        return sheet.at(key, y, k)

    eps = at("sd_eps")
    target = int(at("sd_k"))
    size_x = ceil_of(2 * at("sd_pair_frac") * n)
    sparse_min = max(1, ceil_of(at("sd_sparse_frac") * n))
    density = at("sd_sparse_density")
    inner = at("sd_inner")
    log = trace if trace is not None else []
    full = g.full_mask
    removed = 0
    xs, ys = [], []
    while len(xs) < target:
        rest = full & ~removed
        if not rest:
            raise BoundDidNotFire("sparse-dense", f"graph exhausted after {len(xs)} of {target} pairs")
        sub, back = induced(g, to_list(rest))
        res = strengthening_dichotomy(sub, h, eps, limits, sparse_min_size=2 * sparse_min)
        log.append({"stage": "sparse-dense", "round": len(xs), "remaining": sub.n, "branch": res.kind})
        if res.kind == "SparseSet":
            s = _lift(back, res["S"])
            sm = from_iter(s)
            keep = [v for v in s if popcount(g.adj[v] & sm) <= density * len(s) / 2]
            km = from_iter(keep)
            ok = len(keep) >= sparse_min and all(popcount(g.adj[v] & km) <= density * len(keep) for v in keep)
            if not ok:
                raise BoundDidNotFire("sparse-dense", "sparse branch did not yield a large y^2-sparse subset")
            return C.sparse_set(keep, max_degree_frac=density, min_size=sparse_min, branch="hypothesis-failure")
        if res.kind != "DensePair":
            raise BoundDidNotFire("sparse-dense", f"unexpected branch {res.kind}")
        w1, w2 = _lift(back, res["W1"]), _lift(back, res["W2"])
        x, yy = trim_pair(g, w1, w2, size_x, at("sd_trim_nonedge"), limits)
        if yy[0] < x[0]:
            x, yy = yy, x
        xs.append(x)
        ys.append(yy)
        mx, my = from_iter(x), from_iter(yy)
        removed |= mx | my
        lx, ly = inner * len(x), inner * len(yy)
        dump = [v for v in iter_bits(full & ~removed)
                if popcount(g.adj[v] & mx) >= lx or popcount(g.adj[v] & my) >= ly]
        removed |= from_iter(dump)
        if sheet.pristine:
            # |G'| >= (1 - 4 y^(1/4)) |G| while fewer than y^(-1/4) pairs exist
            left = popcount(full & ~removed)
            assert left >= (1 - 4 * Power.of(y, as_fraction("1/4"))) * n or len(xs) >= target
    return _clean(g, xs, ys, y, k, at, target)


def _clean(g, xs, ys, y, k, at, target):
    cross = at("sd_cross")
    half = cross / 2
    count = len(xs)
    pairs = []
    for i in range(count):
        later = [s for j in range(i + 1, count) for s in (xs[j], ys[j])]
        masks = [(from_iter(s), len(s)) for s in later]

        def quiet(v):
            return all(popcount(g.adj[v] & m) <= half * sz for m, sz in masks)

        a_ok = [v for v in xs[i] if quiet(v)]
        b_ok = [v for v in ys[i] if quiet(v)]
        need_a, need_b = -(-len(xs[i]) // 2), -(-len(ys[i]) // 2)
        if len(a_ok) < need_a or len(b_ok) < need_b:
            raise BoundDidNotFire("cleaning", f"pair {i}: {len(a_ok)},{len(b_ok)} survivors, need {need_a}")
        pairs.append((tuple(a_ok[:need_a]), tuple(b_ok[:need_b])))
    size = len(pairs[0][0]) if pairs else 0
    seq = DensePairSequence(pairs, y, k, {"size": size, "nonedge": at("sd_pair_nonedge"), "cross": cross,
                                          "length": target})
    bad = verify_sequence(seq, g)
    if bad:
        raise BoundDidNotFire("sparse-dense", "; ".join(bad[:3]))
    return seq


__all__ = ["DensePairSequence", "Verdict", "sparse_dense_sequence", "trim_pair", "verify_sequence"]
