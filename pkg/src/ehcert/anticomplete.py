"""Rainbow copies of a forest versus anticomplete pairs and blockades.

The base step (:func:`pure1_step`) is an exact search: it looks for a rainbow
copy of the forest, then for a large anticomplete pair by component splits,
ball growing from a start vertex, and finally exhaustive search on small
inputs.  When all of these come back empty it raises :class:`Inconclusive`
rather than guess.  The other steps are the constructive recursions built on
top of it.
"""

from fractions import Fraction

from . import certificates as C
from .bits import as_fraction, from_iter, iter_bits, popcount, to_list
from .errors import BoundDidNotFire, Inconclusive, PreconditionError
from .graph import Blockade, Graph, components
from .handset import ExactOracle
from .limits import DEFAULT
from .numerics import Power, ceil_frac, ceil_of, exact, real_text
from .patterns import UNKNOWN, rainbow_find


# -- anticomplete pair search ----------------------------------------------

def _nbhd(g, a):
    out = a
    for v in iter_bits(a):
        out |= g.adj[v]
    return out


def _split_components(g, mask, target):
    comps = sorted(components(g, mask), key=lambda m: (-popcount(m), m & -m))
    a = b = 0
    for m in comps:
        if popcount(a) <= popcount(b):
            a |= m
        else:
            b |= m
    if popcount(a) >= target and popcount(b) >= target:
        return (a, b) if (a & -a) < (b & -b) else (b, a)
    return None


def _grow_balls(g, mask, target):
    """Ball ``N^r[u]`` against everything at distance at least ``r + 2`` from ``u``."""
    for u in iter_bits(mask):
        ball = 1 << u
        while True:
            shell = _nbhd(g, ball) & mask
            far = mask & ~_nbhd(g, shell)
            if popcount(far) < target:
                break
            if popcount(ball) >= target:
                return ball, far
            if shell == ball:
                break
            ball = shell
    return None


def _exhaustive_pair(g, mask, target):
    verts = to_list(mask)

    def rec(start, a, closed):
        far = mask & ~closed
        if popcount(far) < target:
            return None
        if popcount(a) >= target:
            return a, far
        for i in range(start, len(verts)):
            v = verts[i]
            got = rec(i + 1, a | (1 << v), closed | (1 << v) | (g.adj[v] & mask))
            if got:
                return got
        return None

    return rec(0, 0, 0)


def anticomplete_pair_search(g, mask, target, limits=DEFAULT):
    """Disjoint anticomplete ``A, B`` inside ``mask`` with ``|A|, |B| >= target``.

    Returns ``(A, B)`` as bitsets, ``None`` when the search was exhaustive and
    found nothing, or :data:`UNKNOWN` when the exhaustive layer was skipped.
    """
    target = max(1, int(target))
    if popcount(mask) < 2 * target:
        return None
    for step in (_split_components, _grow_balls):
        got = step(g, mask, target)
        if got:
            return got
    if popcount(mask) <= limits.exhaustive_bipartition_vertices:
        return _exhaustive_pair(g, mask, target)
    return UNKNOWN


# -- pure1 -----------------------------------------------------------------

def _max_degree_inside(g, mask):
    return max((popcount(g.adj[v] & mask) for v in iter_bits(mask)), default=0)


def pure1_step(g, b, f, d, limits=DEFAULT, trace=None):
    """Rainbow copy of ``f`` or an anticomplete pair of size at least ``w/d``.

    The blockade must have length at least ``d`` and every vertex of
    ``G[V(b)]`` degree below ``w/d``.
    """
    d = int(d)
    if d < 1:
        raise PreconditionError("d must be positive")
    if b.length < d:
        raise PreconditionError(f"blockade length {b.length} below d = {d}")
    w = b.width
    u = b.union
    bound = Fraction(w, d)
    deg = _max_degree_inside(g, u)
    if not deg < bound:
        raise PreconditionError(f"a vertex has degree {deg}, need below w/d = {bound}")
    log = trace if trace is not None else []
    cm = rainbow_find(f, b, g, limits)
    if cm:
        log.append({"stage": "pure1", "outcome": "rainbow"})
        return C.rainbow_copy(f, cm.map, b.blocks)
    target = ceil_frac(bound)
    pair = anticomplete_pair_search(g, u, target, limits)
    if pair is None or pair is UNKNOWN:
        why = "ceiling" if pair is UNKNOWN or cm is UNKNOWN else "exhausted"
        log.append({"stage": "pure1", "outcome": "inconclusive", "reason": why})
        raise Inconclusive("pure1", f"no rainbow copy and no anticomplete pair of size {target} ({why})")
    a, bb = pair
    log.append({"stage": "pure1", "outcome": "pair", "sizes": [popcount(a), popcount(bb)]})
    return C.anticomplete_pair(to_list(a), to_list(bb), min_size=bound)


# -- firststep -------------------------------------------------------------

def _check_blockade(g, b, length, x):
    if b.length < length:
        raise PreconditionError(f"blockade length {b.length} below {length}")
    if not b.is_equicardinal():
        raise PreconditionError("blockade is not equicardinal")
    bad = b.sparsity_violations(g, x)
    if bad:
        raise PreconditionError(f"blockade is not symmetrically {real_text(x)}-sparse (blocks {bad[0]})")


def _cross_graph(g, blocks):
    """Edges of ``g`` joining two different blocks; other vertices isolated."""
    owner = [0] * g.n
    union = 0
    for m in blocks:
        union |= m
        for v in iter_bits(m):
            owner[v] = m
    adj = [(g.adj[v] & union & ~owner[v]) if (union >> v) & 1 else 0 for v in range(g.n)]
    return Graph(g.n, adj, check=False)


def _grouped(blocks, groups, size):
    return Blockade([[v for blk in blocks[i * size:(i + 1) * size] for v in blk] for i in range(groups)])


def firststep(g, b, f, d, limits=DEFAULT, trace=None):
    """Rainbow copy of ``f`` or an anticomplete pair of size at least the width.

    Uses the first ``3d^2`` blocks.  They are merged into ``d`` groups of
    ``3d`` consecutive blocks, the base step runs on the cross-block edges,
    and a pair found there is split at the least block index where one side
    reaches ``w`` vertices.
    """
    d = int(d)
    big = 3 * d * d
    _check_blockade(g, b, big, Fraction(1, d * d))
    blocks = b.blocks[:big]
    w = b.width
    gp = _cross_graph(g, [from_iter(x) for x in blocks])
    res = pure1_step(gp, _grouped(blocks, d, 3 * d), f, d, limits, trace)
    if res.kind == "RainbowCopy":
        # images lie in different groups, hence different blocks, where G' and G agree
        return C.rainbow_copy(f, res.mapping, b.blocks)
    a, bb = from_iter(res["A"]), from_iter(res["B"])
    prefix = 0
    for i, blk in enumerate(blocks):
        prefix |= from_iter(blk)
        if popcount(a & prefix) >= w:
            first, second = a & prefix, bb & ~prefix
            break
        if popcount(bb & prefix) >= w:
            first, second = bb & prefix, a & ~prefix
            break
    else:
        raise BoundDidNotFire("firststep", "neither side reaches the width")
    if popcount(second) < w:
        raise BoundDidNotFire("firststep", "the far side fell below the width after splitting")
    out = C.anticomplete_pair(to_list(first), to_list(second), min_size=w)
    assert not C.verify_certificate(out, g)
    return out


# -- blockparty ------------------------------------------------------------

def blockparty(g, b, f, d, s, limits=DEFAULT, trace=None):
    """Rainbow copy of ``f`` or an anticomplete blockade of length exactly ``2^s``
    and width at least ``w / (2d^2)^(s-1)``.

    Uses the first ``2 (2d^2)^s`` blocks.
    """
    d, s = int(d), int(s)
    if s < 1:
        raise PreconditionError("s must be at least 1")
    q = 2 * d * d
    big = 2 * q**s
    _check_blockade(g, b, big, Fraction(2, q**s))
    log = trace if trace is not None else []
    kind, body = _party(g, Blockade(b.blocks[:big]), f, d, s, limits, log)
    if kind == "rainbow":
        return C.rainbow_copy(f, body, b.blocks)
    width = Fraction(b.width, q ** (s - 1))
    out = C.anticomplete_blockade(body, length=2**s, min_width=width)
    bad = C.verify_certificate(out, g)
    assert not bad, bad
    return out


def _party(g, b, f, d, s, limits, log):
    if s == 1:
        res = firststep(g, b, f, d, limits, log)
        if res.kind == "RainbowCopy":
            return "rainbow", res.mapping
        return "blocks", [res["A"], res["B"]]
    q = 2 * d * d
    big = len(b.blocks)
    w = b.width
    u = b.union
    sub = Graph(g.n, [g.adj[v] & u if (u >> v) & 1 else 0 for v in range(g.n)], check=False)
    res = pure1_step(sub, _grouped(b.blocks, d, big // d), f, d, limits, log)
    if res.kind == "RainbowCopy":
        return "rainbow", res.mapping
    small = 2 * q ** (s - 1)
    need = Fraction(w, q)
    size = ceil_frac(need)
    out = []
    for side in ("A", "B"):
        m = from_iter(res[side])
        picked = [blk for blk in b.blocks if popcount(m & from_iter(blk)) >= need]
        if len(picked) < small:
            raise BoundDidNotFire("blockparty", f"only {len(picked)} blocks meet side {side}, need {small}")
        inner = Blockade([sorted(v for v in blk if (m >> v) & 1)[:size] for blk in picked[:small]])
        log.append({"stage": "blockparty", "s": s, "side": side, "blocks": small, "width": size})
        kind, body = _party(g, inner, f, d, s - 1, limits, log)
        if kind == "rainbow":
            return kind, body
        out.extend(body)
    return "blocks", out


# -- getanti2 --------------------------------------------------------------

def getanti2_s(y, d, alpha):
    """Largest integer ``s`` with ``y^(-alpha) >= 2 (2d^2)^s``; 0 when none is positive."""
    top = Power.of(as_fraction(y), -as_fraction(alpha))
    q = 2 * int(d) ** 2
    s = 0
    while top >= 2 * q ** (s + 1):
        s += 1
    return s


def getanti2(g, b, f, d, y, alpha, beta, limits=DEFAULT, trace=None):
    """Rainbow copy of ``f`` or an anticomplete ``(y^-alpha', y^beta' |G|)``-blockade,
    with ``alpha' = alpha / (5 log d)`` and ``beta' = alpha + beta``.
    """
    d = int(d)
    if d < 8:
        raise PreconditionError("getanti2 needs d >= 8")
    y, alpha, beta = as_fraction(y), as_fraction(alpha), as_fraction(beta)
    if not 0 < y <= 1:
        raise PreconditionError("y must lie in (0, 1]")
    if not b.length >= Power.of(y, -alpha):
        raise PreconditionError(f"blockade length {b.length} below y^-alpha")
    if not b.width >= Power(g.n, y, beta):
        raise PreconditionError(f"blockade width {b.width} below y^beta |G|")
    if not b.is_equicardinal():
        raise PreconditionError("blockade is not equicardinal")
    x = exact(Power.of(y, alpha))
    bad = b.sparsity_violations(g, x)
    if bad:
        raise PreconditionError(f"blockade is not symmetrically y^alpha-sparse (blocks {bad[0]})")
    s = getanti2_s(y, d, alpha)
    if s < 1:
        raise PreconditionError("y^-alpha is below 2 (2d^2)")
    log = trace if trace is not None else []
    log.append({"stage": "getanti2", "s": s})
    res = blockparty(g, b, f, d, s, limits, log)
    if res.kind == "RainbowCopy":
        return res
    from .constants import _log2_exact

    alpha_p = alpha / (5 * _log2_exact(d))
    beta_p = alpha + beta
    width = min(len(blk) for blk in res.blocks)
    # length 2^s >= y^-alpha' and width >= y^alpha w >= y^beta' |G|
    assert 2**s >= Power.of(y, -alpha_p)
    assert Fraction(b.width, (2 * d * d) ** (s - 1)) >= Power(b.width, y, alpha)
    assert width >= Power(g.n, y, beta_p)
    return res.with_(bounds={"length": 2**s, "min_width": exact(Power(g.n, y, beta_p))},
                     extra={**res.extra, "alpha_prime": real_text(alpha_p), "beta_prime": real_text(beta_p)})


# -- useanticom ------------------------------------------------------------

def useanticom(g, b, f, sheet, y, oracle=None, limits=DEFAULT, trace=None):
    """Rainbow copy of ``f``, or a stable union across an anticomplete blockade.

    The blockade must be a ``(y^-alpha, y^beta |G|)``-blockade that is
    equicardinal and symmetrically ``y^gamma``-sparse, with the exponents and
    ``d`` read from ``sheet``.  The witness is a ``BigStable`` criticality
    witness; ``extra["defeats_budget"]`` records whether its size reaches
    ``|G|^c / omega(G)``.
    """
    oracle = oracle or ExactOracle(limits)
    alpha = min(sheet["alpha"], sheet["gamma"])
    log = trace if trace is not None else []
    res = getanti2(g, b, f, sheet["d_pure1"], y, alpha, sheet["beta"], limits, log)
    if res.kind == "RainbowCopy":
        return res
    parts = [oracle.stable(g, blk) for blk in res.blocks]
    union = sorted(v for p in parts for v in p)
    omega = oracle.omega(g)
    budget = ceil_of(Power(Fraction(1, omega), g.n, sheet["c"]))
    log.append({"stage": "useanticom", "stable": len(union), "budget": budget})
    return C.criticality_witness("BigStable", union, min_size=sum(len(p) for p in parts), omega=omega,
                                 budget=budget, defeats_budget=len(union) >= budget)


__all__ = [
    "anticomplete_pair_search",
    "blockparty",
    "firststep",
    "getanti2",
    "getanti2_s",
    "pure1_step",
    "useanticom",
]
