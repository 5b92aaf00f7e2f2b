"""Handsets over sparse blockades.

A handset has ``t`` palms.  For each palm and each block there are ``s``
fingers ``palm - b - c``, where ``c`` sees its whole block and nothing else of
the blockade.  Every pair of palms is also joined by ``s`` paths
``palm - b - c - palm``.  Given a rainbow copy of a forest on the blockade, the
palms, fingers and links complete it to an induced Swiss Army graph.
:func:`compose_swiss` builds that copy.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import certificates as C
from .bits import from_iter, iter_bits, popcount, to_list
from .cliques import find_stable, max_clique, max_stable
from .construct import swiss_army
from .errors import BoundDidNotFire, PreconditionError
from .graph import Blockade, Graph, induced, is_stable
from .limits import DEFAULT
from .numerics import Power, ceil_of, exact, real_text
from .sparse_dense import DensePairSequence, sparse_dense_sequence


@dataclass(frozen=True)
class Handset:
    """Palms, fingers ``fingers[(i, j)] = ((a, b, c), ...)`` and links ``links[(i, i2)] = ((b, c), ...)``."""

    blocks: tuple
    palms: tuple
    fingers: dict
    links: dict
    s: int

    @property
    def t(self):
        return len(self.palms)

    @property
    def blockade(self):
        return Blockade(self.blocks)

    def vertices(self):
        out = set(self.palms)
        for trip in self.fingers.values():
            for a, b, c in trip:
                out.update((a, b, c))
        for pairs in self.links.values():
            for b, c in pairs:
                out.update((b, c))
        return out

    def intended_edges(self):
        e = set()
        for trip in self.fingers.values():
            for a, b, c in trip:
                e.add(frozenset((a, b)))
                e.add(frozenset((b, c)))
        for (i, j), pairs in self.links.items():
            for b, c in pairs:
                e.update(frozenset(p) for p in ((self.palms[i], b), (b, c), (c, self.palms[j])))
        return e

    def to_json(self):
        return {
            "s": self.s,
            "blocks": [list(b) for b in self.blocks],
            "palms": list(self.palms),
            "fingers": [[i, j, [list(x) for x in trip]] for (i, j), trip in sorted(self.fingers.items())],
            "links": [[i, j, [list(x) for x in pairs]] for (i, j), pairs in sorted(self.links.items())],
        }

    @classmethod
    def from_json(cls, d):
        return cls(
            tuple(tuple(int(v) for v in b) for b in d["blocks"]),
            tuple(int(v) for v in d["palms"]),
            {(int(i), int(j)): tuple(tuple(int(v) for v in x) for x in trip) for i, j, trip in d["fingers"]},
            {(int(i), int(j)): tuple(tuple(int(v) for v in x) for x in pairs) for i, j, pairs in d["links"]},
            int(d["s"]),
        )

    def to_certificate(self, **bounds):
        return C.Certificate("Handset", blocks=self.blocks, bounds=bounds, extra={"handset": self.to_json()})


def verify_handset(hs, g, bounds=None):
    """Every finger, hand, thickened-hand and link condition, recomputed from ``g``."""
    out = []
    t, s, k = hs.t, hs.s, len(hs.blocks)
    if t < 1 or s < 1:
        return [f"arity: need s, t >= 1, got s={s}, t={t}"]
    if k < 1:
        return ["arity: empty blockade"]
    want_f = {(i, j) for i in range(t) for j in range(k)}
    want_l = {(i, j) for i, j in combinations(range(t), 2)}
    if set(hs.fingers) != want_f:
        out.append("arity: fingers must be given for every (palm, block)")
    if set(hs.links) != want_l:
        out.append("arity: links must be given for every pair of palms")
    for key, trip in hs.fingers.items():
        if len(trip) != s or any(len(x) != 3 for x in trip):
            out.append(f"arity: fingers {key} need {s} triples")
        elif any(x[0] != hs.palms[key[0]] for x in trip if 0 <= key[0] < t):
            out.append(f"fingers {key} do not start at their palm")
    for key, pairs in hs.links.items():
        if len(pairs) != s or any(len(x) != 2 for x in pairs):
            out.append(f"arity: links {key} need {s} pairs")
    if out:
        return out
    everything = list(hs.palms) + [v for b in hs.blocks for v in b]
    everything += [v for trip in hs.fingers.values() for x in trip for v in x[1:]]
    everything += [v for pairs in hs.links.values() for x in pairs for v in x]
    if any(not 0 <= v < g.n for v in everything):
        return ["dangling vertex reference"]
    try:
        bl = Blockade(hs.blocks)
    except PreconditionError as exc:
        return [f"blockade: {exc}"]
    vb = bl.union
    if any(not b for b in hs.blocks):
        out.append("blockade has an empty block")
    inner = [v for trip in hs.fingers.values() for x in trip for v in x[1:]]
    inner += [v for pairs in hs.links.values() for x in pairs for v in x]
    if len(set(hs.palms)) != t:
        out.append("palms are not distinct")
    if len(set(inner)) != len(inner) or set(inner) & set(hs.palms):
        out.append("finger and link vertices are not all distinct")
    if from_iter(set(hs.palms) | set(inner)) & vb:
        out.append("a handset vertex lies in the blockade")
    masks = bl.masks
    for (i, j), trip in hs.fingers.items():
        for a, b, c in trip:
            if g.adj[c] & masks[j] != masks[j]:
                out.append(f"finger c={c} is not complete to block {j}")
            if g.adj[c] & (vb & ~masks[j]):
                out.append(f"finger c={c} sees another block")
            if g.adj[a] & vb or g.adj[b] & vb:
                out.append(f"finger {a}-{b}-{c}: a or b sees the blockade")
    for pairs in hs.links.values():
        for b, c in pairs:
            if g.adj[b] & vb or g.adj[c] & vb:
                out.append(f"link vertex {b} or {c} sees the blockade")
    # hands, thickening and links together: G[handset] is exactly the intended graph
    verts = sorted(hs.vertices())
    want = hs.intended_edges()
    for u, v in combinations(verts, 2):
        has = g.has_edge(u, v)
        if has != (frozenset((u, v)) in want):
            out.append(f"handset pair {u}-{v} is {'an edge' if has else 'a nonedge'} in the host")
            if len(out) > 20:
                break
    out.extend(_blockade_bounds(bl, g, bounds or {}))
    return out


def _blockade_bounds(bl, g, bd):
    out = []
    if "cross" in bd and not bl.is_sym_sparse(g, bd["cross"]):
        out.append(f"blockade is not symmetrically {real_text(bd['cross'])}-sparse")
    if bd.get("equicardinal") and not bl.is_equicardinal():
        out.append("blockade is not equicardinal")
    if "min_length" in bd and bl.length < bd["min_length"]:
        out.append(f"length {bl.length} below {bd['min_length']}")
    if "min_width" in bd and bl.width < bd["min_width"]:
        out.append(f"width {bl.width} below {real_text(bd['min_width'])}")
    return out


# -- getstable --------------------------------------------------------------

def getstable_dichotomy(f, t, n, m):
    """``("stable", I)`` with ``|I| = m``, or ``("clique", X, Y)`` with ``X`` a
    ``t``-clique complete to ``Y``, ``|Y| >= n``.

    Induction on ``t``: without a stable ``m``-set some vertex has at least
    ``m**(t-1) n`` neighbours, and the search continues inside them.
    """
    if m < 1 or t < 0 or n < 0:
        raise PreconditionError("need m >= 1 and t, n >= 0")
    if f.n < m**t * n:
        raise PreconditionError(f"|F| = {f.n} is below m^t n = {m**t * n}")
    pool = f.full_mask
    chosen = []
    for level in range(t, 0, -1):
        sub, back = induced(f, to_list(pool))
        st = find_stable(sub, m)
        if st is not None:
            return ("stable", tuple(back[v] for v in st))
        need = m ** (level - 1) * n
        v = next((back[u] for u in range(sub.n) if sub.degree(u) >= need), None)
        if v is None:  # excluded by the chromatic-number argument
            raise BoundDidNotFire("getstable", "no vertex of the required degree")
        chosen.append(v)
        pool &= f.adj[v]
    return ("clique", tuple(sorted(chosen)), tuple(to_list(pool)))


def find_clique_hub(f, t, n):
    """Exhaustive search for a ``t``-clique ``X`` with at least ``n`` common neighbours.

    Used when ``|F| < m**t n`` puts the lemma out of reach; ``None`` if there is none.
    """
    def rec(x, common, start):
        if len(x) == t:
            return (tuple(x), tuple(to_list(common))) if popcount(common) >= n else None
        for v in iter_bits(common >> start << start):
            r = rec(x + [v], common & f.adj[v], v + 1)
            if r is not None:
                return r
        return None

    return rec([], f.full_mask, 0)


# -- matching ---------------------------------------------------------------

def capped_induced_matching(g, parts, s):
    """Greedy induced matching of ``G[C]`` (``C`` the union of ``parts``) with at
    most ``s`` edges between any two parts; maximal under that cap.

    Edges are offered in lexicographic order.  An edge rejected once stays
    rejected, because accepting more edges only adds conflicts.
    """
    owner = {}
    for i, p in enumerate(parts):
        if not is_stable(g, p):
            raise PreconditionError(f"part {i} is not stable")
        for v in p:
            if v in owner:
                raise PreconditionError("parts overlap")
            owner[v] = i
    used = 0  # ends of accepted edges and their neighbours
    per = {}
    out = []
    for u in sorted(owner):
        for v in iter_bits(g.adj[u] >> (u + 1) << (u + 1)):
            if v not in owner or owner[v] == owner[u]:
                continue
            key = tuple(sorted((owner[u], owner[v])))
            if per.get(key, 0) >= s:
                continue
            if (used >> u) & 1 or (used >> v) & 1:
                continue
            out.append((u, v))
            per[key] = per.get(key, 0) + 1
            used |= (1 << u) | (1 << v) | g.adj[u] | g.adj[v]
    return out


def matching_is_maximal(g, parts, s, m):
    """Re-check maximality by trying every admissible augmentation."""
    owner = {v: i for i, p in enumerate(parts) for v in p}
    ends = set()
    per = {}
    for u, v in m:
        ends.update((u, v))
        key = tuple(sorted((owner[u], owner[v])))
        per[key] = per.get(key, 0) + 1
    blocked = 0
    for u in ends:
        blocked |= (1 << u) | g.adj[u]
    for u in owner:
        for v in iter_bits(g.adj[u]):
            if v in owner and owner[u] != owner[v] and not (blocked >> u) & 1 and not (blocked >> v) & 1:
                if per.get(tuple(sorted((owner[u], owner[v]))), 0) < s:
                    return False
    return True


def is_induced_matching(g, m):
    ends = [v for e in m for v in e]
    if len(set(ends)) != len(ends):
        return False
    if any(not g.has_edge(u, v) for u, v in m):
        return False
    for (a, b), (c, d) in combinations(m, 2):
        if any(g.has_edge(x, z) for x in (a, b) for z in (c, d)):
            return False
    return True


# -- the dichotomy ----------------------------------------------------------

class ExactOracle:
    """Maximum stable sets and clique numbers by branch and bound."""

    def __init__(self, limits=DEFAULT):
        self.limits = limits

    def stable(self, g, vertices):
        return max_stable(g, from_iter(vertices), self.limits)

    def omega(self, g):
        return len(max_clique(g, limits=self.limits))


@dataclass(frozen=True)
class HandsetResult:
    blockade: Blockade
    handset: Handset
    certificate: object
    trace: tuple


def gethandset(g, z, y, s, t, h, sheet, oracle=None, limits=DEFAULT, trace=None):
    """Blockade plus ``(s, t)``-handset, a large sparser subset of ``z``, or a
    criticality witness.

    ``h`` is the forbidden pattern handed to the dense-pair machinery.  Level
    constants come from ``sheet`` at sparsity ``y``.
    """
    oracle = oracle or ExactOracle(limits)
    log = trace if trace is not None else []
    z = sorted(set(int(v) for v in z))
    if not z:
        raise PreconditionError("Z is empty")
    sub, back = induced(g, z)
    y = exact(y)

    def at(key):
        return sheet.at(key, y, h.n)

    seq = sparse_dense_sequence(sub, h, y, sheet, limits, trace=log)
    if not isinstance(seq, DensePairSequence):
        if seq.kind == "SparseSet":
            return seq.with_(sets={"S": [back[v] for v in seq["S"]]})
        return seq.with_(mapping=[back[v] for v in seq.mapping])
    k = int(at("hs_k"))
    if len(seq) < k:
        raise BoundDidNotFire("gethandset", f"sequence has {len(seq)} pairs, need {k}")
    pairs = [([back[v] for v in a], [back[v] for v in b]) for a, b in seq.pairs[:k]]
    dense = at("hs_dense")
    cs = []
    for i, (a, b) in enumerate(pairs):
        am = from_iter(a)
        xi = [v for v in b if popcount(g.adj[v] & am) >= dense * len(a)]
        if 2 * len(xi) < len(b):
            raise BoundDidNotFire("dense part", f"pair {i}: only {len(xi)} of {len(b)} vertices are dense to A")
        cs.append(tuple(oracle.stable(g, xi)))
    match = capped_induced_matching(g, cs, s)
    assert len(match) <= s * k * k / 2
    owner = {v: i for i, c in enumerate(cs) for v in c}
    count = {}
    for u, v in match:
        key = tuple(sorted((owner[u], owner[v])))
        count.setdefault(key, []).append((u, v))
    aux = Graph.from_edges(k, [key for key, es in count.items() if len(es) >= s])
    m, n = at("hs_m"), int(at("hs_n"))
    log.append({"stage": "gethandset", "k": k, "matching": len(match), "aux_edges": aux.m, "m": m, "n": n})
    outcome = None
    if m is not None and k >= int(m) ** t * n:
        outcome = getstable_dichotomy(aux, t, n, int(m))
    else:
        hub = find_clique_hub(aux, t, n)
        if hub is not None:
            outcome = ("clique",) + hub
        elif m is not None and find_stable(aux, int(m)) is not None:
            outcome = ("stable", tuple(find_stable(aux, int(m))))
    if outcome is None:
        raise BoundDidNotFire("getstable", f"k = {k} < m^t n and the auxiliary graph has neither outcome")
    log.append({"stage": "getstable", "branch": outcome[0]})
    if outcome[0] == "stable":
        return _stable_branch(g, cs, match, outcome[1], oracle, sheet)
    return _build(g, pairs, cs, count, outcome[1], outcome[2][:n], s, y, z, at, sheet, log)


def _stable_branch(g, cs, match, idx, oracle, sheet):
    touched = 0
    for u, v in match:
        touched |= (1 << u) | (1 << v) | g.adj[u] | g.adj[v]
    union = [v for i in idx for v in cs[i] if not (touched >> v) & 1]
    if not is_stable(g, union):
        raise BoundDidNotFire("stable branch", "union of matched-free parts is not stable")
    omega = max(1, oracle.omega(g))
    # c-critical means alpha * omega < |G|^c; this union breaks that
    need = ceil_of(Power(Fraction(1, omega), g.n, sheet["c"]))
    if len(union) < need:
        raise BoundDidNotFire("stable branch", f"stable union of {len(union)} is below |G|^c/omega = {need}")
    return C.criticality_witness("BigStable", union, min_size=need, omega=omega, parts=list(idx))


def _build(g, pairs, cs, count, x_idx, y_idx, s, y, z, at, sheet, log):
    x_idx, y_idx = list(x_idx), list(y_idx)
    mprime = []
    for i in x_idx:
        for j in x_idx + y_idx:
            if i != j:
                key = tuple(sorted((i, j)))
                for e in count.get(key, [])[:s]:
                    if e not in mprime:
                        mprime.append(e)
    nset = {v for e in mprime for v in e}
    nmask = from_iter(nset)
    palms = []
    for i in x_idx:
        ci = from_iter(cs[i]) & nmask
        cands = [v for v in pairs[i][0]
                 if g.adj[v] & ci == ci and not g.adj[v] & (nmask & ~ci)
                 and not any(g.has_edge(v, p) for p in palms)]
        _survival("palm", i, len(cands), len(pairs[i][0]), sheet)
        if not cands:
            raise BoundDidNotFire("palm selection", f"no admissible palm in A_{i}")
        palms.append(cands[0])
    pm = from_iter(palms)
    blocks = []
    for j in y_idx:
        cj = from_iter(cs[j]) & nmask
        cands = [v for v in pairs[j][0]
                 if g.adj[v] & cj == cj and not g.adj[v] & (nmask & ~cj) and not g.adj[v] & pm]
        size = -(-len(pairs[j][0]) // 2)
        _survival("block", j, len(cands), len(pairs[j][0]), sheet)
        if len(cands) < size:
            raise BoundDidNotFire("block selection", f"D_{j} has {len(cands)} candidates, need {size}")
        blocks.append(tuple(cands[:size]))
    owner = {v: i for i, c in enumerate(cs) for v in c}

    def ends(i, j):
        es = count[tuple(sorted((i, j)))][:s]
        return [(u, v) if owner[u] == i else (v, u) for u, v in es]

    fingers = {}
    for pi, i in enumerate(x_idx):
        for bj, j in enumerate(y_idx):
            fingers[(pi, bj)] = tuple((palms[pi], b, c) for b, c in ends(i, j))
    links = {}
    for pi, pj in combinations(range(len(x_idx)), 2):
        links[(pi, pj)] = tuple(ends(x_idx[pi], x_idx[pj]))
    hs = Handset(tuple(blocks), tuple(palms), fingers, links, s)
    bounds = {"cross": at("hs_cross"), "equicardinal": 1, "min_length": at("hs_n"),
              "min_width": at("hs_width_frac") * len(z)}
    cert = hs.to_certificate(**bounds)
    bad = C.verify_certificate(cert, g)
    if bad:
        raise BoundDidNotFire("handset", "; ".join(bad[:3]))
    log.append({"stage": "handset", "palms": len(palms), "blocks": len(blocks)})
    return HandsetResult(hs.blockade, hs, cert, tuple(log))


def _survival(what, i, got, size, sheet):
    """The counting bound: at least half of A_i survives the filters."""
    if 2 * got >= size:
        return
    if sheet.pristine:
        raise AssertionError(f"{what} survivors in A_{i}: {got} < {size}/2 under default constants")


# -- composition ------------------------------------------------------------

def compose_swiss(hs, f, rainbow):
    """Image of ``swiss_army(f, s, t)`` assembled from a handset and a rainbow
    copy ``rainbow`` of ``f`` (host vertex per forest vertex) on its blockade."""
    nf, t, s = f.n, hs.t, hs.s
    block_of = {}
    for j, b in enumerate(hs.blocks):
        for v in b:
            block_of[v] = j
    image = list(rainbow) + list(hs.palms)
    classes = sorted(set(f.edges()) | {(a, b) for a, b in combinations(range(nf, nf + t), 2)}
                     | {(v, nf + i) for v in range(nf) for i in range(t)})
    for u, v in classes:
        if v < nf:
            continue  # forest edge, not subdivided
        for copy in range(s):
            if u < nf:
                a, b, c = hs.fingers[(v - nf, block_of[rainbow[u]])][copy]
                image += [c, b]
            else:
                b, c = hs.links[(u - nf, v - nf)][copy]
                image += [b, c]
    return tuple(image)


def composition_certificate(hs, f, rainbow):
    pattern = swiss_army(f, hs.s, hs.t)
    image = compose_swiss(hs, f, rainbow)
    return C.induced_copy(pattern, image, swiss={"forest_n": f.n, "forest_edges": [list(e) for e in f.edges()],
                                                 "s": hs.s, "t": hs.t, "complement": False})


__all__ = [
    "Handset", "HandsetResult", "ExactOracle", "verify_handset", "getstable_dichotomy", "find_clique_hub",
    "capped_induced_matching", "matching_is_maximal", "is_induced_matching", "gethandset", "compose_swiss",
    "composition_certificate",
]
