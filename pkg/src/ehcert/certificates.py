"""Certificates: self-contained claims that an independent verifier re-checks.

A :class:`Certificate` is a tagged record.  ``sets`` holds named vertex lists,
``blocks`` an ordered family of vertex lists, ``pattern``/``mapping`` an
embedded copy, ``bounds`` the numeric claims (exact rationals) and ``extra``
any kind-specific JSON payload.  :func:`verify_certificate` trusts none of the
numbers it is given: every count is recomputed from the host adjacency.

Text form: one JSON object, keys sorted, rationals written as ``"p/q"`` and
irrational thresholds as ``"c*(b)^(e)"``.
"""

import json
from dataclasses import dataclass, field
from types import MappingProxyType

from .bits import from_iter, iter_bits, popcount
from .graph import Graph, count_edges_between, count_edges_inside
from .numerics import exact, parse_real, real_text

KINDS = (
    "StableSet",
    "Clique",
    "DensePair",
    "SparseSet",
    "CliqueCountBound",
    "CompleteBipartite",
    "AnticompletePair",
    "AnticompleteBlockade",
    "RainbowCopy",
    "InducedCopy",
    "Handset",
    "CriticalityWitness",
    "DensePairSequence",
)

WITNESS_TAGS = ("BigStable", "BigClique", "SparserSubset")


def _freeze(d):
    return MappingProxyType(dict(d))


@dataclass(frozen=True, eq=False)
class Certificate:
    kind: str
    sets: dict = field(default_factory=dict)
    blocks: tuple = ()
    pattern: Graph = None
    mapping: tuple = ()
    bounds: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        object.__setattr__(self, "sets", _freeze({k: tuple(int(v) for v in vs) for k, vs in self.sets.items()}))
        object.__setattr__(self, "blocks", tuple(tuple(int(v) for v in b) for b in self.blocks))
        object.__setattr__(self, "mapping", tuple(int(v) for v in self.mapping))
        object.__setattr__(self, "bounds", _freeze({k: exact(v) for k, v in self.bounds.items()}))
        object.__setattr__(self, "extra", _freeze(self.extra))

    def __eq__(self, other):
        return isinstance(other, Certificate) and to_dict(self) == to_dict(other)

    def __hash__(self):
        return hash(to_text(self))

    def __getitem__(self, name):
        return self.sets[name]

    def with_(self, **changes):
        d = dict(kind=self.kind, sets=dict(self.sets), blocks=self.blocks, pattern=self.pattern,
                 mapping=self.mapping, bounds=dict(self.bounds), extra=dict(self.extra))
        d.update(changes)
        return Certificate(**d)

    def vertices(self):
        """Every host vertex the certificate mentions."""
        out = set(self.mapping)
        for vs in self.sets.values():
            out.update(vs)
        for b in self.blocks:
            out.update(b)
        return out

    def __repr__(self):
        parts = [f"{k}:{len(v)}" for k, v in self.sets.items()]
        if self.blocks:
            parts.append(f"blocks:{len(self.blocks)}")
        if self.mapping:
            parts.append(f"copy:{len(self.mapping)}")
        return f"Certificate({self.kind}; {', '.join(parts)})"


# -- constructors -----------------------------------------------------------

def _b(**kw):
    return {k: v for k, v in kw.items() if v is not None}


def stable_set(vs, min_size=None, **extra):
    return Certificate("StableSet", {"S": sorted(vs)}, bounds=_b(min_size=min_size), extra=extra)


def clique(vs, min_size=None, **extra):
    return Certificate("Clique", {"K": sorted(vs)}, bounds=_b(min_size=min_size), extra=extra)


def dense_pair(w1, w2, eps=None, per_vertex=None, min_size=None, min_product=None, **extra):
    return Certificate("DensePair", {"W1": sorted(w1), "W2": sorted(w2)},
                       bounds=_b(eps=eps, per_vertex=per_vertex, min_size=min_size, min_product=min_product),
                       extra=extra)


def sparse_set(vs, eps=None, max_degree_frac=None, min_size=None, **extra):
    return Certificate("SparseSet", {"S": sorted(vs)},
                       bounds=_b(eps=eps, max_degree_frac=max_degree_frac, min_size=min_size), extra=extra)


def clique_count(h, count, lower, **extra):
    return Certificate("CliqueCountBound", bounds={"h": h, "count": count, "lower": lower}, extra=extra)


def complete_bipartite(a, b, min_a=None, min_b=None, **extra):
    return Certificate("CompleteBipartite", {"A": sorted(a), "B": sorted(b)},
                       bounds=_b(min_a=min_a, min_b=min_b), extra=extra)


def anticomplete_pair(a, b, min_size=None, **extra):
    return Certificate("AnticompletePair", {"A": sorted(a), "B": sorted(b)}, bounds=_b(min_size=min_size),
                       extra=extra)


def anticomplete_blockade(blocks, length=None, min_width=None, **extra):
    return Certificate("AnticompleteBlockade", blocks=[sorted(b) for b in blocks],
                       bounds=_b(length=length, min_width=min_width), extra=extra)


def rainbow_copy(pattern, mapping, blocks, **extra):
    return Certificate("RainbowCopy", blocks=[sorted(b) for b in blocks], pattern=pattern, mapping=mapping,
                       extra=extra)


def induced_copy(pattern, mapping, **extra):
    return Certificate("InducedCopy", pattern=pattern, mapping=mapping, extra=extra)


def criticality_witness(tag, vs, min_size=None, eps=None, **extra):
    if tag not in WITNESS_TAGS:
        raise ValueError(f"unknown witness tag {tag!r}")
    return Certificate("CriticalityWitness", {"S": sorted(vs)}, bounds=_b(min_size=min_size, eps=eps),
                       extra={"witness": tag, **extra})


# -- verification -----------------------------------------------------------

def copy_violations(pattern, mapping, g):
    """Problems with ``mapping`` as an isomorphism of ``pattern`` onto an induced subgraph of ``g``."""
    out = []
    if pattern is None:
        return ["no pattern attached"]
    if len(mapping) != pattern.n:
        return [f"mapping has {len(mapping)} entries for a {pattern.n}-vertex pattern"]
    if len(set(mapping)) != len(mapping):
        return ["mapping is not injective"]
    for a in range(pattern.n):
        for b in range(a + 1, pattern.n):
            want = pattern.has_edge(a, b)
            got = g.has_edge(mapping[a], mapping[b])
            if want != got:
                out.append(f"pattern pair {a}-{b} {'edge' if want else 'nonedge'} maps to host "
                           f"{mapping[a]}-{mapping[b]} {'edge' if got else 'nonedge'}")
    return out


def _size_floor(bounds, key, size, label, out):
    if key in bounds and size < bounds[key]:
        out.append(f"|{label}|={size} below claimed {key} {bounds[key]}")


def _check_refs(cert, g, out):
    for name, vs in cert.sets.items():
        if len(set(vs)) != len(vs):
            out.append(f"set {name} lists a vertex twice")
    for i, b in enumerate(cert.blocks):
        if len(set(b)) != len(b):
            out.append(f"block {i} lists a vertex twice")
    bad = sorted(v for v in cert.vertices() if not 0 <= v < g.n)
    if bad:
        out.append(f"dangling vertex references {bad[:5]}")


def _disjoint(ma, mb, la, lb, out):
    if ma & mb:
        out.append(f"{la} and {lb} overlap")


def _nonempty(cert, names, out):
    for nm in names:
        if not cert.sets.get(nm):
            out.append(f"set {nm} is empty")


def _blocks_disjoint(blocks, out):
    seen = 0
    for i, b in enumerate(blocks):
        m = from_iter(b)
        if m & seen:
            out.append(f"block {i} overlaps an earlier block")
        seen |= m


def _v_stable(c, g, out):
    _nonempty(c, ["S"], out)
    m = from_iter(c["S"])
    if any(g.adj[v] & m for v in iter_bits(m)):
        out.append("S is not stable")
    _size_floor(c.bounds, "min_size", len(c["S"]), "S", out)


def _v_clique(c, g, out):
    _nonempty(c, ["K"], out)
    m = from_iter(c["K"])
    if any((g.adj[v] | (1 << v)) & m != m for v in iter_bits(m)):
        out.append("K is not a clique")
    _size_floor(c.bounds, "min_size", len(c["K"]), "K", out)


def _v_dense_pair(c, g, out):
    _nonempty(c, ["W1", "W2"], out)
    m1, m2 = from_iter(c["W1"]), from_iter(c["W2"])
    _disjoint(m1, m2, "W1", "W2", out)
    n1, n2 = popcount(m1), popcount(m2)
    non = n1 * n2 - count_edges_between(g, m1, m2)
    bd = c.bounds
    if "eps" in bd and not non < bd["eps"] * n1 * n2:
        out.append(f"{non} nonedges between W1,W2, not below eps*|W1||W2| = {bd['eps'] * n1 * n2}")
    if "per_vertex" in bd:
        lim = bd["per_vertex"] * n2
        worst = max((n2 - popcount(g.adj[v] & m2) for v in iter_bits(m1)), default=0)
        if worst > lim:
            out.append(f"a W1 vertex has {worst} non-neighbours in W2, above {lim}")
    _size_floor(bd, "min_size", min(n1, n2), "W", out)
    if "min_product" in bd and n1 * n2 < bd["min_product"]:
        out.append(f"|W1||W2|={n1 * n2} below claimed {bd['min_product']}")


def _v_sparse_set(c, g, out):
    _nonempty(c, ["S"], out)
    m = from_iter(c["S"])
    s = popcount(m)
    e = count_edges_inside(g, m)
    bd = c.bounds
    if "eps" in bd and not e < bd["eps"] * s * s:
        out.append(f"G[S] has {e} edges, not below eps*|S|^2 = {bd['eps'] * s * s}")
    if "max_degree_frac" in bd:
        worst = max((popcount(g.adj[v] & m) for v in iter_bits(m)), default=0)
        if worst > bd["max_degree_frac"] * s:
            out.append(f"max degree {worst} in G[S] above {bd['max_degree_frac'] * s}")
    _size_floor(bd, "min_size", s, "S", out)


def _v_clique_count(c, g, out):
    from .patterns import clique_count_labeled

    bd = c.bounds
    for key in ("h", "count", "lower"):
        if key not in bd:
            out.append(f"missing bound {key}")
            return
    h = bd["h"]
    if h.denominator != 1 or h < 1:
        out.append("h must be a positive integer")
        return
    actual = clique_count_labeled(g, int(h))
    if actual != bd["count"]:
        out.append(f"claimed {bd['count']} labeled {h}-cliques, recount gives {actual}")
    if actual < bd["lower"]:
        out.append(f"recounted {actual} below claimed lower bound {bd['lower']}")


def _v_complete_bip(c, g, out):
    _nonempty(c, ["A", "B"], out)
    ma, mb = from_iter(c["A"]), from_iter(c["B"])
    _disjoint(ma, mb, "A", "B", out)
    if any(g.adj[v] & mb != mb for v in iter_bits(ma)):
        out.append("A is not complete to B")
    _size_floor(c.bounds, "min_a", len(c["A"]), "A", out)
    _size_floor(c.bounds, "min_b", len(c["B"]), "B", out)


def _v_anti_pair(c, g, out):
    _nonempty(c, ["A", "B"], out)
    ma, mb = from_iter(c["A"]), from_iter(c["B"])
    _disjoint(ma, mb, "A", "B", out)
    cross = count_edges_between(g, ma, mb)
    if cross:
        out.append(f"{cross} edges between A and B")
    _size_floor(c.bounds, "min_size", min(len(c["A"]), len(c["B"])), "A|,|B", out)


def _v_anti_blockade(c, g, out):
    _blocks_disjoint(c.blocks, out)
    masks = [from_iter(b) for b in c.blocks]
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            e = count_edges_between(g, masks[i], masks[j])
            if e:
                out.append(f"{e} edges between blocks {i} and {j}")
    bd = c.bounds
    if "length" in bd and len(c.blocks) != bd["length"]:
        out.append(f"length {len(c.blocks)} differs from claimed {bd['length']}")
    width = min((len(b) for b in c.blocks), default=0)
    _size_floor(bd, "min_width", width, "width", out)


def _rainbow_part(c, out):
    union = 0
    owner = {}
    for i, b in enumerate(c.blocks):
        for v in b:
            owner[v] = i
            union |= 1 << v
    used = set()
    for a, v in enumerate(c.mapping):
        if v not in owner:
            out.append(f"pattern vertex {a} maps outside the blockade")
        elif owner[v] in used:
            out.append(f"block {owner[v]} is hit twice")
        else:
            used.add(owner[v])


def _v_rainbow(c, g, out):
    _blocks_disjoint(c.blocks, out)
    out.extend(copy_violations(c.pattern, c.mapping, g))
    _rainbow_part(c, out)


def _v_induced(c, g, out):
    out.extend(copy_violations(c.pattern, c.mapping, g))
    target = c.extra.get("swiss")
    if target is not None:
        from .construct import swiss_army

        f = Graph.from_edges(int(target["forest_n"]), target["forest_edges"])
        want = swiss_army(f, int(target["s"]), int(target["t"]))
        if target.get("complement"):
            want = want.complement()
        if c.pattern != want:
            out.append("attached pattern is not the claimed Swiss Army graph")


def _v_handset(c, g, out):
    from .handset import Handset, verify_handset

    try:
        hs = Handset.from_json(c.extra["handset"])
    except (KeyError, TypeError, ValueError) as exc:
        out.append(f"malformed handset payload: {exc}")
        return
    out.extend(verify_handset(hs, g, bounds=c.bounds))


def _v_witness(c, g, out):
    tag = c.extra.get("witness")
    _nonempty(c, ["S"], out)
    m = from_iter(c["S"])
    if tag == "BigStable":
        if any(g.adj[v] & m for v in iter_bits(m)):
            out.append("S is not stable")
    elif tag == "BigClique":
        if any((g.adj[v] | (1 << v)) & m != m for v in iter_bits(m)):
            out.append("S is not a clique")
    elif tag == "SparserSubset":
        s = popcount(m)
        e = count_edges_inside(g, m)
        if "eps" not in c.bounds:
            out.append("sparser-subset witness needs an eps bound")
        elif not e < c.bounds["eps"] * s * s:
            out.append(f"G[S] has {e} edges, not below eps*|S|^2")
    else:
        out.append(f"unknown witness tag {tag!r}")
    _size_floor(c.bounds, "min_size", len(c["S"]), "S", out)


def _v_sequence(c, g, out):
    from .sparse_dense import DensePairSequence, verify_sequence

    try:
        seq = DensePairSequence.from_certificate(c)
    except (KeyError, ValueError) as exc:
        out.append(f"malformed sequence payload: {exc}")
        return
    out.extend(verify_sequence(seq, g))


_VERIFIERS = {
    "StableSet": _v_stable,
    "Clique": _v_clique,
    "DensePair": _v_dense_pair,
    "SparseSet": _v_sparse_set,
    "CliqueCountBound": _v_clique_count,
    "CompleteBipartite": _v_complete_bip,
    "AnticompletePair": _v_anti_pair,
    "AnticompleteBlockade": _v_anti_blockade,
    "RainbowCopy": _v_rainbow,
    "InducedCopy": _v_induced,
    "Handset": _v_handset,
    "CriticalityWitness": _v_witness,
    "DensePairSequence": _v_sequence,
}


def verify_certificate(cert, g):
    """Return the list of violated claims; an empty list means the certificate passes."""
    out = []
    _check_refs(cert, g, out)
    if out:
        return out
    _VERIFIERS[cert.kind](cert, g, out)
    return out


def is_valid(cert, g):
    return not verify_certificate(cert, g)


# -- text form --------------------------------------------------------------

def to_dict(cert):
    d = {
        "kind": cert.kind,
        "sets": {k: list(v) for k, v in sorted(cert.sets.items())},
        "blocks": [list(b) for b in cert.blocks],
        "mapping": list(cert.mapping),
        "bounds": {k: real_text(v) for k, v in sorted(cert.bounds.items())},
        "extra": json.loads(json.dumps(dict(cert.extra), sort_keys=True)),
    }
    if cert.pattern is not None:
        d["pattern"] = {"n": cert.pattern.n, "edges": [list(e) for e in cert.pattern.edges()]}
    return d


def from_dict(d):
    if not isinstance(d, dict):
        raise ValueError("certificate must be a JSON object")
    pattern = None
    if d.get("pattern") is not None:
        pattern = Graph.from_edges(int(d["pattern"]["n"]), d["pattern"]["edges"])
    return Certificate(
        kind=d["kind"],
        sets=d.get("sets", {}),
        blocks=d.get("blocks", ()),
        pattern=pattern,
        mapping=d.get("mapping", ()),
        bounds={k: parse_real(v) for k, v in d.get("bounds", {}).items()},
        extra=d.get("extra", {}),
    )


def to_text(cert):
    return json.dumps(to_dict(cert), sort_keys=True, indent=1) + "\n"


def from_text(text):
    return from_dict(json.loads(text))
