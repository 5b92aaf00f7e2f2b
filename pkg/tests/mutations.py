"""Single perturbations that must break a valid certificate.

Each mutation changes exactly one thing: one host edge, or one vertex id in
the certificate.  The choice per certificate kind targets a relation the
certificate pins down, so a correct verifier has to reject every result.
"""

from ehcert.graph import Graph


def toggle_edge(g, u, v):
    edges = set(g.edges())
    e = (min(u, v), max(u, v))
    edges.symmetric_difference_update({e})
    return Graph.from_edges(g.n, edges)


def _replace_in_set(cert, name, idx, new):
    vs = list(cert.sets[name])
    vs[idx] = new
    return cert.with_(sets={**cert.sets, name: vs})


def mutate(cert, g, rng):
    """Return ``(cert', g')`` differing from the input by one edge or one vertex."""
    kind = cert.kind
    pick = lambda seq: seq[int(rng.integers(len(seq)))]  # noqa: E731

    if kind in ("StableSet", "Clique") or (kind == "CriticalityWitness" and cert.extra["witness"] != "SparserSubset"):
        name = "K" if kind == "Clique" else "S"
        vs = cert.sets[name]
        if len(vs) >= 2 and rng.random() < 0.5:
            i, j = rng.choice(len(vs), size=2, replace=False)
            return cert, toggle_edge(g, vs[i], vs[j])
        # one vertex swapped for a duplicate of another member, or for a dangling id
        if len(vs) >= 2:
            return _replace_in_set(cert, name, 0, vs[-1]), g
        return _replace_in_set(cert, name, 0, g.n), g
    if kind in ("InducedCopy", "RainbowCopy"):
        mp = list(cert.mapping)
        if len(mp) >= 2 and rng.random() < 0.6:
            a, b = rng.choice(len(mp), size=2, replace=False)
            return cert, toggle_edge(g, mp[a], mp[b])
        if len(mp) >= 2:
            mp[0] = mp[1]
        else:
            mp[0] = g.n
        return cert.with_(mapping=mp), g
    if kind == "CompleteBipartite":
        a, b = pick(cert.sets["A"]), pick(cert.sets["B"])
        return cert, toggle_edge(g, a, b)
    if kind == "AnticompletePair":
        a, b = pick(cert.sets["A"]), pick(cert.sets["B"])
        return cert, toggle_edge(g, a, b)
    if kind == "AnticompleteBlockade":
        i, j = rng.choice(len(cert.blocks), size=2, replace=False)
        return cert, toggle_edge(g, pick(cert.blocks[i]), pick(cert.blocks[j]))
    if kind == "CliqueCountBound":
        # deleting one edge of a counted clique lowers the recount
        from ehcert.cliques import clique_list

        cl = clique_list(g, int(cert.bounds["h"]))
        if cl and cert.bounds["h"] >= 2:
            c = pick(cl)
            return cert, toggle_edge(g, c[0], c[1])
        return cert.with_(bounds={**cert.bounds, "count": cert.bounds["count"] + 1}), g
    if kind == "Handset":
        fingers = cert.extra["handset"]["fingers"]
        _, _, trips = pick(fingers)
        a, b, c = pick(trips)
        return cert, toggle_edge(g, b, c)
    if kind == "DensePair":
        # a W2 vertex moved into W1 makes the pair overlap
        return _replace_in_set(cert, "W1", 0, pick(cert.sets["W2"])), g
    # set-valued claims without a pinned relation: one dangling vertex id
    name = sorted(cert.sets)[0] if cert.sets else None
    if name is not None:
        return _replace_in_set(cert, name, 0, g.n + int(rng.integers(5))), g
    if cert.blocks:
        blocks = [list(b) for b in cert.blocks]
        blocks[0][0] = g.n
        return cert.with_(blocks=blocks), g
    raise ValueError(f"no mutation for {kind}")
