"""From a planted handset to an induced swiss-army graph.

A handset fixture hides k-t blocks of handles, each wired to t fingers.
``gethandset`` recovers it; planting a rainbow copy of a forest across the
recovered blocks then lets the handset and the rainbow copy be composed into
an induced copy of the full pattern, which is checked independently.

    python3 demos/handset_composition.py
"""

from ehcert.certificates import verify_certificate
from ehcert.constants import desk_sheet
from ehcert.construct import swiss_army
from ehcert.fixtures import chain_diamond, handset_overrides, plant_rainbow, planted_handset, sparsity_level
from ehcert.graph import Graph
from ehcert.handset import composition_certificate, gethandset, verify_handset
from ehcert.patterns import find_copy, rainbow_find

k, s, t = 6, 2, 3
ph = planted_handset(k, s, t, seed=1)
g = ph.graph
y = sparsity_level(g)
print(f"host: n={g.n}, m={g.m}, sparsity level y={y}")

res = gethandset(g, range(g.n), y, s, t, chain_diamond(), desk_sheet(**handset_overrides(ph, y)))
hs = res.handset
print(f"recovered handset: {len(hs.blocks)} blocks, t={hs.t}, s={hs.s}")
print(f"handset recount problems: {verify_handset(hs, g, res.certificate.bounds)}")

forest = Graph.from_edges(3, [(0, 1)])
g2, _ = plant_rainbow(g, hs.blocks, forest, seed=4)
rainbow = rainbow_find(forest, res.blockade, g2)
print(f"rainbow copy of the forest: {rainbow.map}")

cert = composition_certificate(hs, forest, rainbow.map)
pattern = swiss_army(forest, s, t)
print(f"composed {cert.kind} of a {pattern.n}-vertex pattern, recount problems: {verify_certificate(cert, g2)}")
print(f"independent search also finds a copy: {find_copy(pattern, g2) is not None}")
