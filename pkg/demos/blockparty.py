"""Thinning a sparse blockade until its blocks are pairwise anticomplete.

``clustered_blockade`` plants edges only inside clusters of blocks.  Each
round of ``blockparty`` halves the number of blocks kept while shrinking the
width, and the result has no edges between any two kept blocks.

    python3 demos/blockparty.py
"""

from fractions import Fraction

from ehcert.anticomplete import blockparty
from ehcert.certificates import verify_certificate
from ehcert.construct import path_graph
from ehcert.fixtures import clustered_blockade
from ehcert.graph import count_edges_between, mask_of

d = 2
for s, clusters, width in ((2, 4, 8), (3, 8, 4)):
    per = 2 * (2 * d * d) ** s // clusters
    x = Fraction(2, (2 * d * d) ** s)
    g, b = clustered_blockade(clusters, per, width, x, seed=3)
    print(f"s={s}: blockade of {b.length} blocks of width {b.width}, {g.m} edges, sparsity {x}")
    c = blockparty(g, b, path_graph(3), d, s)
    masks = [mask_of(g, blk) for blk in c.blocks]
    cross = sum(count_edges_between(g, masks[i], masks[j])
                for i in range(len(masks)) for j in range(i + 1, len(masks)))
    print(f"   -> {len(c.blocks)} blocks, widths {[len(blk) for blk in c.blocks]}, cross edges {cross}, "
          f"recount problems {verify_certificate(c, g)}")
