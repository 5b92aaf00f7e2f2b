"""Search budgets shared by the exponential procedures.

Every exhaustive routine consults an instance of :class:`Limits`.  The module
level ``DEFAULT`` is used when callers pass nothing.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    exact_clique_vertices: int = 2000
    final_exact_vertices: int = 150
    count_pattern_vertices: int = 6
    count_host_vertices: int = 400
    find_pattern_vertices: int = 64
    find_host_vertices: int = 2000
    find_nodes: int = 20_000_000
    rainbow_host_vertices: int = 2000
    rainbow_forest_vertices: int = 12
    exhaustive_bipartition_vertices: int = 25
    averaging_exhaustive_vertices: int = 23

    def with_(self, **changes):
        return replace(self, **changes)


DEFAULT = Limits()
