"""Named fixture instances used by the verification campaigns and the CLI.

Includes the four rank-2 disconnected exemplars, four cubic nine-edge graphs
whose all-frame classifications are unbreakable but fall outside every
structured shape, and builders for doubled cycles and signed complete
graphs.
"""

from __future__ import annotations

import itertools

from .multigraph import Multigraph, complete_graph
from .tripartition import (
    BiasSpec,
    CycleClass,
    QuasiBiasedGraph,
    all_unbalanced,
    from_bias_spec,
)

B, L, F = CycleClass.BALANCED, CycleClass.LIFT, CycleClass.FRAME


# ---------------------------------------------------------------------------
# rank-2 disconnected exemplars


def rank2_three_vertex_balanced() -> QuasiBiasedGraph:
    """Three vertices, two triple parallel classes on different pairs, all
    cycles balanced."""
    g = Multigraph(
        [0, 1, 2],
        [(0, 0, 2), (1, 0, 2), (2, 0, 2), (3, 1, 2), (4, 1, 2), (5, 1, 2)],
    )
    return from_bias_spec(g, BiasSpec("all_balanced"))


def rank2_two_vertex_split_bias() -> QuasiBiasedGraph:
    """Two vertices, six parallel edges; a 2-cycle is balanced exactly when
    it stays inside the first or the second triple."""
    g = Multigraph([0, 1], [(i, 0, 1) for i in range(6)])
    first = {0, 1, 2}
    assignment = {}
    for c in g.cycles():
        inside = set(c) <= first or set(c) <= {3, 4, 5}
        assignment[c] = B if inside else L
    return QuasiBiasedGraph(g, assignment)


def rank2_loops_at_one_vertex() -> QuasiBiasedGraph:
    """Two vertices; three frame loops at one of them, three links."""
    g = Multigraph(
        [0, 1],
        [(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 1), (4, 0, 1), (5, 0, 1)],
    )
    assignment = {}
    for c in g.cycles():
        assignment[c] = F if len(c) == 1 else B
    return QuasiBiasedGraph(g, assignment)


def rank2_lift_loops_both_vertices() -> QuasiBiasedGraph:
    """Two vertices, a lift loop at each, parallel links between them."""
    g = Multigraph(
        [0, 1],
        [(0, 0, 0), (1, 1, 1), (2, 0, 1), (3, 0, 1), (4, 0, 1)],
    )
    assignment = {}
    for c in g.cycles():
        assignment[c] = L if len(c) == 1 else B
    return QuasiBiasedGraph(g, assignment)


# ---------------------------------------------------------------------------
# cubic nine-edge all-frame instances


def _hexagon_plus(extras: list[tuple[int, int]]) -> Multigraph:
    edges = [(i, i, (i + 1) % 6) for i in range(6)]
    for j, (a, b) in enumerate(extras):
        edges.append((6 + j, a, b))
    return Multigraph(range(6), edges)


def cubic_frame_instances() -> dict[str, QuasiBiasedGraph]:
    """Four cubic graphs on six vertices and nine edges, every cycle frame."""
    graphs = {
        "cubic_frame_a": _hexagon_plus([(1, 4), (2, 5), (0, 3)]),
        "cubic_frame_b": _hexagon_plus([(2, 4), (0, 3), (1, 5)]),
        "cubic_frame_c": _hexagon_plus([(1, 5), (0, 4), (2, 3)]),
        "cubic_frame_d": _hexagon_plus([(1, 4), (2, 3), (5, 0)]),
    }
    return {name: all_unbalanced(g, F) for name, g in graphs.items()}


# ---------------------------------------------------------------------------
# builders


def doubled_cycle_graph(n: int, undoubled: int = 0) -> Multigraph:
    """Cycle on n vertices with each edge doubled except the last
    ``undoubled`` positions.  Edge ids: 2i and 2i+1 for doubled position i;
    single edges come after."""
    edges = []
    eid = 0
    for i in range(n):
        u, v = i, (i + 1) % n
        edges.append((eid, u, v))
        eid += 1
        if i < n - undoubled:
            edges.append((eid, u, v))
            eid += 1
    return Multigraph(range(n), edges)


def signed_complete(
    n: int, negative_edges, cls: CycleClass = CycleClass.FRAME
) -> QuasiBiasedGraph:
    g = complete_graph(n)
    neg = set(negative_edges)
    signs = {e: (-1 if e in neg else 1) for e in g.edges}
    return from_bias_spec(
        g, BiasSpec("signed", signs=signs, unbalanced_class=cls), validate=False
    )


def nondegenerate_instances(chord: bool = False, patterns: int = 32):
    """Instances whose lift and frame classes each contain two vertex-disjoint
    cycles: a doubled 4-cycle with opposite 2-cycles lift and frame.

    With ``chord`` a degree-2 vertex is attached across the square, creating
    a series pair and hence a 2-separation.  Longer cycles are spread over
    lift and frame by the pattern index; improper combinations are skipped.
    """
    edges = []
    eid = 0
    for i in range(4):
        for _ in range(2):
            edges.append((eid, i, (i + 1) % 4))
            eid += 1
    nverts = 4
    if chord:
        edges += [(8, 0, 4), (9, 2, 4)]
        nverts = 5
    g = Multigraph(range(nverts), edges)
    cycles = g.cycles()
    two = [c for c in cycles if len(c) == 2]
    base = {}
    for c in two:
        vs = g.cycle_vertices(c)
        base[c] = L if vs in ({0, 1}, {2, 3}) else F
    others = [c for c in cycles if len(c) > 2]
    for bits in range(patterns):
        assignment = dict(base)
        for j, c in enumerate(others):
            assignment[c] = L if (bits >> (j % 5)) & 1 else F
        q = QuasiBiasedGraph(g, assignment)
        if q.validate().ok:
            yield q


def all_fixtures() -> dict[str, QuasiBiasedGraph]:
    out = {
        "rank2_three_vertex_balanced": rank2_three_vertex_balanced(),
        "rank2_two_vertex_split_bias": rank2_two_vertex_split_bias(),
        "rank2_loops_at_one_vertex": rank2_loops_at_one_vertex(),
        "rank2_lift_loops_both_vertices": rank2_lift_loops_both_vertices(),
    }
    out.update(cubic_frame_instances())
    c7 = doubled_cycle_graph(7)
    signs = {e: (1 if e % 2 == 0 else -1) for e in c7.edges}
    out["doubled_c7_lift"] = from_bias_spec(
        c7, BiasSpec("signed", signs=signs, unbalanced_class=L), validate=False
    )
    out["signed_k7_one_negative_frame"] = signed_complete(7, (0,), F)
    out["signed_k7_one_negative_lift"] = signed_complete(7, (0,), L)
    return out
