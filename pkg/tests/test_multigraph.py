import itertools

import pytest

from quasimat.multigraph import (
    GraphError,
    Multigraph,
    ShapeKind,
    complete_graph,
    cycle_graph,
)


def brute_cycles(g: Multigraph):
    """Independent oracle: edge subsets inducing a connected 2-regular
    subgraph (loops count twice at their vertex)."""
    out = set()
    edges = list(g.edges)
    for r in range(1, len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            deg = {}
            for e in sub:
                u, v = g.ends(e)
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            h = g.induced_by_edges(sub).without_isolated_vertices()
            if h.is_connected():
                out.add(tuple(sorted(sub)))
    return out


SAMPLE_GRAPHS = [
    complete_graph(4),
    cycle_graph(5),
    Multigraph([0, 1], [(0, 0, 1), (1, 0, 1), (2, 0, 0), (3, 1, 1)]),
    Multigraph(
        [0, 1, 2], [(0, 0, 1), (1, 0, 1), (2, 1, 2), (3, 1, 2), (4, 0, 2), (5, 0, 0)]
    ),
    Multigraph(
        range(4),
        [(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 0), (4, 0, 2), (5, 1, 3), (6, 0, 1)],
    ),
]


@pytest.mark.parametrize("g", SAMPLE_GRAPHS, ids=range(len(SAMPLE_GRAPHS)))
def test_cycles_match_bruteforce(g):
    assert set(g.cycles()) == brute_cycles(g)


@pytest.mark.parametrize("g", SAMPLE_GRAPHS, ids=range(len(SAMPLE_GRAPHS)))
def test_thetas_match_bruteforce(g):
    cycles = set(g.cycles())
    expected = set()
    for c1, c2 in itertools.combinations(cycles, 2):
        union = sorted(set(c1) | set(c2))
        sym = tuple(sorted(set(c1) ^ set(c2)))
        if sym not in cycles:
            continue
        h = g.induced_by_edges(union).without_isolated_vertices()
        degs = sorted(h.degree(v) for v in h.vertices)
        if degs == [2] * (len(h.vertices) - 2) + [3, 3]:
            expected.add(frozenset((tuple(sorted(c1)), tuple(sorted(c2)), sym)))
    got = {frozenset(t) for t in g.theta_subgraphs()}
    assert got == expected


def test_components_and_connectivity():
    g = Multigraph([0, 1, 2, 3], [(0, 0, 1), (1, 2, 3)])
    assert len(g.components()) == 2
    assert not g.is_connected()
    assert complete_graph(3).is_connected()


def test_merge_vertices_keeps_min_id():
    g = Multigraph([0, 1, 2], [(0, 0, 1), (1, 1, 2)])
    h = g.merge_vertices(1, 2)
    assert set(h.vertices) == {0, 1}
    assert h.ends(1) == (1, 1)  # former link became a loop


def test_simplify_maps_to_representatives():
    g = Multigraph([0, 1], [(0, 0, 1), (1, 0, 1), (2, 0, 0)])
    simple, rep = g.simplify()
    assert len(simple.edges) == 1
    assert rep[0] == rep[1]
    assert 2 not in rep


def test_duplicate_edge_ids_rejected():
    with pytest.raises(GraphError):
        Multigraph([0, 1], [(0, 0, 1), (0, 1, 0)])


def test_classify_shape_cases():
    assert complete_graph(5).classify_shape().kind is ShapeKind.COMPLETE_MINUS_PATH
    assert complete_graph(5).classify_shape().missing_edges == 0
    assert cycle_graph(3).classify_shape().kind is ShapeKind.CYCLE
    assert cycle_graph(6).classify_shape().kind is ShapeKind.CYCLE
    k5 = complete_graph(5)
    minus_e = k5.delete_edges([0])
    assert minus_e.classify_shape().missing_edges == 1
    # two missing edges sharing a vertex
    e0, e1 = 0, 1
    a = set(k5.ends(e0)) & set(k5.ends(e1))
    assert a  # atlas ordering: first two edges share a vertex
    minus_path = k5.delete_edges([e0, e1])
    assert minus_path.classify_shape().missing_edges == 2
    # two disjoint missing edges: not nearly complete
    disjoint = None
    for f in k5.edges:
        if not set(k5.ends(f)) & set(k5.ends(0)):
            disjoint = f
            break
    assert k5.delete_edges([0, disjoint]).classify_shape().kind is ShapeKind.OTHER
    # parallel edges and loops are invisible to the shape
    tri = Multigraph([0, 1, 2], [(0, 0, 1), (1, 0, 1), (2, 1, 2), (3, 0, 2), (4, 0, 0)])
    assert tri.classify_shape().kind is ShapeKind.CYCLE


def test_vertex_connectivity():
    assert complete_graph(4).vertex_connectivity_at_least(3)
    assert cycle_graph(5).vertex_connectivity_at_least(2)
    assert not cycle_graph(5).vertex_connectivity_at_least(3)
    path = Multigraph([0, 1, 2], [(0, 0, 1), (1, 1, 2)])
    assert path.vertex_connectivity_at_least(1)
    assert not path.vertex_connectivity_at_least(2)


def test_induced_and_delete():
    g = complete_graph(4)
    h = g.induced_by_vertices([0, 1, 2])
    assert len(h.edges) == 3
    d = g.delete_edges([0])
    assert 0 not in d.edges and len(d.edges) == 5
