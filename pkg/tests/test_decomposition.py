import itertools

import pytest

from quasimat import corpus, decomposition, fixtures
from quasimat.decomposition import (
    CircuitMatroid,
    DecompositionTree,
    LinkSumSpec,
    link_sum,
    two_sum_abstract,
    verify_decomposition,
)
from quasimat.matroid import MatroidView
from quasimat.multigraph import GraphError, Multigraph, complete_graph, cycle_graph
from quasimat.tripartition import CycleClass, all_balanced
from quasimat.unbreakability import is_unbreakable_bruteforce

B, L, F = CycleClass.BALANCED, CycleClass.LIFT, CycleClass.FRAME


def right_cycle(basepoint, length, vertex_base, edge_base):
    """Plain cycle graph containing the basepoint edge id."""
    verts = list(range(vertex_base, vertex_base + length))
    edges = [(basepoint, verts[0], verts[1])]
    eid = edge_base
    for i in range(1, length):
        edges.append((eid, verts[i], verts[(i + 1) % length]))
        eid += 1
    return Multigraph(verts, edges)


def composable_pairs(max_pairs):
    count = 0
    for q in corpus.enumerate_signed(corpus.EnumerationParams(3, 5)):
        m = MatroidView(q)
        g = q.graph
        for e in g.edges:
            if g.is_loop(e) or e in m.coloops() or m.rank([e]) == 0:
                continue
            for length in (3, 4):
                yield q, right_cycle(e, length, 100, max(g.edges) + 1), e
                count += 1
                if count >= max_pairs:
                    return
            break


def test_link_sum_matches_abstract_two_sum():
    pairs = 0
    for q, right, e in composable_pairs(220):
        pairs += 1
        glued = link_sum(LinkSumSpec(q, right, e))
        assert glued.validate().ok
        got = set(MatroidView(glued).circuits())
        right_circuits = MatroidView(all_balanced(right)).circuits()
        expected = set(
            two_sum_abstract(MatroidView(q).circuits(), right_circuits, e)
        )
        assert got == expected, (q.graph.edges, e)
    assert pairs >= 200


def test_link_sum_input_validation():
    q = fixtures.signed_complete(4, (0,), F)
    with pytest.raises(GraphError):
        link_sum(LinkSumSpec(q, right_cycle(99, 3, 100, 50), 99))
    loopy = Multigraph([100], [(0, 100, 100)])
    with pytest.raises(GraphError):
        link_sum(LinkSumSpec(q, loopy, 0))


def test_two_sum_rejects_degenerate_basepoints():
    tri = [frozenset({0, 1, 2})]
    with pytest.raises(GraphError):
        two_sum_abstract(tri, [frozenset({3})], 3)  # loop on one side
    with pytest.raises(GraphError):
        two_sum_abstract(tri, [frozenset({4, 5})], 3)  # coloop on one side


def test_circuit_matroid_against_view():
    q = fixtures.signed_complete(4, (0, 1), L)
    m = MatroidView(q)
    cm = CircuitMatroid(m.ground, m.circuits())
    E = sorted(m.ground)
    for r in range(len(E) + 1):
        for sub in itertools.combinations(E, r):
            assert cm.rank(sub) == m.rank(sub)
    assert set(cm.free_elements()) == set(m.free_elements())
    assert set(cm.coloops()) == set(m.coloops())


def test_verify_decomposition_roundtrip():
    q = fixtures.signed_complete(4, (0,), F)
    e = 1
    right = right_cycle(e, 3, 100, 50)
    glued = link_sum(LinkSumSpec(q, right, e))
    tree = DecompositionTree(q, ((e, right),))
    report = verify_decomposition(tree, MatroidView(glued))
    assert report["circuits_match"]
    bp, free_left, free_right = report["basepoints_free"][0]
    assert bp == e and free_right  # triangle side: everything is free
    assert report["summands"][1]["all_balanced"]


def test_verify_decomposition_detects_mismatch():
    q = fixtures.signed_complete(4, (0,), F)
    right = right_cycle(1, 3, 100, 50)
    glued = link_sum(LinkSumSpec(q, right, 1))
    wrong = DecompositionTree(q, ((2, right_cycle(2, 3, 100, 50)),))
    report = verify_decomposition(wrong, MatroidView(glued))
    assert not report["circuits_match"]


def test_free_basepoint_biconditional():
    """Gluing a triangle onto a basepoint: the result is unbreakable exactly
    when the basepoint is free on the classified side."""
    checked = 0
    for q, right, e in composable_pairs(300):
        if len(right.edges) != 3:
            continue
        m = MatroidView(q)
        if m.matroid_loops() or m.full_rank() < 2:
            continue
        glued = link_sum(LinkSumSpec(q, right, e))
        gm = MatroidView(glued)
        if gm.matroid_loops():
            continue
        checked += 1
        unbreakable, _ = is_unbreakable_bruteforce(gm)
        assert unbreakable == (e in m.free_elements()), (q.graph.edges, e)
    assert checked >= 20


def test_graphic_summand_with_free_basepoint_is_cycle():
    # a graphic cycle has every element free; complete graphs have none
    cyc = MatroidView(all_balanced(cycle_graph(4)))
    assert set(cyc.free_elements()) == set(cyc.ground)
    k4 = MatroidView(all_balanced(complete_graph(4)))
    assert not k4.free_elements()


def test_nondegenerate_break_checker():
    hits = 0
    for q in fixtures.nondegenerate_instances(chord=True):
        report = decomposition.check_nondegenerate_breaks(q)
        if report["applicable"]:
            hits += 1
            assert report["conforms"], q.graph.edges
    assert hits > 0
