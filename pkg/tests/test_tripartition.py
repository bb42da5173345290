import itertools

import pytest

from quasimat.multigraph import GraphError, Multigraph, complete_graph, cycle_graph
from quasimat.tripartition import (
    BiasSpec,
    CycleClass,
    ImproperTripartition,
    QuasiBiasedGraph,
    all_balanced,
    all_unbalanced,
    from_bias_spec,
)

B, L, F = CycleClass.BALANCED, CycleClass.LIFT, CycleClass.FRAME


def signed_triangle_with_parallel():
    g = Multigraph([0, 1, 2], [(0, 0, 1), (1, 1, 2), (2, 0, 2), (3, 0, 1)])
    signs = {0: 1, 1: 1, 2: 1, 3: -1}
    return g, signs


def test_signed_bias_classes():
    g, signs = signed_triangle_with_parallel()
    q = from_bias_spec(g, BiasSpec("signed", signs=signs, unbalanced_class=F))
    assert q.cycle_class((0, 1, 2)) is B
    assert q.cycle_class((0, 3)) is F
    assert q.cycle_class((1, 2, 3)) is F
    assert set(q.balanced_cycles) == {(0, 1, 2)}


def test_sign_product_rule_exhaustive():
    g, signs = signed_triangle_with_parallel()
    q = from_bias_spec(g, BiasSpec("signed", signs=signs, unbalanced_class=L))
    import math

    for c in g.cycles():
        product = math.prod(signs[e] for e in c)
        assert (q.cycle_class(c) is B) == (product > 0)
        if product < 0:
            assert q.cycle_class(c) is L


def test_theta_violation_detected():
    # theta on two vertices: three parallel edges, exactly two balanced 2-cycles
    g = Multigraph([0, 1], [(0, 0, 1), (1, 0, 1), (2, 0, 1)])
    assignment = {(0, 1): B, (0, 2): B, (1, 2): L}
    q = QuasiBiasedGraph(g, assignment)
    report = q.validate()
    assert not report.ok and report.theta_violations


def test_meeting_violation_detected():
    g = Multigraph([0, 1], [(0, 0, 0), (1, 1, 1)])
    q = QuasiBiasedGraph(g, {(0,): L, (1,): F})
    report = q.validate()
    assert not report.ok and report.meeting_violations


def test_from_bias_spec_rejects_improper():
    g = Multigraph([0, 1], [(0, 0, 1), (1, 0, 1), (2, 0, 1)])
    with pytest.raises(ImproperTripartition):
        from_bias_spec(
            g, BiasSpec("explicit", assignment={(0, 1): B, (0, 2): B, (1, 2): L})
        )


def test_assignment_must_be_total():
    g = complete_graph(3)
    with pytest.raises(GraphError):
        QuasiBiasedGraph(g, {})


def test_all_balanced_and_all_unbalanced():
    g = cycle_graph(4)
    qb = all_balanced(g)
    assert not qb.unbalanced_cycles
    qf = all_unbalanced(g, F)
    assert not qf.balanced_cycles and qf.frame_cycles
    with_loops = Multigraph([0], [(0, 0, 0), (1, 0, 0)])
    ql = all_unbalanced(with_loops, L)
    assert ql.validate().ok


def test_is_balanced_set_matches_definition():
    g, signs = signed_triangle_with_parallel()
    q = from_bias_spec(g, BiasSpec("signed", signs=signs, unbalanced_class=F))
    for r in range(len(g.edges) + 1):
        for sub in itertools.combinations(g.edges, r):
            expected = all(
                q.cycle_class(c) is B
                for c in g.cycles()
                if set(c) <= set(sub)
            )
            assert q.is_balanced_set(sub) == expected


def test_degeneracy():
    g = Multigraph(
        [0, 1, 2, 3],
        [(0, 0, 1), (1, 0, 1), (2, 2, 3), (3, 2, 3), (4, 1, 2), (5, 0, 3)],
    )
    assignment = {}
    for c in g.cycles():
        vs = g.cycle_vertices(c)
        assignment[c] = L if vs in ({0, 1}, {2, 3}) else F
    q = QuasiBiasedGraph(g, assignment)
    assert q.validate().ok
    assert not q.is_degenerate(L)
    assert q.is_degenerate(F) == (
        not any(
            not (g.cycle_vertices(c1) & g.cycle_vertices(c2))
            for c1, c2 in itertools.combinations(q.frame_cycles, 2)
        )
    )
    with pytest.raises(GraphError):
        q.is_degenerate(B)
