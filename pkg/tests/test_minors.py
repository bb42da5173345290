import itertools

import pytest

from quasimat import corpus, fixtures, minors
from quasimat.matroid import MatroidView
from quasimat.multigraph import Multigraph, complete_graph
from quasimat.tripartition import CycleClass, QuasiBiasedGraph, all_unbalanced

B, L, F = CycleClass.BALANCED, CycleClass.LIFT, CycleClass.FRAME


def minor_instances():
    out = list(corpus.enumerate_signed(corpus.EnumerationParams(3, 4)))
    out += [
        fixtures.signed_complete(4, (0,), F),
        fixtures.signed_complete(4, (0,), L),
        all_unbalanced(Multigraph([0, 1], [(0, 0, 0), (1, 0, 1), (2, 0, 1)]), F),
        all_unbalanced(Multigraph([0, 1], [(0, 0, 0), (1, 0, 1), (2, 0, 1)]), L),
        fixtures.rank2_loops_at_one_vertex(),
        fixtures.rank2_lift_loops_both_vertices(),
    ]
    return out


@pytest.mark.parametrize("q", minor_instances(), ids=lambda q: None)
def test_minor_rank_identities(q):
    m = MatroidView(q)
    for e in list(q.graph.edges):
        rest = [f for f in q.graph.edges if f != e]
        md = MatroidView(minors.delete(q, [e]))
        mc = MatroidView(minors.contract(q, e))
        re_ = m.rank([e])
        for r in range(len(rest) + 1):
            for sub in itertools.combinations(rest, r):
                assert md.rank(sub) == m.rank(sub)
                assert mc.rank(sub) == m.rank(sub + (e,)) - re_


def test_minor_results_stay_proper():
    for q in minor_instances():
        for e in q.graph.edges:
            for result in (minors.delete(q, [e]), minors.contract(q, e)):
                assert result.validate().ok, (q.graph.edges, e)


def test_contraction_order_independent():
    q = fixtures.signed_complete(4, (0, 1), F)
    m = MatroidView(q)
    pairs = [(0, 5), (2, 3), (1, 4)]
    for e1, e2 in pairs:
        a = minors.contract(minors.contract(q, e1), e2)
        b = minors.contract(minors.contract(q, e2), e1)
        ma, mb = MatroidView(a), MatroidView(b)
        rest = [f for f in q.graph.edges if f not in (e1, e2)]
        for r in range(len(rest) + 1):
            for sub in itertools.combinations(rest, r):
                assert ma.rank(sub) == mb.rank(sub)


def test_frame_loop_rollup():
    # negative loop under the all-frame rule: contraction rolls edges up
    g = Multigraph([0, 1, 2], [(0, 0, 0), (1, 0, 1), (2, 1, 2), (3, 0, 2)])
    q = all_unbalanced(g, F)
    m = MatroidView(q)
    c = minors.contract(q, 0)
    mc = MatroidView(c)
    rest = [1, 2, 3]
    for r in range(len(rest) + 1):
        for sub in itertools.combinations(rest, r):
            assert mc.rank(sub) == m.rank(sub + (0,)) - 1
    # the rolled-up edge incident to the loop vertex became a loop elsewhere
    assert c.graph.is_loop(1)


def test_lift_loop_contraction_balances_everything():
    g = Multigraph([0, 1], [(0, 0, 0), (1, 0, 1), (2, 0, 1)])
    q = all_unbalanced(g, L)
    c = minors.contract(q, 0)
    assert not c.unbalanced_cycles
    m, mc = MatroidView(q), MatroidView(c)
    for r in range(3):
        for sub in itertools.combinations([1, 2], r):
            assert mc.rank(sub) == m.rank(sub + (0,)) - 1


def test_balanced_loop_contraction_is_deletion():
    g = Multigraph([0, 1], [(0, 0, 0), (1, 0, 1), (2, 0, 1)])
    q = QuasiBiasedGraph(g, {(0,): B, (1, 2): L})
    c = minors.contract(q, 0)
    d = minors.delete(q, [0])
    assert c.graph.edges == d.graph.edges
    assert c.assignment == d.assignment


def test_contract_flat_matches_quotient():
    q = fixtures.signed_complete(4, (0,), F)
    m = MatroidView(q)
    for fmask in m.flat_masks(max_rank=2):
        flat = m.set_of(fmask)
        quotient, _ = minors.contract_flat(q, flat)
        mq = MatroidView(quotient)
        rest = sorted(set(m.ground) - flat)
        for r in range(min(len(rest), 4) + 1):
            for sub in itertools.combinations(rest, r):
                assert mq.rank(sub) == m.rank(set(sub) | flat) - m.rank(flat)


def test_contract_flat_rejects_nonflat():
    q = fixtures.signed_complete(4, (0,), F)
    m = MatroidView(q)
    nonflat = None
    for r in range(1, 6):
        for sub in itertools.combinations(sorted(m.ground), r):
            if not m.is_flat(sub):
                nonflat = sub
                break
        if nonflat:
            break
    with pytest.raises(Exception):
        minors.contract_flat(q, nonflat)


def test_recipe_application():
    q = fixtures.signed_complete(4, (0,), F)
    recipe = minors.MinorRecipe(deletions=(5,), contractions=(1,))
    result = minors.apply_recipe(q, recipe)
    assert 5 not in result.graph.edges and 1 not in result.graph.edges
    assert result.validate().ok
