import pytest

from quasimat import fixtures
from quasimat.matroid import MatroidView
from quasimat.tripartition import CycleClass


SMALL_FIXTURES = [
    "rank2_three_vertex_balanced",
    "rank2_two_vertex_split_bias",
    "rank2_loops_at_one_vertex",
    "rank2_lift_loops_both_vertices",
    "cubic_frame_a",
    "cubic_frame_b",
    "cubic_frame_c",
    "cubic_frame_d",
    "doubled_c7_lift",
]


@pytest.mark.parametrize("name", SMALL_FIXTURES)
def test_fixture_is_proper(name):
    q = fixtures.all_fixtures()[name]
    assert q.validate().ok


def test_signed_k7_fixture_is_proper():
    q = fixtures.all_fixtures()["signed_k7_one_negative_frame"]
    assert q.validate().ok


def test_cubic_frame_lift_variant_same_matroid():
    """For the first cubic fixture, classifying every cycle lift instead of
    frame yields the same matroid."""
    from quasimat.tripartition import all_unbalanced

    frame = fixtures.cubic_frame_instances()["cubic_frame_a"]
    lift = all_unbalanced(frame.graph, CycleClass.LIFT)
    assert set(MatroidView(frame).circuits()) == set(MatroidView(lift).circuits())


def test_cubic_fixtures_simple_and_cosimple():
    for name, q in fixtures.cubic_frame_instances().items():
        m = MatroidView(q)
        assert m.is_simple(), name
        r = m.full_rank()
        E = set(m.ground)
        for e in E:
            assert m.rank(E - {e}) == r, (name, e)
            for f in E - {e}:
                assert m.rank(E - {e, f}) == r, (name, e, f)


def test_nondegenerate_instances_properties():
    plain = list(fixtures.nondegenerate_instances())
    assert plain
    for q in plain[:4]:
        assert not q.is_degenerate(CycleClass.LIFT)
        assert not q.is_degenerate(CycleClass.FRAME)
    chorded = list(fixtures.nondegenerate_instances(chord=True))
    assert chorded
    m = MatroidView(chorded[0])
    assert not m.is_3connected()
