"""Unbreakability tests and structural breakability certificates.

A connected matroid is unbreakable when its contraction by every flat is
connected.  For the matroids built here a connected but breakable matroid
always has a flat whose contraction is disconnected of rank exactly two,
which gives a fast decision procedure (search corank-2 flats only); the
brute-force check over all flats is kept as the oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .matroid import BudgetExceeded, MatroidView, bit_count
from .multigraph import GraphError, Multigraph, Shape, ShapeKind
from .tripartition import CycleClass, QuasiBiasedGraph


@dataclass(frozen=True)
class BreakWitness:
    flat: frozenset[int]
    quotient_rank: int


class Rank2Tag(Enum):
    THREE_VERTEX_BALANCED = "three_vertex_balanced"
    TWO_VERTEX_SPLIT_BIAS = "two_vertex_split_bias"
    LOOPS_AT_ONE_VERTEX = "loops_at_one_vertex"
    LIFT_LOOPS_BOTH_VERTICES = "lift_loops_both_vertices"


@dataclass(frozen=True)
class Rank2Case:
    tag: Rank2Tag
    classes: tuple[frozenset[int], frozenset[int]]


class OutcomeTag(Enum):
    THREE_PART_NONADJACENT = "three_part_nonadjacent"
    CROSS_EDGES_TWO_BALANCING = "cross_edges_two_balancing"
    BALANCING_INSIDE_ONE_PART = "balancing_inside_one_part"
    BALANCING_WITH_FRAME_PART = "balancing_with_frame_part"
    BALANCING_BOTH_PARTS_LIFT = "balancing_both_parts_lift"
    THREE_PART_FRAME = "three_part_frame"


@dataclass(frozen=True)
class StructureOutcome:
    tag: OutcomeTag
    parts: tuple[frozenset[int], ...]
    balancing_set: frozenset[int] | None = None


# ---------------------------------------------------------------------------
# unbreakability deciders


def is_unbreakable_bruteforce(
    m: MatroidView,
) -> tuple[bool, BreakWitness | None]:
    """Scan every flat; first witness (minimal rank) is returned."""
    if not m.is_connected():
        bottom = m.closure_mask(0)
        return False, BreakWitness(m.set_of(bottom), m.full_rank())
    for f in m.flat_masks():
        if not m.quotient_is_connected(f):
            return False, BreakWitness(
                m.set_of(f), m.full_rank() - m.rank_mask(f)
            )
    return True, None


def is_unbreakable_rank2(m: MatroidView) -> tuple[bool, BreakWitness | None]:
    """Corank-2 decision procedure; requires a connected matroid."""
    if not m.is_connected():
        raise GraphError("corank-2 unbreakability test needs a connected matroid")
    r = m.full_rank()
    if r < 2:
        return True, None
    for f in m.flat_masks(max_rank=r - 2):
        if m.rank_mask(f) != r - 2:
            continue
        if _rank2_quotient_disconnected(m, f):
            return False, BreakWitness(m.set_of(f), 2)
    return True, None


def _rank2_quotient_disconnected(m: MatroidView, flat_mask: int) -> bool:
    """For a corank-2 flat: the quotient is loopless of rank two, so it is
    disconnected exactly when its elements fall into two parallel classes."""
    rest = [e for e in m.ground if not (flat_mask & m._bit[e])]
    if len(rest) < 2:
        return False
    base = m.rank_mask(flat_mask)
    reps: list[int] = []
    for e in rest:
        placed = False
        for rep in reps:
            if (
                m.rank_mask(flat_mask | m._bit[rep] | m._bit[e]) - base == 1
            ):
                placed = True
                break
        if not placed:
            reps.append(e)
            if len(reps) > 2:
                return False
    return len(reps) == 2


# ---------------------------------------------------------------------------
# rank-2 disconnected classification


def classify_rank2_disconnected(qbg: QuasiBiasedGraph) -> Rank2Case:
    """Sort a connected graph with a loopless, rank-2, disconnected matroid
    into one of four shapes.  Raises if none fits."""
    m = MatroidView(qbg)
    g = qbg.graph
    if not g.is_connected():
        raise GraphError("graph must be connected")
    if m.full_rank() != 2 or m.matroid_loops() or m.is_connected():
        raise GraphError("matroid must be loopless, rank 2, and disconnected")
    classes = m.parallel_classes()
    if len(classes) != 2:
        raise GraphError("rank-2 disconnected matroid must have two parallel classes")
    X, Y = classes
    loops = set(g.loops())
    nverts = len(g.without_isolated_vertices().vertices)

    if nverts == 3 and not loops:
        if all(
            k is CycleClass.BALANCED for k in qbg.assignment.values()
        ) and _endpoints(g, X) != _endpoints(g, Y):
            return Rank2Case(Rank2Tag.THREE_VERTEX_BALANCED, (X, Y))

    if nverts == 2 and not loops:
        ok = all(
            (qbg.assignment[c] is CycleClass.BALANCED)
            == (set(c) <= X or set(c) <= Y)
            for c in qbg.assignment
        )
        if ok:
            return Rank2Case(Rank2Tag.TWO_VERTEX_SPLIT_BIAS, (X, Y))

    if nverts == 2 and loops:
        nonloops = set(g.edges) - loops
        for A, B in ((X, Y), (Y, X)):
            if (
                A == frozenset(loops)
                and B == frozenset(nonloops)
                and len(_endpoints(g, A)) == 1
                and all(
                    qbg.assignment[(e,)] is not CycleClass.BALANCED for e in A
                )
            ):
                return Rank2Case(Rank2Tag.LOOPS_AT_ONE_VERTEX, (A, B))
        loop_verts = {g.ends(e)[0] for e in loops}
        if len(loop_verts) == 2 and all(
            qbg.assignment[(e,)] is CycleClass.LIFT for e in loops
        ):
            for A, B in ((X, Y), (Y, X)):
                if A == frozenset(loops) and B == frozenset(nonloops):
                    return Rank2Case(Rank2Tag.LIFT_LOOPS_BOTH_VERTICES, (A, B))

    raise GraphError("instance does not fit any rank-2 disconnected shape")


def _endpoints(g: Multigraph, edges) -> frozenset[tuple[int, int]]:
    return frozenset(g.ends(e) for e in edges)


# ---------------------------------------------------------------------------
# balancing sets


def is_balancing(qbg: QuasiBiasedGraph, edge_ids) -> bool:
    """True iff the graph has an unbalanced cycle but removing the edge set
    leaves none."""
    if not qbg.unbalanced_cycles:
        return False
    rest = set(qbg.graph.edges) - set(edge_ids)
    return qbg.is_balanced_set(rest)


def has_balancing_set_of_rank_at_most(qbg: QuasiBiasedGraph, k: int) -> bool:
    """A superset of a balancing set is balancing, so it is enough to test
    the flats of rank at most k themselves."""
    m = MatroidView(qbg)
    return any(
        is_balancing(qbg, m.set_of(f)) for f in m.flat_masks(max_rank=k)
    )


def find_balancing_sets(
    qbg: QuasiBiasedGraph, max_rank: int
) -> tuple[frozenset[int], ...]:
    """Inclusion-minimal balancing sets of rank at most max_rank.

    Candidates are drawn from subsets of low-rank flats.  Requires the graph
    to have an unbalanced cycle.
    """
    if not qbg.unbalanced_cycles:
        raise GraphError("graph is balanced; no balancing set is needed")
    m = MatroidView(qbg)
    found: set[frozenset[int]] = set()
    for fmask in m.flat_masks(max_rank=max_rank):
        flat = sorted(m.set_of(fmask))
        if len(flat) > 18:
            raise BudgetExceeded("balancing-set search flat too large")
        for r in range(len(flat) + 1):
            for sub in itertools.combinations(flat, r):
                s = frozenset(sub)
                if any(f <= s for f in found):
                    continue
                if is_balancing(qbg, s):
                    found.add(s)
    minimal = [
        s for s in found if not any(t < s for t in found)
    ]
    return tuple(sorted(minimal, key=lambda s: (len(s), sorted(s))))


# ---------------------------------------------------------------------------
# nearly complete instances


def is_3connected_nearly_complete(qbg: QuasiBiasedGraph) -> bool:
    """Fast 3-connectivity for a simple matroid whose simplification is
    nearly complete on more than six vertices."""
    m = MatroidView(qbg)
    shape = qbg.graph.classify_shape()
    if not shape.is_nearly_complete:
        raise GraphError("simplification must be nearly complete")
    if len(qbg.graph.without_isolated_vertices().vertices) <= 6:
        raise GraphError("needs more than six vertices")
    if not m.is_simple():
        raise GraphError("matroid must be simple")
    if not qbg.unbalanced_cycles:
        return True
    return not has_balancing_set_of_rank_at_most(qbg, 2)


def breakability_structure(qbg: QuasiBiasedGraph) -> StructureOutcome | None:
    """Search the six structural breakability outcomes for a connected
    matroid whose simplification is nearly complete on more than three
    vertices.  Returns the first outcome found (fixed tag order), or None."""
    g = qbg.graph
    verts = list(g.vertices)
    n = len(verts)

    def induced_edges(part):
        ps = set(part)
        return [e for e, (a, b) in g.edges.items() if a in ps and b in ps]

    def part_connected(part):
        return g.induced_by_vertices(part).is_connected()

    def has_class(part_edges, cls):
        s = set(part_edges)
        return any(
            k is cls and s.issuperset(c) for c, k in qbg.assignment.items()
        )

    all_balanced = not qbg.unbalanced_cycles

    two_parts = []
    for assign in itertools.product((0, 1), repeat=n - 1):
        labels = (0,) + assign
        p1 = frozenset(v for v, l in zip(verts, labels) if l == 0)
        p2 = frozenset(v for v, l in zip(verts, labels) if l == 1)
        if p2:
            two_parts.append((p1, p2))

    three_parts = []
    for assign in itertools.product((0, 1, 2), repeat=n):
        p = [
            frozenset(v for v, l in zip(verts, assign) if l == i)
            for i in range(3)
        ]
        if all(p):
            three_parts.append(tuple(p))

    # (1) three connected parts, first two non-adjacent, a part with a lift
    #     cycle or an entirely balanced graph
    for p1, p2, p3 in three_parts:
        if g.edges_between(p1, p2):
            continue
        if not (part_connected(p1) and part_connected(p2) and part_connected(p3)):
            continue
        if all_balanced or any(
            has_class(induced_edges(p), CycleClass.LIFT) for p in (p1, p2, p3)
        ):
            return StructureOutcome(OutcomeTag.THREE_PART_NONADJACENT, (p1, p2, p3))

    # (2) two connected parts whose cross edges split into two balancing sets
    for p1, p2 in two_parts:
        if not (part_connected(p1) and part_connected(p2)):
            continue
        cross = g.edges_between(p1, p2)
        if len(cross) > 18:
            raise BudgetExceeded("cross-edge split search too large")
        for r in range(len(cross) + 1):
            for sub in itertools.combinations(cross, r):
                x = set(sub)
                y = set(cross) - x
                if is_balancing(qbg, x) and is_balancing(qbg, y):
                    return StructureOutcome(
                        OutcomeTag.CROSS_EDGES_TWO_BALANCING,
                        (p1, p2),
                        frozenset(x),
                    )

    # (3) two parts, a balancing set inside the first keeping both connected
    for p1, p2 in itertools.chain(two_parts, ((b, a) for a, b in two_parts)):
        x = _balancing_keeping_parts(qbg, induced_edges(p1), [p1], [p2])
        if x is not None:
            return StructureOutcome(
                OutcomeTag.BALANCING_INSIDE_ONE_PART, (p1, p2), x
            )

    # (3') three parts, balancing set within parts 1 and 3, part 3 with a
    #      frame cycle, parts 2 and 3 non-adjacent
    for p1, p2, p3 in three_parts:
        if g.edges_between(p2, p3):
            continue
        if not part_connected(p2):
            continue
        if not has_class(induced_edges(p3), CycleClass.FRAME):
            continue
        pool = induced_edges(p1 | p3)
        x = _balancing_keeping_parts(qbg, pool, [p1, p3], [p2])
        if x is not None:
            return StructureOutcome(
                OutcomeTag.BALANCING_WITH_FRAME_PART, (p1, p2, p3), x
            )

    # (4) two parts, balancing set within their insides, both parts with a
    #     lift cycle, both staying connected
    for p1, p2 in two_parts:
        if not (
            has_class(induced_edges(p1), CycleClass.LIFT)
            and has_class(induced_edges(p2), CycleClass.LIFT)
        ):
            continue
        pool = induced_edges(p1) + induced_edges(p2)
        x = _balancing_keeping_parts(qbg, pool, [p1, p2], [])
        if x is not None:
            return StructureOutcome(
                OutcomeTag.BALANCING_BOTH_PARTS_LIFT, (p1, p2), x
            )

    # (5) three connected parts, first two non-adjacent, third with a frame
    #     cycle
    for p1, p2, p3 in three_parts:
        if g.edges_between(p1, p2):
            continue
        if not (part_connected(p1) and part_connected(p2) and part_connected(p3)):
            continue
        if has_class(induced_edges(p3), CycleClass.FRAME):
            return StructureOutcome(OutcomeTag.THREE_PART_FRAME, (p1, p2, p3))

    return None


def _balancing_keeping_parts(qbg, pool, cut_parts, intact_parts):
    """Balancing subset of pool with every listed part connected after its
    removal (cut parts lose the chosen edges; intact parts must just be
    connected)."""
    g = qbg.graph
    for part in intact_parts:
        if not g.induced_by_vertices(part).is_connected():
            return None
    pool = sorted(set(pool))
    if len(pool) > 18:
        raise BudgetExceeded("balancing-set search pool too large")
    for r in range(len(pool) + 1):
        for sub in itertools.combinations(pool, r):
            s = set(sub)
            if not is_balancing(qbg, s):
                continue
            ok = True
            for part in cut_parts:
                sub_g = g.induced_by_vertices(part).delete_edges(
                    s & set(g.induced_by_vertices(part).edges)
                )
                if not sub_g.is_connected():
                    ok = False
                    break
            if ok:
                return frozenset(s)
    return None


# ---------------------------------------------------------------------------
# cycle-shaped simplification


def cycle_case_3connected(qbg: QuasiBiasedGraph) -> bool:
    """3-connectivity test for instances with an empty frame class whose
    simplification is a cycle on more than three vertices: no balanced loop
    or balanced 2-cycle, at most one unbalanced loop, and at most one edge
    outside every unbalanced 2-cycle."""
    g = qbg.graph
    if qbg.frame_cycles:
        raise GraphError("frame class must be empty")
    if g.classify_shape().kind is not ShapeKind.CYCLE:
        raise GraphError("simplification must be a cycle")
    if len(g.without_isolated_vertices().vertices) <= 3:
        raise GraphError("needs more than three vertices")
    loops = g.loops()
    for e in loops:
        if qbg.assignment[(e,)] is CycleClass.BALANCED:
            return False
    if len(loops) > 1:
        return False
    in_unbalanced_2cycle: set[int] = set()
    for c, k in qbg.assignment.items():
        if len(c) == 2:
            if k is CycleClass.BALANCED:
                return False
            in_unbalanced_2cycle.update(c)
    outside = [e for e in g.edges if e not in in_unbalanced_2cycle]
    return len(outside) <= 1


def cycle_case_unbreakable(qbg: QuasiBiasedGraph) -> bool:
    """For these instances unbreakability coincides with 3-connectivity."""
    return cycle_case_3connected(qbg)


# ---------------------------------------------------------------------------
# conformance report for the graphic / nearly complete / cycle trichotomy


def main_theorem_conformance(qbg: QuasiBiasedGraph) -> dict:
    """Summary facts used by the campaign checkers."""
    m = MatroidView(qbg)
    g = qbg.graph
    shape = g.classify_shape()
    report = {
        "vertices": len(g.without_isolated_vertices().vertices),
        "shape": shape,
        "simple": m.is_simple(),
        "connected": m.is_connected(),
        "rank": m.full_rank(),
        "all_balanced": not qbg.unbalanced_cycles,
        "lift_degenerate": qbg.is_degenerate(CycleClass.LIFT),
        "frame_degenerate": qbg.is_degenerate(CycleClass.FRAME),
    }
    if len(m.ground) <= 16:
        report["three_connected"] = m.is_3connected()
        unbreakable, witness = is_unbreakable_bruteforce(m)
        report["unbreakable"] = unbreakable
        report["witness"] = witness
    return report
