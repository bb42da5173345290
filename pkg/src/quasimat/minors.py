"""Deletion and contraction for classified multigraphs.

Deletion restricts the classification to surviving cycles.  Contraction of a
non-loop merges its endpoints; a cycle of the contracted graph inherits the
class of itself (if it was already a cycle) or of itself plus the contracted
edge.  Loops contract according to their class: balanced loops are simply
deleted; contracting a lift loop deletes it and declares every remaining
cycle balanced; contracting a frame loop at v deletes it, rolls every other
non-loop edge at v into a loop at its far end, declares the former loops of
the graph at v balanced along with the surviving balanced cycles avoiding v,
and makes every other cycle a frame cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .matroid import MatroidView
from .multigraph import GraphError, Multigraph
from .tripartition import CycleClass, QuasiBiasedGraph


@dataclass(frozen=True)
class MinorRecipe:
    deletions: tuple[int, ...] = ()
    contractions: tuple[int, ...] = ()


def delete(qbg: QuasiBiasedGraph, edge_ids: Iterable[int]) -> QuasiBiasedGraph:
    ids = set(edge_ids)
    g2 = qbg.graph.delete_edges(ids)
    assignment = {
        c: k for c, k in qbg.assignment.items() if not (set(c) & ids)
    }
    signs = None
    if qbg.signs is not None:
        signs = {e: s for e, s in qbg.signs.items() if e not in ids}
    out = QuasiBiasedGraph(g2, assignment, signs, qbg.uniform_unbalanced)
    out.every_cycle_unbalanced = qbg.every_cycle_unbalanced
    return out


def contract_nonloop(qbg: QuasiBiasedGraph, e: int) -> QuasiBiasedGraph:
    g = qbg.graph
    u, v = g.ends(e)
    if u == v:
        raise GraphError(f"edge {e} is a loop")
    g2 = g.merge_vertices(u, v).delete_edges([e])
    assignment = {}
    for c in g2.cycles():
        if c in qbg.assignment:
            assignment[c] = qbg.assignment[c]
        else:
            key = tuple(sorted(c + (e,)))
            assignment[c] = qbg.assignment[key]
    signs = None
    if qbg.signs is not None:
        # Switch at one endpoint if the contracted edge is negative, so the
        # surviving signs still describe the same balanced cycles.
        signs = dict(qbg.signs)
        if signs[e] < 0:
            for f, (a, b) in g.edges.items():
                if f == e:
                    continue
                if a == u:
                    signs[f] = -signs[f]
                if b == u:
                    signs[f] = -signs[f]
        del signs[e]
    out = QuasiBiasedGraph(g2, assignment, signs, qbg.uniform_unbalanced)
    out.every_cycle_unbalanced = qbg.every_cycle_unbalanced and not qbg.balanced_cycles
    return out


def contract_loop(qbg: QuasiBiasedGraph, e: int) -> QuasiBiasedGraph:
    g = qbg.graph
    u, v = g.ends(e)
    if u != v:
        raise GraphError(f"edge {e} is not a loop")
    cls = qbg.assignment[(e,)]
    if cls is CycleClass.BALANCED:
        return delete(qbg, [e])
    if cls is CycleClass.LIFT:
        g2 = g.delete_edges([e])
        assignment = {c: CycleClass.BALANCED for c in g2.cycles()}
        signs = {f: 1 for f in g2.edges}
        return QuasiBiasedGraph(g2, assignment, signs, CycleClass.LIFT)
    # frame loop: roll up the other edges at its vertex
    es = []
    for f, (a, b) in g.edges.items():
        if f == e:
            continue
        if a == u and b != u:
            es.append((f, b, b))
        elif b == u and a != u:
            es.append((f, a, a))
        else:
            es.append((f, a, b))
    g2 = Multigraph(g.vertices, es)
    old_loops_at_u = {f for f in g.loops() if g.ends(f)[0] == u and f != e}
    balanced_avoiding = {
        c
        for c, k in qbg.assignment.items()
        if k is CycleClass.BALANCED and u not in g.cycle_vertices(c)
    }
    assignment = {}
    for c in g2.cycles():
        if len(c) == 1 and c[0] in old_loops_at_u:
            assignment[c] = CycleClass.BALANCED
        elif c in balanced_avoiding:
            assignment[c] = CycleClass.BALANCED
        else:
            assignment[c] = CycleClass.FRAME
    return QuasiBiasedGraph(g2, assignment)


def contract(qbg: QuasiBiasedGraph, e: int) -> QuasiBiasedGraph:
    if qbg.graph.is_loop(e):
        return contract_loop(qbg, e)
    return contract_nonloop(qbg, e)


def apply_recipe(qbg: QuasiBiasedGraph, recipe: MinorRecipe) -> QuasiBiasedGraph:
    out = qbg
    if recipe.deletions:
        out = delete(out, recipe.deletions)
    for e in recipe.contractions:
        out = contract(out, e)
    return out


def contract_flat(
    qbg: QuasiBiasedGraph, flat: Iterable[int]
) -> tuple[QuasiBiasedGraph, dict[int, int]]:
    """Contract every element of a flat; returns the result and a vertex map.

    Contracts current non-loops of the flat first, then its loops by class.
    The edge ids of the result are exactly those outside the flat.
    """
    ids = set(flat)
    m = MatroidView(qbg)
    cmask = m.closure_mask(m.mask_of(ids))
    if cmask != m.mask_of(ids):
        raise GraphError("contract_flat requires a flat")
    out = qbg
    remaining = set(ids)
    while remaining:
        nonloops = [e for e in remaining if not out.graph.is_loop(e)]
        if nonloops:
            e = min(nonloops)
        else:
            e = min(remaining)
        out = contract(out, e)
        remaining.discard(e)
    return out, _vertex_map(qbg.graph, out.graph)


def _vertex_map(before: Multigraph, after: Multigraph) -> dict[int, int]:
    """Map each old vertex to its surviving representative where traceable."""
    surviving = set(after.vertices)
    return {v: (v if v in surviving else -1) for v in before.vertices}
