"""Two-sum composition: graph-level link-sums and abstract circuit sums.

The link-sum glues a classified graph and a plain graph along a shared
non-loop basepoint edge: the basepoint's endpoints are identified pairwise
and the basepoint deleted.  Cycles inside the first side keep their class,
cycles inside the second side are balanced, and a spliced cycle (a path
across each side) takes the class of its first-side path closed up with the
basepoint.  The abstract two-sum on circuits is kept as an independent
oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .matroid import BudgetExceeded, MatroidView, bit_count
from .multigraph import GraphError, Multigraph
from .tripartition import CycleClass, QuasiBiasedGraph, all_balanced
from .unbreakability import is_unbreakable_bruteforce


@dataclass(frozen=True)
class LinkSumSpec:
    left: QuasiBiasedGraph
    right: Multigraph
    basepoint: int
    swap_ends: bool = False


def link_sum(spec: LinkSumSpec) -> QuasiBiasedGraph:
    left, right, e = spec.left, spec.right, spec.basepoint
    g1 = left.graph
    if e not in g1.edges or e not in right.edges:
        raise GraphError("basepoint must be an edge of both sides")
    if g1.is_loop(e) or right.is_loop(e):
        raise GraphError("basepoint must be a non-loop in both sides")
    shared = set(g1.edges) & set(right.edges)
    if shared != {e}:
        raise GraphError(f"sides share edges other than the basepoint: {shared}")
    u1, v1 = g1.ends(e)
    u2, v2 = right.ends(e)
    if spec.swap_ends:
        u2, v2 = v2, u2

    # fresh ids for the right-side vertices other than the glued pair
    relabel: dict[int, int] = {u2: u1, v2: v1}
    nxt = max(list(g1.vertices) + list(right.vertices)) + 1
    for w in right.vertices:
        if w not in relabel:
            relabel[w] = nxt if w in g1.vertices else w
            if relabel[w] != w:
                nxt += 1
    # avoid collisions of untouched right vertices with left vertices
    for w in right.vertices:
        if w not in (u2, v2) and relabel[w] in g1.vertices:
            relabel[w] = nxt
            nxt += 1

    verts = set(g1.vertices) | {relabel[w] for w in right.vertices}
    edges = [(f, a, b) for f, (a, b) in g1.edges.items() if f != e]
    left_ids = {f for f, _ in g1.edges.items() if f != e}
    right_ids = set()
    for f, (a, b) in right.edges.items():
        if f == e:
            continue
        edges.append((f, relabel[a], relabel[b]))
        right_ids.add(f)
    glued = Multigraph(verts, edges)

    assignment = {}
    for c in glued.cycles():
        cl = [f for f in c if f in left_ids]
        cr = [f for f in c if f in right_ids]
        if not cr:
            assignment[c] = left.assignment[tuple(sorted(cl))]
        elif not cl:
            assignment[c] = CycleClass.BALANCED
        else:
            key = tuple(sorted(cl + [e]))
            assignment[c] = left.assignment[key]
    return QuasiBiasedGraph(glued, assignment)


def two_sum_abstract(
    circuits1: Iterable[frozenset[int]],
    circuits2: Iterable[frozenset[int]],
    basepoint: int,
) -> frozenset[frozenset[int]]:
    """Circuits of the two-sum from the circuits of both sides.

    The basepoint must be neither a loop nor a coloop of either side.
    """
    c1 = [frozenset(c) for c in circuits1]
    c2 = [frozenset(c) for c in circuits2]
    p = basepoint
    if frozenset([p]) in c1 or frozenset([p]) in c2:
        raise GraphError("basepoint is a loop of a side")
    through1 = [c - {p} for c in c1 if p in c]
    through2 = [c - {p} for c in c2 if p in c]
    if not through1 or not through2:
        raise GraphError("basepoint is a coloop of a side")
    out = {c for c in c1 if p not in c}
    out |= {c for c in c2 if p not in c}
    out |= {a | b for a in through1 for b in through2}
    return frozenset(out)


class CircuitMatroid:
    """Small matroid defined extensionally by its circuit list."""

    def __init__(self, ground: Iterable[int], circuits: Iterable[frozenset[int]]):
        self.ground = tuple(sorted(set(ground)))
        self.circuit_list = tuple(
            sorted({frozenset(c) for c in circuits}, key=lambda c: (len(c), sorted(c)))
        )
        if len(self.ground) > 20:
            raise BudgetExceeded("circuit-defined matroid limited to 20 elements")
        self._rank_cache: dict[frozenset[int], int] = {}

    def is_independent(self, X: Iterable[int]) -> bool:
        s = set(X)
        return not any(c <= s for c in self.circuit_list)

    def rank(self, X: Iterable[int]) -> int:
        key = frozenset(X)
        r = self._rank_cache.get(key)
        if r is not None:
            return r
        items = sorted(key)
        best = 0
        for n in range(len(items), 0, -1):
            if n <= best:
                break
            for sub in itertools.combinations(items, n):
                if self.is_independent(sub):
                    best = n
                    break
            if best:
                break
        self._rank_cache[key] = best
        return best

    def full_rank(self) -> int:
        return self.rank(self.ground)

    def coloops(self) -> tuple[int, ...]:
        return tuple(e for e in self.ground if not any(e in c for c in self.circuit_list))

    def free_elements(self) -> tuple[int, ...]:
        r = self.full_rank()
        out = []
        for e in self.ground:
            through = [c for c in self.circuit_list if e in c]
            if through and all(len(c) == r + 1 for c in through):
                out.append(e)
        return tuple(out)

    def loops(self) -> tuple[int, ...]:
        return tuple(e for e in self.ground if frozenset([e]) in self.circuit_list)


@dataclass
class DecompositionTree:
    """A root instance two-summed with a sequence of summands.

    Each join names the basepoint edge shared between the partial composition
    built so far and the next summand, which is either a plain graph (its
    cycle matroid is used) or a classified graph.
    """

    root: QuasiBiasedGraph
    joins: tuple[tuple[int, Multigraph | QuasiBiasedGraph], ...] = ()


def _summand_view(s: Multigraph | QuasiBiasedGraph) -> MatroidView:
    if isinstance(s, QuasiBiasedGraph):
        return MatroidView(s)
    return MatroidView(all_balanced(s))


def verify_decomposition(tree: DecompositionTree, target: MatroidView) -> dict:
    """Compose the tree by abstract two-sums and compare with the target.

    Reports circuit agreement, basepoint freeness on both sides of every
    join, per-summand facts, and unbreakability of target and summands.
    """
    root_view = MatroidView(tree.root)
    ground = set(root_view.ground)
    circuits = set(root_view.circuits())
    summand_views = [root_view]
    basepoints_free = []
    for basepoint, summand in tree.joins:
        sv = _summand_view(summand)
        summand_views.append(sv)
        left = CircuitMatroid(ground, circuits)
        free_left = basepoint in left.free_elements()
        free_right = basepoint in CircuitMatroid(
            sv.ground, sv.circuits()
        ).free_elements()
        basepoints_free.append((basepoint, free_left, free_right))
        circuits = set(
            two_sum_abstract(circuits, sv.circuits(), basepoint)
        )
        ground = (ground | set(sv.ground)) - {basepoint}

    matches = (
        set(target.ground) == ground and set(target.circuits()) == circuits
    )
    summand_facts = []
    for sv in summand_views:
        unbreakable, _ = is_unbreakable_bruteforce(sv)
        summand_facts.append(
            {
                "rank": sv.full_rank(),
                "unbreakable": unbreakable,
                "all_balanced": not sv.qbg.unbalanced_cycles,
                "shape": sv.graph.classify_shape(),
            }
        )
    target_unbreakable, _ = is_unbreakable_bruteforce(target)
    return {
        "circuits_match": matches,
        "basepoints_free": tuple(basepoints_free),
        "summands": tuple(summand_facts),
        "target_unbreakable": target_unbreakable,
    }


def unbreakable_via_free_element(m: MatroidView) -> bool | None:
    """A loopless matroid with a free element is unbreakable; returns True
    in that case and None when the test does not apply."""
    if m.matroid_loops():
        raise GraphError("free-element test needs a loopless matroid")
    if m.free_elements():
        return True
    return None


def check_nondegenerate_breaks(qbg: QuasiBiasedGraph) -> dict:
    """For a simple connected matroid with both unbalanced classes
    non-degenerate: if it is not 3-connected it must be breakable."""
    m = MatroidView(qbg)
    report = {"applicable": False, "conforms": True}
    if not m.is_simple() or not m.is_connected():
        return report
    if qbg.is_degenerate(CycleClass.LIFT) or qbg.is_degenerate(CycleClass.FRAME):
        return report
    if m.is_3connected():
        return report
    report["applicable"] = True
    unbreakable, witness = is_unbreakable_bruteforce(m)
    report["conforms"] = not unbreakable
    report["witness"] = witness
    return report
