"""Exhaustive desk-scale enumeration of small instances.

Connected multigraphs are generated up to isomorphism: the simple connected
support graphs come from the networkx atlas, and parallel/loop multiplicity
assignments are deduplicated under the automorphisms of the support.  Cycle
classifications are generated either through sign maps (one per switching
class, via cotree sign patterns) or by exhaustive search over all proper
tripartitions with incremental pruning.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

from .multigraph import Multigraph
from .tripartition import (
    BiasSpec,
    CycleClass,
    QuasiBiasedGraph,
    from_bias_spec,
)


@dataclass(frozen=True)
class EnumerationParams:
    max_vertices: int
    max_edges: int


# ---------------------------------------------------------------------------
# support graphs


def connected_simple_graphs(max_vertices: int) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    """(vertex count, sorted edge pairs) for connected simple graphs up to
    isomorphism, including the one-vertex graph."""
    if max_vertices > 7:
        raise ValueError("atlas covers at most seven vertices")
    out = []
    for g in graph_atlas_g():
        n = g.number_of_nodes()
        if n == 0 or n > max_vertices:
            continue
        if not nx.is_connected(g):
            continue
        relab = {v: i for i, v in enumerate(sorted(g.nodes()))}
        pairs = tuple(
            sorted(tuple(sorted((relab[a], relab[b]))) for a, b in g.edges())
        )
        out.append((n, pairs))
    return out


def automorphisms(n: int, pairs: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    pair_set = set(pairs)
    out = []
    for perm in itertools.permutations(range(n)):
        if all(tuple(sorted((perm[a], perm[b]))) in pair_set for a, b in pairs):
            out.append(perm)
    return out


def connected_multigraphs(params: EnumerationParams) -> Iterator[Multigraph]:
    """Connected multigraphs up to isomorphism, loops and parallels included."""
    for n, pairs in connected_simple_graphs(params.max_vertices):
        base = len(pairs)
        if base > params.max_edges:
            continue
        autos = automorphisms(n, pairs)
        slots = list(pairs) + [(v, v) for v in range(n)]
        spare = params.max_edges - base
        seen: set[tuple[int, ...]] = set()
        for mult in _multiplicity_vectors(len(slots), base, spare, len(pairs)):
            canon = min(_permuted_vector(mult, pairs, n, perm) for perm in autos)
            if canon in seen:
                continue
            seen.add(canon)
            yield _build(n, slots, canon)


def _multiplicity_vectors(
    nslots: int, base: int, spare: int, nedges: int
) -> Iterator[tuple[int, ...]]:
    """Multiplicities: >=1 on the first nedges slots, >=0 on loop slots,
    with at most `spare` units above the baseline."""
    def rec(i: int, left: int, acc: list[int]):
        if i == nslots:
            yield tuple(acc)
            return
        lo = 1 if i < nedges else 0
        for k in range(lo, lo + left + 1):
            acc.append(k)
            yield from rec(i + 1, left - (k - lo), acc)
            acc.pop()

    yield from rec(0, spare, [])


def _permuted_vector(mult, pairs, n, perm) -> tuple[int, ...]:
    slot_index = {p: i for i, p in enumerate(pairs)}
    out = [0] * (len(pairs) + n)
    for i, p in enumerate(pairs):
        q = tuple(sorted((perm[p[0]], perm[p[1]])))
        out[slot_index[q]] = mult[i]
    for v in range(n):
        out[len(pairs) + perm[v]] = mult[len(pairs) + v]
    return tuple(out)


def _build(n: int, slots, mult) -> Multigraph:
    edges = []
    eid = 0
    for (u, v), k in zip(slots, mult):
        for _ in range(k):
            edges.append((eid, u, v))
            eid += 1
    return Multigraph(range(n), edges)


# ---------------------------------------------------------------------------
# sign-map classifications


def sign_maps(g: Multigraph) -> Iterator[dict[int, int]]:
    """One sign map per switching class: spanning-forest edges positive,
    all patterns on the remaining edges.  Distinct maps here induce distinct
    balanced-cycle families."""
    tree: list[int] = []
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cotree: list[int] = []
    for e, (a, b) in g.edges.items():
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            tree.append(e)
        else:
            cotree.append(e)
    for pattern in itertools.product((1, -1), repeat=len(cotree)):
        signs = {e: 1 for e in tree}
        signs.update(dict(zip(cotree, pattern)))
        yield signs


def signed_instances(
    g: Multigraph,
    classes: Sequence[CycleClass] = (CycleClass.LIFT, CycleClass.FRAME),
) -> Iterator[QuasiBiasedGraph]:
    for signs in sign_maps(g):
        for cls in classes:
            yield from_bias_spec(
                g,
                BiasSpec("signed", signs=signs, unbalanced_class=cls),
                validate=False,
            )


def enumerate_signed(params: EnumerationParams) -> Iterator[QuasiBiasedGraph]:
    for g in connected_multigraphs(params):
        yield from signed_instances(g)


# ---------------------------------------------------------------------------
# all proper tripartitions


def proper_tripartitions(g: Multigraph) -> Iterator[QuasiBiasedGraph]:
    """Every proper classification of the graph's cycles, by pruned search.

    Balanced-class validity is checked as soon as the last cycle of a theta
    is assigned; the meeting condition as each lift/frame cycle is added.
    """
    cycles = g.cycles()
    index = {c: i for i, c in enumerate(cycles)}
    thetas_at: dict[int, list[tuple[int, int, int]]] = {i: [] for i in index.values()}
    for triple in g.theta_subgraphs():
        idx = tuple(sorted(index[c] for c in triple))
        thetas_at[idx[2]].append(idx)  # check when the last one is assigned
    verts = [g.cycle_vertices(c) for c in cycles]

    assignment: list[CycleClass | None] = [None] * len(cycles)

    def ok(i: int) -> bool:
        for t in thetas_at[i]:
            bal = sum(1 for j in t if assignment[j] is CycleClass.BALANCED)
            if bal == 2:
                return False
        k = assignment[i]
        if k is CycleClass.LIFT:
            return all(
                not (
                    assignment[j] is CycleClass.FRAME and not (verts[i] & verts[j])
                )
                for j in range(i)
            )
        if k is CycleClass.FRAME:
            return all(
                not (
                    assignment[j] is CycleClass.LIFT and not (verts[i] & verts[j])
                )
                for j in range(i)
            )
        return True

    def rec(i: int):
        if i == len(cycles):
            yield QuasiBiasedGraph(
                g, {c: assignment[j] for j, c in enumerate(cycles)}
            )
            return
        for k in (CycleClass.BALANCED, CycleClass.LIFT, CycleClass.FRAME):
            assignment[i] = k
            if ok(i):
                yield from rec(i + 1)
        assignment[i] = None

    yield from rec(0)


def enumerate_tripartitions(params: EnumerationParams) -> Iterator[QuasiBiasedGraph]:
    for g in connected_multigraphs(params):
        yield from proper_tripartitions(g)
