"""Undirected multigraphs with integer edge ids: components, cycles, shapes.

A cycle is represented throughout as a sorted tuple of edge ids.  Loops and
parallel edges are first-class: a loop is a one-edge cycle and a pair of
parallel edges is a two-edge cycle.
"""

from __future__ import annotations

import itertools
import os
from enum import Enum
from typing import Iterable, Iterator

DEFAULT_CYCLE_BUDGET = 100_000

Cycle = tuple[int, ...]


def cycle_budget() -> int:
    """Configured ceiling on the number of cycles enumerated per graph."""
    raw = os.environ.get("QUASIMAT_BUDGET")
    if raw is not None:
        return int(raw)
    return DEFAULT_CYCLE_BUDGET


class GraphError(ValueError):
    pass


class CycleBudgetExceeded(GraphError):
    """Raised when a graph has more cycles than the configured budget."""


class ShapeKind(Enum):
    CYCLE = "cycle"
    COMPLETE_MINUS_PATH = "complete_minus_path"
    OTHER = "other"


class Shape:
    """Classification of a simplified graph: cycle, complement of a short path, or other."""

    def __init__(self, kind: ShapeKind, missing_edges: int = 0):
        self.kind = kind
        self.missing_edges = missing_edges

    def __eq__(self, other):
        return (
            isinstance(other, Shape)
            and self.kind == other.kind
            and self.missing_edges == other.missing_edges
        )

    def __hash__(self):
        return hash((self.kind, self.missing_edges))

    def __repr__(self):
        if self.kind is ShapeKind.COMPLETE_MINUS_PATH:
            return f"Shape(COMPLETE_MINUS_PATH, {self.missing_edges})"
        return f"Shape({self.kind.name})"

    @property
    def is_nearly_complete(self) -> bool:
        return self.kind is ShapeKind.COMPLETE_MINUS_PATH


def _powerset(items):
    s = list(items)
    return itertools.chain.from_iterable(
        itertools.combinations(s, r) for r in range(len(s) + 1)
    )


class Multigraph:
    """Immutable-by-convention multigraph.

    Vertices are ints; each edge has a distinct int id and an unordered pair of
    endpoints (equal endpoints give a loop).  Derived data (cycles, theta
    subgraphs, ...) is computed lazily and cached on the instance.
    """

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int, int]]):
        self.vertices: tuple[int, ...] = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        edge_map: dict[int, tuple[int, int]] = {}
        for eid, u, v in edges:
            if eid in edge_map:
                raise GraphError(f"duplicate edge id {eid}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge {eid} uses undeclared vertex")
            edge_map[eid] = (min(u, v), max(u, v))
        self.edges: dict[int, tuple[int, int]] = dict(sorted(edge_map.items()))
        self._cache: dict[str, object] = {}

    # -- basic accessors ---------------------------------------------------

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(self.edges)

    def ends(self, eid: int) -> tuple[int, int]:
        try:
            return self.edges[eid]
        except KeyError:
            raise GraphError(f"unknown edge id {eid}") from None

    def is_loop(self, eid: int) -> bool:
        u, v = self.ends(eid)
        return u == v

    def loops(self) -> tuple[int, ...]:
        return tuple(e for e in self.edges if self.is_loop(e))

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return tuple(e for e, (a, b) in self.edges.items() if v in (a, b))

    def edges_between(self, part1: Iterable[int], part2: Iterable[int]) -> tuple[int, ...]:
        """Non-loop edges with one end in part1 and the other in part2."""
        s1, s2 = set(part1), set(part2)
        out = []
        for e, (a, b) in self.edges.items():
            if a == b:
                continue
            if (a in s1 and b in s2) or (a in s2 and b in s1):
                out.append(e)
        return tuple(out)

    def cycle_vertices(self, cycle: Iterable[int]) -> frozenset[int]:
        verts: set[int] = set()
        for e in cycle:
            verts.update(self.ends(e))
        return frozenset(verts)

    def degree(self, v: int) -> int:
        d = 0
        for a, b in self.edges.values():
            if a == v:
                d += 1
            if b == v:
                d += 1
        return d

    def __repr__(self):
        return f"Multigraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    # -- components and induced subgraphs ----------------------------------

    def components(self) -> tuple[frozenset[int], ...]:
        """Vertex sets of connected components, sorted by minimum vertex."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges.values():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, set[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        return tuple(sorted((frozenset(g) for g in groups.values()), key=min))

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def induced_by_vertices(self, verts: Iterable[int]) -> "Multigraph":
        vs = set(verts)
        if not vs.issubset(self.vertices):
            raise GraphError("unknown vertex in induced subgraph request")
        es = [(e, a, b) for e, (a, b) in self.edges.items() if a in vs and b in vs]
        return Multigraph(vs, es)

    def induced_by_edges(self, edge_ids: Iterable[int]) -> "Multigraph":
        """Subgraph on the given edges and their endpoints (no isolated vertices)."""
        ids = set(edge_ids)
        verts: set[int] = set()
        es = []
        for e in ids:
            a, b = self.ends(e)
            verts.update((a, b))
            es.append((e, a, b))
        return Multigraph(verts, es)

    def delete_edges(self, edge_ids: Iterable[int]) -> "Multigraph":
        ids = set(edge_ids)
        for e in ids:
            self.ends(e)
        es = [(e, a, b) for e, (a, b) in self.edges.items() if e not in ids]
        return Multigraph(self.vertices, es)

    def merge_vertices(self, u: int, v: int) -> "Multigraph":
        """Identify u and v; the smaller id survives."""
        keep, gone = min(u, v), max(u, v)
        es = []
        for e, (a, b) in self.edges.items():
            a = keep if a == gone else a
            b = keep if b == gone else b
            es.append((e, a, b))
        verts = [w for w in self.vertices if w != gone]
        return Multigraph(verts, es)

    # -- cycles ------------------------------------------------------------

    def cycles(self) -> tuple[Cycle, ...]:
        """All cycles (edge-sets of connected 2-regular subgraphs), canonically sorted.

        Raises CycleBudgetExceeded if there are more than the configured budget.
        """
        cached = self._cache.get("cycles")
        if cached is None:
            cached = self._enumerate_cycles(cycle_budget())
            self._cache["cycles"] = cached
        return cached  # type: ignore[return-value]

    def _enumerate_cycles(self, budget: int) -> tuple[Cycle, ...]:
        out: list[Cycle] = []

        def push(cycle: Cycle):
            out.append(cycle)
            if len(out) > budget:
                raise CycleBudgetExceeded(
                    f"graph has more than {budget} cycles (set QUASIMAT_BUDGET to raise)"
                )

        parallel: dict[tuple[int, int], list[int]] = {}
        for e, (a, b) in self.edges.items():
            if a == b:
                push((e,))
            else:
                parallel.setdefault((a, b), []).append(e)

        for pair_edges in parallel.values():
            for e1, e2 in itertools.combinations(pair_edges, 2):
                push(tuple(sorted((e1, e2))))

        # Vertex cycles of length >= 3 in the simple support, then one edge
        # cycle per choice of parallel edge along each step.
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in parallel:
            adj[a].add(b)
            adj[b].add(a)

        for start in self.vertices:
            stack: list[tuple[list[int], set[int]]] = [([start], {start})]
            while stack:
                path, seen = stack.pop()
                last = path[-1]
                for nxt in sorted(adj[last]):
                    if nxt < start:
                        continue
                    if nxt == start:
                        if len(path) >= 3 and path[1] < path[-1]:
                            self._expand_vertex_cycle(path, parallel, push)
                        continue
                    if nxt in seen:
                        continue
                    stack.append((path + [nxt], seen | {nxt}))

        return tuple(sorted(out, key=lambda c: (len(c), c)))

    @staticmethod
    def _expand_vertex_cycle(path, parallel, push):
        steps = []
        for i in range(len(path)):
            a, b = path[i], path[(i + 1) % len(path)]
            steps.append(parallel[(min(a, b), max(a, b))])
        for combo in itertools.product(*steps):
            push(tuple(sorted(combo)))

    def theta_subgraphs(self) -> tuple[tuple[Cycle, Cycle, Cycle], ...]:
        """All theta subgraphs, each given by its three cycles (sorted triple).

        A theta is detected as a pair of cycles whose symmetric difference is a
        cycle and whose union has exactly two vertices of degree three.
        """
        cached = self._cache.get("thetas")
        if cached is not None:
            return cached  # type: ignore[return-value]
        cycles = self.cycles()
        cycle_sets = [frozenset(c) for c in cycles]
        universe = set(cycle_sets)
        triples: set[tuple[Cycle, Cycle, Cycle]] = set()
        for i, j in itertools.combinations(range(len(cycles)), 2):
            c1, c2 = cycle_sets[i], cycle_sets[j]
            diff = c1 ^ c2
            if diff not in universe:
                continue
            union = c1 | c2
            deg: dict[int, int] = {}
            for e in union:
                a, b = self.ends(e)
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
            if sorted(deg.values()) != [2] * (len(deg) - 2) + [3, 3]:
                continue
            triple = tuple(sorted((cycles[i], cycles[j], tuple(sorted(diff)))))
            triples.add(triple)  # type: ignore[arg-type]
        result = tuple(sorted(triples))
        self._cache["thetas"] = result
        return result

    def has_cycle_in(self, edge_ids: Iterable[int]) -> bool:
        """True iff the subgraph on edge_ids contains a cycle."""
        ids = set(edge_ids)
        verts = set()
        for e in ids:
            verts.update(self.ends(e))
        parent = {v: v for v in verts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in ids:
            a, b = self.ends(e)
            ra, rb = find(a), find(b)
            if ra == rb:
                return True
            parent[ra] = rb
        return False

    # -- simplification and shape -----------------------------------------

    def simplify(self) -> tuple["Multigraph", dict[int, int]]:
        """Drop loops, keep one representative (minimum id) per parallel class.

        Returns the simple graph and a map from each non-loop edge id to the
        representative of its parallel class.
        """
        reps: dict[tuple[int, int], int] = {}
        rep_of: dict[int, int] = {}
        for e, (a, b) in sorted(self.edges.items()):
            if a == b:
                continue
            if (a, b) not in reps:
                reps[(a, b)] = e
            rep_of[e] = reps[(a, b)]
        es = [(e, a, b) for (a, b), e in reps.items()]
        return Multigraph(self.vertices, es), rep_of

    def without_isolated_vertices(self) -> "Multigraph":
        used: set[int] = set()
        for a, b in self.edges.values():
            used.update((a, b))
        return Multigraph(used, [(e, a, b) for e, (a, b) in self.edges.items()])

    def classify_shape(self) -> Shape:
        """Shape of the simplification with isolated vertices discarded."""
        simple, _ = self.simplify()
        simple = simple.without_isolated_vertices()
        n = len(simple.vertices)
        if n < 3:
            return Shape(ShapeKind.OTHER)
        if simple.is_connected() and all(simple.degree(v) == 2 for v in simple.vertices):
            return Shape(ShapeKind.CYCLE)
        present = {tuple(sorted(p)) for p in simple.edges.values()}
        missing = [
            p for p in itertools.combinations(simple.vertices, 2) if p not in present
        ]
        if len(missing) == 0:
            return Shape(ShapeKind.COMPLETE_MINUS_PATH, 0)
        if len(missing) == 1:
            return Shape(ShapeKind.COMPLETE_MINUS_PATH, 1)
        if len(missing) == 2 and len(set(missing[0]) & set(missing[1])) == 1:
            return Shape(ShapeKind.COMPLETE_MINUS_PATH, 2)
        return Shape(ShapeKind.OTHER)

    def vertex_connectivity_at_least(self, k: int) -> bool:
        """Whole-graph vertex connectivity test on the simple support, k in 1..3."""
        if k < 1 or k > 3:
            raise GraphError("k must be 1, 2 or 3")
        if not self.is_connected():
            return False
        if k == 1:
            return True
        simple, _ = self.simplify()
        n = len(simple.vertices)
        if n <= k:
            # kappa(K_n) = n - 1, and n vertices admit no cut of size < k.
            present = {tuple(sorted(p)) for p in simple.edges.values()}
            return len(present) == n * (n - 1) // 2 and n - 1 >= k
        for cut in itertools.combinations(simple.vertices, k - 1):
            rest = [v for v in simple.vertices if v not in cut]
            if not simple.induced_by_vertices(rest).is_connected():
                return False
        return True

    # -- canonical labelled form ------------------------------------------

    def canonical_key(self) -> tuple:
        """Canonical encoding under vertex relabelling (edge ids forgotten).

        Minimum, over all bijections of the vertex set onto 0..n-1, of the
        sorted multiset of endpoint pairs.  Exponential in the vertex count;
        intended for graphs with at most ~7 vertices.
        """
        n = len(self.vertices)
        best = None
        for perm in itertools.permutations(range(n)):
            relab = dict(zip(self.vertices, perm))
            enc = tuple(
                sorted(
                    tuple(sorted((relab[a], relab[b])))
                    for a, b in self.edges.values()
                )
            )
            if best is None or enc < best:
                best = enc
        return (n, best)


def complete_graph(n: int, first_vertex: int = 0) -> Multigraph:
    verts = range(first_vertex, first_vertex + n)
    es = [
        (i, a, b)
        for i, (a, b) in enumerate(itertools.combinations(verts, 2))
    ]
    return Multigraph(verts, es)


def cycle_graph(n: int) -> Multigraph:
    verts = range(n)
    es = [(i, i, (i + 1) % n) for i in range(n)]
    return Multigraph(verts, es)
