"""Matroid oracles over a classified multigraph.

Ground set = edge ids.  The rank of an edge set X with vertex set V(X),
c components, and b components whose edge sets are balanced is

    |V(X)| - b           if X contains a frame cycle,
    |V(X)| - c + u       otherwise, where u = 1 iff X has an unbalanced cycle.

All other oracles (independence, closure, flats, circuits, connectivity) are
built on this rank function.  Subsets are bitmasks internally and ranks are
memoised per instance.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator

from .multigraph import CycleBudgetExceeded, GraphError, Multigraph
from .tripartition import CycleClass, QuasiBiasedGraph

DEFAULT_PARTITION_BUDGET = 22


def partition_budget() -> int:
    raw = os.environ.get("QUASIMAT_BUDGET")
    if raw is not None:
        # The env budget is a cycle-count ceiling; translate to an element
        # ceiling for partition searches by bit length.
        return max(DEFAULT_PARTITION_BUDGET, int(raw).bit_length())
    return DEFAULT_PARTITION_BUDGET


class BudgetExceeded(GraphError):
    pass


@dataclass(frozen=True)
class SubsetProfile:
    """Graph-side statistics of an edge subset used by the rank formula."""

    vertex_count: int
    component_count: int
    balanced_component_count: int
    has_unbalanced_cycle: bool
    has_frame_cycle: bool


class MatroidView:
    """Rank, independence, closure, circuit and connectivity oracles."""

    def __init__(self, qbg: QuasiBiasedGraph):
        self.qbg = qbg
        self.graph: Multigraph = qbg.graph
        self.ground: tuple[int, ...] = self.graph.edge_ids
        self._bit = {e: 1 << i for i, e in enumerate(self.ground)}
        self._by_bit = list(self.ground)
        self._ends = [self.graph.ends(e) for e in self.ground]
        self._full = (1 << len(self.ground)) - 1
        # cycle data for the generic rank path
        self._cycle_masks: list[tuple[int, CycleClass, int]] = []
        for c, k in qbg.assignment.items():
            mask = 0
            for e in c:
                mask |= self._bit[e]
            anchor = self.graph.ends(c[0])[0]
            self._cycle_masks.append((mask, k, anchor))
        self._unbalanced = [
            (m, a) for m, k, a in self._cycle_masks if k is not CycleClass.BALANCED
        ]
        self._frame = [m for m, k, _ in self._cycle_masks if k is CycleClass.FRAME]
        self._fast = None
        if qbg.signs is not None and qbg.uniform_unbalanced is not None:
            self._fast = "signed"
        elif qbg.every_cycle_unbalanced and qbg.uniform_unbalanced is not None:
            self._fast = "all_unbalanced"
        self._rank_cache: dict[int, int] = {}
        self._cache: dict[str, object] = {}

    # -- masks -------------------------------------------------------------

    def mask_of(self, edge_ids: Iterable[int]) -> int:
        m = 0
        for e in edge_ids:
            try:
                m |= self._bit[e]
            except KeyError:
                raise GraphError(f"unknown edge id {e}") from None
        return m

    def set_of(self, mask: int) -> frozenset[int]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self._by_bit[i])
            mask >>= 1
            i += 1
        return frozenset(out)

    # -- profile and rank --------------------------------------------------

    def profile(self, edge_ids: Iterable[int]) -> SubsetProfile:
        return self._profile_mask(self.mask_of(edge_ids))

    def _profile_mask(self, xmask: int) -> SubsetProfile:
        parent: dict[int, int] = {}
        par: dict[int, int] = {}
        signs = self.qbg.signs

        def find(x):
            p = 0
            while parent[x] != x:
                p ^= par[x]
                x = parent[x]
            return x, p

        bad_roots: set[int] = set()
        m = xmask
        i = 0
        cyclic = False
        while m:
            if m & 1:
                a, b = self._ends[i]
                bit = 0
                if signs is not None:
                    bit = 0 if signs[self._by_bit[i]] > 0 else 1
                for w in (a, b):
                    if w not in parent:
                        parent[w] = w
                        par[w] = 0
                ra, pa = find(a)
                rb, pb = find(b)
                if ra == rb:
                    cyclic = True
                    if pa ^ pb ^ bit:
                        bad_roots.add(ra)
                else:
                    parent[ra] = rb
                    par[ra] = pa ^ pb ^ bit
            m >>= 1
            i += 1

        roots = {find(v)[0] for v in parent}
        nverts = len(parent)
        ncomp = len(roots)

        if self._fast == "signed":
            bad = {find(r)[0] for r in bad_roots}
            has_unb = bool(bad)
        elif self._fast == "all_unbalanced":
            # every cycle unbalanced: a component is unbalanced iff cyclic,
            # i.e. its edge count reaches its vertex count.  Track per root.
            edges_per: dict[int, int] = {}
            m = xmask
            i = 0
            while m:
                if m & 1:
                    r = find(self._ends[i][0])[0]
                    edges_per[r] = edges_per.get(r, 0) + 1
                m >>= 1
                i += 1
            size_per: dict[int, int] = {}
            for v in parent:
                r = find(v)[0]
                size_per[r] = size_per.get(r, 0) + 1
            bad = {r for r in roots if edges_per.get(r, 0) >= size_per[r]}
            has_unb = bool(bad)
        else:
            bad = set()
            for cmask, anchor in self._unbalanced:
                if cmask & ~xmask:
                    continue
                bad.add(find(anchor)[0])
            has_unb = bool(bad)

        nbal = ncomp - len(bad)

        if self._fast == "signed":
            has_frame = has_unb and self.qbg.uniform_unbalanced is CycleClass.FRAME
        elif self._fast == "all_unbalanced":
            has_frame = has_unb and self.qbg.uniform_unbalanced is CycleClass.FRAME
        else:
            has_frame = any(not (fm & ~xmask) for fm in self._frame)

        return SubsetProfile(nverts, ncomp, nbal, has_unb, has_frame)

    def rank(self, edge_ids: Iterable[int]) -> int:
        return self.rank_mask(self.mask_of(edge_ids))

    def rank_mask(self, xmask: int) -> int:
        r = self._rank_cache.get(xmask)
        if r is not None:
            return r
        p = self._profile_mask(xmask)
        if p.has_frame_cycle:
            r = p.vertex_count - p.balanced_component_count
        else:
            r = p.vertex_count - p.component_count + (1 if p.has_unbalanced_cycle else 0)
        self._rank_cache[xmask] = r
        return r

    def full_rank(self) -> int:
        return self.rank_mask(self._full)

    # -- independence ------------------------------------------------------

    def is_independent(self, edge_ids: Iterable[int]) -> bool:
        """Direct graph test, equivalent to rank(X) == |X|.

        X is independent iff its subgraph is a forest, or has exactly one
        cycle which is a lift cycle, or every component has at most one cycle
        and each such cycle is a frame cycle.
        """
        ids = list(set(edge_ids))
        xmask = self.mask_of(ids)
        cycles_in = [
            (m, k) for m, k, _ in self._cycle_masks if not (m & ~xmask)
        ]
        if not cycles_in:
            return True
        if len(cycles_in) == 1 and cycles_in[0][1] is CycleClass.LIFT:
            return True
        if all(k is CycleClass.FRAME for _, k in cycles_in):
            # at most one cycle per component
            p = self._profile_mask(xmask)
            # independent iff |X| = |V(X)| - balanced components; with all
            # cycles frame this is exactly "one cycle per cyclic component".
            return len(ids) == p.vertex_count - p.balanced_component_count
        return False

    # -- closure and flats -------------------------------------------------

    def closure(self, edge_ids: Iterable[int]) -> frozenset[int]:
        return self.set_of(self.closure_mask(self.mask_of(edge_ids)))

    def closure_mask(self, xmask: int) -> int:
        r = self.rank_mask(xmask)
        out = xmask
        for e in self.ground:
            b = self._bit[e]
            if out & b:
                continue
            if self.rank_mask(xmask | b) == r:
                out |= b
        return out

    def is_flat(self, edge_ids: Iterable[int]) -> bool:
        m = self.mask_of(edge_ids)
        return self.closure_mask(m) == m

    def flats(self, max_rank: int | None = None) -> Iterator[frozenset[int]]:
        """All flats in weakly increasing rank order (closure ascent)."""
        for m in self.flat_masks(max_rank):
            yield self.set_of(m)

    def flat_masks(self, max_rank: int | None = None) -> list[int]:
        key = ("flats", max_rank)
        full = self._cache.get(("flats", None))
        if full is not None and max_rank is not None:
            return [m for m in full if self.rank_mask(m) <= max_rank]  # type: ignore
        cached = self._cache.get(key)
        if cached is not None:
            return cached  # type: ignore[return-value]
        bottom = self.closure_mask(0)
        top_rank = self.full_rank() if max_rank is None else min(
            max_rank, self.full_rank()
        )
        level = {bottom}
        out = [bottom]
        rank = self.rank_mask(bottom)
        while rank < top_rank:
            nxt: set[int] = set()
            for f in level:
                for e in self.ground:
                    b = self._bit[e]
                    if f & b:
                        continue
                    nxt.add(self.closure_mask(f | b))
            level = nxt
            out.extend(sorted(level))
            rank += 1
        self._cache[key] = out
        return out

    def hyperplane_masks(self) -> list[int]:
        r = self.full_rank()
        return [m for m in self.flat_masks() if self.rank_mask(m) == r - 1]

    def induced_flat(self, vertices: Iterable[int]) -> frozenset[int]:
        """The flat spanned by a vertex-induced subgraph.

        Edges induced by the vertex set, together with all balanced loops,
        and additionally all lift loops when the induced edges contain a
        lift cycle.
        """
        vs = set(vertices)
        induced = {
            e
            for e, (a, b) in self.graph.edges.items()
            if a in vs and b in vs
        }
        result = set(induced) | set(self.qbg.loops_of_class(CycleClass.BALANCED))
        has_lift = any(
            k is CycleClass.LIFT and induced.issuperset(c)
            for c, k in self.qbg.assignment.items()
        )
        if has_lift:
            result |= set(self.qbg.loops_of_class(CycleClass.LIFT))
        m = self.mask_of(result)
        if self.closure_mask(m) != m:
            raise GraphError("vertex-induced edge set failed the flat check")
        return frozenset(result)

    # -- circuits ----------------------------------------------------------

    def circuits(self) -> tuple[frozenset[int], ...]:
        """All circuits, assembled from the five structural families:

        balanced cycles; thetas with all three cycles unbalanced; two
        unbalanced cycles sharing exactly one vertex; two vertex-disjoint
        lift cycles; two vertex-disjoint frame cycles plus a minimal
        connecting path.
        """
        cached = self._cache.get("circuits")
        if cached is not None:
            return cached  # type: ignore[return-value]
        g = self.graph
        out: set[frozenset[int]] = set()
        for c in self.qbg.balanced_cycles:
            out.add(frozenset(c))
        for triple in g.theta_subgraphs():
            if all(
                self.qbg.assignment[c] is not CycleClass.BALANCED for c in triple
            ):
                out.add(frozenset(triple[0]) | frozenset(triple[1]))
        unb = self.qbg.unbalanced_cycles
        vsets = [g.cycle_vertices(c) for c in unb]
        classes = [self.qbg.assignment[c] for c in unb]
        for i in range(len(unb)):
            for j in range(i + 1, len(unb)):
                common = vsets[i] & vsets[j]
                if len(common) == 1:
                    out.add(frozenset(unb[i]) | frozenset(unb[j]))
                elif not common:
                    ci, cj = classes[i], classes[j]
                    if ci is CycleClass.LIFT and cj is CycleClass.LIFT:
                        out.add(frozenset(unb[i]) | frozenset(unb[j]))
                    elif ci is CycleClass.FRAME and cj is CycleClass.FRAME:
                        pair = frozenset(unb[i]) | frozenset(unb[j])
                        for path in self._connecting_paths(vsets[i], vsets[j]):
                            out.add(pair | path)
        result = tuple(sorted(out, key=lambda c: (len(c), sorted(c))))
        self._cache["circuits"] = result
        return result

    def _connecting_paths(
        self, verts1: frozenset[int], verts2: frozenset[int]
    ) -> Iterator[frozenset[int]]:
        """Edge sets of paths meeting each vertex set exactly in one endpoint."""
        g = self.graph
        blocked = verts1 | verts2
        for start in sorted(verts1):
            stack: list[tuple[int, frozenset[int], set[int]]] = [
                (start, frozenset(), {start})
            ]
            while stack:
                at, used, seen = stack.pop()
                for e, (a, b) in g.edges.items():
                    if a == b or e in used:
                        continue
                    if a == at:
                        nxt = b
                    elif b == at:
                        nxt = a
                    else:
                        continue
                    if nxt in seen:
                        continue
                    if nxt in verts2:
                        yield used | {e}
                        continue
                    if nxt in blocked:
                        continue
                    stack.append((nxt, used | {e}, seen | {nxt}))

    # -- element types -----------------------------------------------------

    def matroid_loops(self) -> tuple[int, ...]:
        return tuple(e for e in self.ground if self.rank_mask(self._bit[e]) == 0)

    def coloops(self) -> tuple[int, ...]:
        r = self.full_rank()
        return tuple(
            e for e in self.ground if self.rank_mask(self._full & ~self._bit[e]) == r - 1
        )

    def parallel_classes(self) -> tuple[frozenset[int], ...]:
        """Partition of the non-loop elements into parallel classes."""
        elems = [e for e in self.ground if self.rank_mask(self._bit[e]) == 1]
        classes: list[list[int]] = []
        for e in elems:
            placed = False
            for cls in classes:
                if self.rank_mask(self._bit[cls[0]] | self._bit[e]) == 1:
                    cls.append(e)
                    placed = True
                    break
            if not placed:
                classes.append([e])
        return tuple(sorted((frozenset(c) for c in classes), key=min))

    def is_simple(self) -> bool:
        if self.matroid_loops():
            return False
        return all(len(c) == 1 for c in self.parallel_classes())

    def free_elements(self) -> tuple[int, ...]:
        """Elements lying in circuits, all of which are spanning.

        Uses the circuit list when available within budget, else falls back
        to a hyperplane test: e is in a non-spanning circuit iff some
        hyperplane H contains e with e in the closure of H - e.
        """
        r = self.full_rank()
        coloops = set(self.coloops())
        out = []
        try:
            circuits = self.circuits()
            for e in self.ground:
                if e in coloops:
                    continue
                through = [c for c in circuits if e in c]
                if through and all(len(c) == r + 1 for c in through):
                    out.append(e)
            return tuple(out)
        except (BudgetExceeded, CycleBudgetExceeded):
            pass
        hyperplanes = self.hyperplane_masks()
        for e in self.ground:
            if e in coloops or self.rank_mask(self._bit[e]) == 0:
                continue
            free = True
            for h in hyperplanes:
                b = self._bit[e]
                if h & b and self.rank_mask(h & ~b) == self.rank_mask(h):
                    free = False
                    break
            if free:
                out.append(e)
        return tuple(out)

    # -- connectivity ------------------------------------------------------

    def is_connected(self) -> bool:
        n = len(self.ground)
        if n == 0:
            return True
        if n == 1:
            return not self.matroid_loops()
        if self.matroid_loops():
            return False
        return not self._has_separation(0)

    def is_3connected(self) -> bool:
        return self.is_connected() and not self._has_separation(1)

    def find_2separations(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        """All partitions (X, Y), |X|,|Y| >= 2, with r(X)+r(Y)-r(M) <= 1."""
        n = len(self.ground)
        if n > 16:
            raise BudgetExceeded("two-separation listing limited to 16 elements")
        r = self.full_rank()
        out = []
        for xm in range(1, self._full):
            comp = self._full & ~xm
            if xm > comp:
                continue
            if bit_count(xm) < 2 or bit_count(comp) < 2:
                continue
            if self.rank_mask(xm) + self.rank_mask(comp) - r <= 1:
                out.append((self.set_of(xm), self.set_of(comp)))
        out.sort(key=lambda p: (sorted(p[0]), sorted(p[1])))
        return out

    def _has_separation(self, order: int) -> bool:
        """Is there a partition with both sides > order and connectivity <= order?"""
        n = len(self.ground)
        if n <= 16:
            r = self.full_rank()
            lo = order + 1
            for xm in range(1, self._full):
                comp = self._full & ~xm
                if xm > comp:
                    continue
                if bit_count(xm) < lo or bit_count(comp) < lo:
                    continue
                if self.rank_mask(xm) + self.rank_mask(comp) - r <= order:
                    return True
            return False
        if n > partition_budget():
            raise BudgetExceeded(
                f"separation search limited to {partition_budget()} elements"
            )
        return self._has_separation_via_flats(order)

    def _has_separation_via_flats(self, order: int) -> bool:
        # One side of a minimal separation may be assumed closed and of rank
        # at most (r(M)+order)//2; valid whenever r(M) >= 2*order + 2, which
        # holds for every instance large enough to reach this path.
        r = self.full_rank()
        if r < 2 * order + 2:
            raise BudgetExceeded("flat-based separation search needs higher rank")
        lo = order + 1
        for f in self.flat_masks(max_rank=(r + order) // 2):
            comp = self._full & ~f
            if bit_count(f) < lo or bit_count(comp) < lo:
                continue
            if self.rank_mask(f) + self.rank_mask(comp) - r <= order:
                return True
        return False

    # -- quotient (contraction by a flat) ----------------------------------

    def quotient_rank(self, flat_mask: int, xmask: int) -> int:
        return self.rank_mask(flat_mask | xmask) - self.rank_mask(flat_mask)

    def quotient_is_connected(self, flat_mask: int) -> bool:
        """Connectivity of the matroid contracted by the given flat."""
        rest = [e for e in self.ground if not (flat_mask & self._bit[e])]
        n = len(rest)
        if n == 0:
            return True
        base = self.rank_mask(flat_mask)
        if n == 1:
            return self.rank_mask(flat_mask | self._bit[rest[0]]) > base
        total = self.full_rank() - base
        qr = {}
        restmask = 0
        for e in rest:
            restmask |= self._bit[e]
        for sub in range(1, 1 << n):
            m = 0
            i = 0
            s = sub
            while s:
                if s & 1:
                    m |= self._bit[rest[i]]
                s >>= 1
                i += 1
            qr[sub] = self.rank_mask(flat_mask | m) - base
        full_sub = (1 << n) - 1
        for sub in range(1, full_sub):
            if qr[sub] + qr[full_sub & ~sub] - total <= 0:
                return False
        return True


def bit_count(x: int) -> int:
    return x.bit_count()


def powerset_masks(n: int) -> Iterator[int]:
    return iter(range(1 << n))
