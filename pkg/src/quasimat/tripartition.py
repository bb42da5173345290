"""Cycle tripartitions: balanced / lift / frame classes on a multigraph.

A tripartition is proper when (a) no theta subgraph has exactly two of its
three cycles balanced, and (b) every lift cycle shares a vertex with every
frame cycle.  Graphs together with a proper tripartition are the inputs to
the matroid oracles in :mod:`quasimat.matroid`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping

from .multigraph import Cycle, GraphError, Multigraph


class CycleClass(Enum):
    BALANCED = "balanced"
    LIFT = "lift"
    FRAME = "frame"


class ImproperTripartition(GraphError):
    """Raised when a cycle classification fails the properness checks."""


@dataclass(frozen=True)
class ValidationReport:
    theta_violations: tuple[tuple[Cycle, Cycle, Cycle], ...]
    meeting_violations: tuple[tuple[Cycle, Cycle], ...]

    @property
    def ok(self) -> bool:
        return not self.theta_violations and not self.meeting_violations


@dataclass(frozen=True)
class BiasSpec:
    """Recipe for deriving a tripartition.

    kind 'all_balanced': every cycle balanced.
    kind 'signed': signs maps each edge id to +1/-1; a cycle is balanced iff
        its sign product is positive; unbalanced cycles all get
        unbalanced_class (LIFT or FRAME).
    kind 'explicit': assignment maps every cycle to its class.
    """

    kind: str
    signs: Mapping[int, int] | None = None
    unbalanced_class: CycleClass | None = None
    assignment: Mapping[Cycle, CycleClass] | None = None


class QuasiBiasedGraph:
    """A multigraph with a total cycle classification.

    ``signs``/``uniform_unbalanced`` are retained when the instance came from
    a signed construction with a single unbalanced class; the matroid layer
    uses them as a fast path that avoids scanning the cycle list.
    """

    def __init__(
        self,
        graph: Multigraph,
        assignment: Mapping[Cycle, CycleClass],
        signs: Mapping[int, int] | None = None,
        uniform_unbalanced: CycleClass | None = None,
    ):
        self.graph = graph
        cycles = graph.cycles()
        self.assignment: dict[Cycle, CycleClass] = {}
        for c in cycles:
            key = tuple(sorted(c))
            if key not in assignment:
                raise ImproperTripartition(f"cycle {key} has no class")
            self.assignment[key] = assignment[key]
        if len(assignment) != len(cycles):
            extra = set(assignment) - set(self.assignment)
            raise ImproperTripartition(f"classes given for non-cycles: {sorted(extra)}")
        self.signs = dict(signs) if signs is not None else None
        self.uniform_unbalanced = uniform_unbalanced
        # Set when every cycle is unbalanced; enables a cycle-detection fast
        # path in the rank oracle analogous to the signed one.
        self.every_cycle_unbalanced = False
        self._cache: dict[str, object] = {}

    # -- access ------------------------------------------------------------

    def cycle_class(self, cycle: Iterable[int]) -> CycleClass:
        key = tuple(sorted(cycle))
        try:
            return self.assignment[key]
        except KeyError:
            raise GraphError(f"{key} is not a cycle of this graph") from None

    def cycles_of_class(self, cls: CycleClass) -> tuple[Cycle, ...]:
        return tuple(c for c, k in self.assignment.items() if k is cls)

    @property
    def balanced_cycles(self) -> tuple[Cycle, ...]:
        return self.cycles_of_class(CycleClass.BALANCED)

    @property
    def lift_cycles(self) -> tuple[Cycle, ...]:
        return self.cycles_of_class(CycleClass.LIFT)

    @property
    def frame_cycles(self) -> tuple[Cycle, ...]:
        return self.cycles_of_class(CycleClass.FRAME)

    @property
    def unbalanced_cycles(self) -> tuple[Cycle, ...]:
        return tuple(
            c for c, k in self.assignment.items() if k is not CycleClass.BALANCED
        )

    def loops_of_class(self, cls: CycleClass) -> tuple[int, ...]:
        return tuple(
            e for e in self.graph.loops() if self.assignment[(e,)] is cls
        )

    def is_balanced_set(self, edge_ids: Iterable[int]) -> bool:
        """True iff every cycle inside the edge set is balanced."""
        ids = set(edge_ids)
        if self.signs is not None:
            return not _signed_has_unbalanced(self.graph, self.signs, ids)
        return all(
            k is CycleClass.BALANCED
            for c, k in self.assignment.items()
            if ids.issuperset(c)
        )

    def is_degenerate(self, cls: CycleClass) -> bool:
        """True iff no two cycles of the class are vertex-disjoint.

        Only meaningful for LIFT and FRAME; an empty class is degenerate.
        """
        if cls is CycleClass.BALANCED:
            raise GraphError("degeneracy is defined for the lift and frame classes")
        cycles = self.cycles_of_class(cls)
        vsets = [self.graph.cycle_vertices(c) for c in cycles]
        for i in range(len(vsets)):
            for j in range(i + 1, len(vsets)):
                if not (vsets[i] & vsets[j]):
                    return False
        return True

    # -- validation --------------------------------------------------------

    def validate(self) -> ValidationReport:
        theta_bad = []
        for triple in self.graph.theta_subgraphs():
            balanced = sum(
                1 for c in triple if self.assignment[c] is CycleClass.BALANCED
            )
            if balanced == 2:
                theta_bad.append(triple)
        meeting_bad = []
        lifts = self.lift_cycles
        frames = self.frame_cycles
        lift_verts = [self.graph.cycle_vertices(c) for c in lifts]
        frame_verts = [self.graph.cycle_vertices(c) for c in frames]
        for lc, lv in zip(lifts, lift_verts):
            for fc, fv in zip(frames, frame_verts):
                if not (lv & fv):
                    meeting_bad.append((lc, fc))
        return ValidationReport(tuple(theta_bad), tuple(meeting_bad))

    # -- canonical form ----------------------------------------------------

    def canonical_key(self) -> tuple:
        """Canonical encoding under relabelling of vertices and edges."""
        import itertools

        g = self.graph
        n = len(g.vertices)
        best = None
        for perm in itertools.permutations(range(n)):
            relab = dict(zip(g.vertices, perm))
            # order edges by relabelled endpoints, then break ties arbitrarily
            # but consistently; cycles are then re-encoded through edge ranks.
            keyed = sorted(
                (tuple(sorted((relab[a], relab[b]))), e)
                for e, (a, b) in g.edges.items()
            )
            edge_rank = {e: i for i, (_, e) in enumerate(keyed)}
            enc_edges = tuple(p for p, _ in keyed)
            enc_cycles = tuple(
                sorted(
                    (tuple(sorted(edge_rank[e] for e in c)), k.value)
                    for c, k in self.assignment.items()
                )
            )
            enc = (enc_edges, enc_cycles)
            if best is None or enc < best:
                best = enc
        return (n, best)

    def __repr__(self):
        b = len(self.balanced_cycles)
        l = len(self.lift_cycles)
        f = len(self.frame_cycles)
        return (
            f"QuasiBiasedGraph({len(self.graph.vertices)} vertices, "
            f"{len(self.graph.edges)} edges, B={b} L={l} F={f})"
        )


def _signed_has_unbalanced(
    graph: Multigraph, signs: Mapping[int, int], edge_ids: set[int]
) -> bool:
    """True iff the subgraph on edge_ids has a cycle of negative sign product.

    Union-find with parity; linear in the subset size.
    """
    parent: dict[int, int] = {}
    par: dict[int, int] = {}

    def find(x):
        p = 0
        while parent[x] != x:
            p ^= par[x]
            x = parent[x]
        return x, p

    for e in edge_ids:
        a, b = graph.ends(e)
        bit = 0 if signs[e] > 0 else 1
        for w in (a, b):
            if w not in parent:
                parent[w] = w
                par[w] = 0
        ra, pa = find(a)
        rb, pb = find(b)
        if ra == rb:
            if pa ^ pb ^ bit:
                return True
        else:
            parent[ra] = rb
            par[ra] = pa ^ pb ^ bit
    return False


def from_bias_spec(
    graph: Multigraph, spec: BiasSpec, validate: bool = True
) -> QuasiBiasedGraph:
    """Build a classified graph from a recipe; rejects improper results."""
    if spec.kind == "all_balanced":
        assignment = {c: CycleClass.BALANCED for c in graph.cycles()}
        signs = {e: 1 for e in graph.edges}
        qbg = QuasiBiasedGraph(graph, assignment, signs, CycleClass.LIFT)
    elif spec.kind == "signed":
        if spec.signs is None or spec.unbalanced_class is None:
            raise GraphError("signed spec needs signs and an unbalanced class")
        if spec.unbalanced_class is CycleClass.BALANCED:
            raise GraphError("unbalanced class must be lift or frame")
        if set(spec.signs) != set(graph.edges):
            raise GraphError("signs must cover exactly the edge set")
        assignment = {}
        for c in graph.cycles():
            prod = 1
            for e in c:
                prod *= spec.signs[e]
            assignment[c] = (
                CycleClass.BALANCED if prod > 0 else spec.unbalanced_class
            )
        qbg = QuasiBiasedGraph(
            graph, assignment, spec.signs, spec.unbalanced_class
        )
    elif spec.kind == "explicit":
        if spec.assignment is None:
            raise GraphError("explicit spec needs an assignment")
        assignment = {tuple(sorted(c)): k for c, k in spec.assignment.items()}
        qbg = QuasiBiasedGraph(graph, assignment)
    else:
        raise GraphError(f"unknown bias spec kind {spec.kind!r}")

    if validate:
        report = qbg.validate()
        if not report.ok:
            raise ImproperTripartition(
                f"improper tripartition: {len(report.theta_violations)} theta "
                f"violations, {len(report.meeting_violations)} meeting violations"
            )
    return qbg


def all_balanced(graph: Multigraph) -> QuasiBiasedGraph:
    return from_bias_spec(graph, BiasSpec("all_balanced"), validate=False)


def all_unbalanced(graph: Multigraph, cls: CycleClass) -> QuasiBiasedGraph:
    """Every cycle unbalanced with the given class.

    Proper only when valid as a meeting-property instance (always, for FRAME
    with an empty lift class, or LIFT with an empty frame class).
    """
    assignment = {c: cls for c in graph.cycles()}
    qbg = QuasiBiasedGraph(graph, assignment, None, cls)
    qbg.every_cycle_unbalanced = True
    return qbg
