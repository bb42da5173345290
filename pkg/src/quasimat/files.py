"""Plain-text serialization of graphs and their cycle classifications.

Grammar (one directive per line, ``#`` starts a comment, blank lines are
ignored)::

    vertices <n>              # vertices are 0 .. n-1
    edge <id> <u> <v>
    bias signed               # then one sign line per edge and a rule line
    sign <id> +|-
    rule alllift | allframe
    bias explicit             # then one line per cycle
    cycle balanced|lift|frame <edge ids...>

A file without a bias block describes a plain multigraph.
"""

from __future__ import annotations

from .multigraph import GraphError, Multigraph
from .tripartition import (
    BiasSpec,
    CycleClass,
    QuasiBiasedGraph,
    from_bias_spec,
)


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


_CLASS_NAMES = {
    "balanced": CycleClass.BALANCED,
    "lift": CycleClass.LIFT,
    "frame": CycleClass.FRAME,
}

_RULE_NAMES = {"alllift": CycleClass.LIFT, "allframe": CycleClass.FRAME}


def _tokenize(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse(text: str) -> Multigraph | QuasiBiasedGraph:
    nverts = None
    edges: list[tuple[int, int, int]] = []
    bias_kind: str | None = None
    signs: dict[int, int] = {}
    rule: CycleClass | None = None
    assignment: dict[tuple[int, ...], CycleClass] = {}
    cycle_lines: dict[tuple[int, ...], int] = {}

    for lineno, tok in _tokenize(text):
        key = tok[0]
        try:
            if key == "vertices":
                if nverts is not None:
                    raise ParseError(lineno, "duplicate vertices line")
                nverts = int(tok[1])
            elif key == "edge":
                eid, u, v = int(tok[1]), int(tok[2]), int(tok[3])
                edges.append((eid, u, v))
            elif key == "bias":
                if bias_kind is not None:
                    raise ParseError(lineno, "duplicate bias line")
                if tok[1] not in ("signed", "explicit"):
                    raise ParseError(lineno, f"unknown bias kind {tok[1]!r}")
                bias_kind = tok[1]
            elif key == "sign":
                if bias_kind != "signed":
                    raise ParseError(lineno, "sign line outside a signed bias block")
                if tok[2] not in ("+", "-"):
                    raise ParseError(lineno, "sign must be + or -")
                signs[int(tok[1])] = 1 if tok[2] == "+" else -1
            elif key == "rule":
                if bias_kind != "signed":
                    raise ParseError(lineno, "rule line outside a signed bias block")
                if tok[1] not in _RULE_NAMES:
                    raise ParseError(lineno, f"unknown rule {tok[1]!r}")
                rule = _RULE_NAMES[tok[1]]
            elif key == "cycle":
                if bias_kind != "explicit":
                    raise ParseError(lineno, "cycle line outside an explicit bias block")
                if tok[1] not in _CLASS_NAMES:
                    raise ParseError(lineno, f"unknown cycle class {tok[1]!r}")
                ids = tuple(sorted(int(t) for t in tok[2:]))
                assignment[ids] = _CLASS_NAMES[tok[1]]
                cycle_lines[ids] = lineno
            else:
                raise ParseError(lineno, f"unknown directive {key!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(lineno, f"malformed {key!r} line") from None

    if nverts is None:
        raise ParseError(0, "missing vertices line")
    try:
        graph = Multigraph(range(nverts), edges)
    except GraphError as exc:
        raise ParseError(0, str(exc)) from None

    if bias_kind is None:
        return graph
    if bias_kind == "signed":
        if rule is None:
            raise ParseError(0, "signed bias block needs a rule line")
        for e in graph.edges:
            if e not in signs:
                raise ParseError(0, f"missing sign for edge {e}")
        return from_bias_spec(
            graph, BiasSpec("signed", signs=signs, unbalanced_class=rule)
        )
    known = set(graph.cycles())
    for ids, lineno in cycle_lines.items():
        if ids not in known:
            raise ParseError(lineno, f"edge set {list(ids)} is not a cycle of the graph")
    return from_bias_spec(graph, BiasSpec("explicit", assignment=assignment))


def serialize(obj: Multigraph | QuasiBiasedGraph) -> str:
    if isinstance(obj, QuasiBiasedGraph):
        graph = obj.graph
    else:
        graph = obj
    lines = [f"vertices {len(graph.vertices)}"]
    order = {v: i for i, v in enumerate(graph.vertices)}
    for e, (u, v) in graph.edges.items():
        lines.append(f"edge {e} {order[u]} {order[v]}")
    if isinstance(obj, QuasiBiasedGraph):
        if obj.signs is not None and obj.uniform_unbalanced is not None:
            lines.append("bias signed")
            for e in graph.edges:
                lines.append(f"sign {e} {'+' if obj.signs[e] > 0 else '-'}")
            rule = (
                "alllift"
                if obj.uniform_unbalanced is CycleClass.LIFT
                else "allframe"
            )
            lines.append(f"rule {rule}")
        else:
            lines.append("bias explicit")
            for c, k in sorted(obj.assignment.items()):
                ids = " ".join(str(e) for e in c)
                lines.append(f"cycle {k.value} {ids}")
    return "\n".join(lines) + "\n"


def load(path: str) -> Multigraph | QuasiBiasedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())
