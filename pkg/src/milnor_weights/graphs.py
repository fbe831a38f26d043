"""Graph views of a chord diagram.

``connection_graph``
    multigraph on components, one edge per chord.
``intersection_graph``
    chords as vertices; a directed edge ``v -> w`` for every pair of
    endpoints on a common component with the ``v`` endpoint lower, counted
    mod 2.  Surviving opposite pairs become one undirected edge.
``simplified_graph``
    the same, counting only consecutive endpoints along each component.
``build_bsig``
    re-branching of a rooted-tree simplified graph into left/right branches
    per component, with the goodness test ``is_good``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Union

from .diagram import ChordDiagram, DiagramError

__all__ = [
    "ConnectionGraph",
    "IntersectionGraph",
    "BranchedSIG",
    "connection_graph",
    "is_tree",
    "intersection_graph",
    "simplified_graph",
    "is_rooted_tree",
    "build_bsig",
    "is_good",
    "reconstruct",
    "canonical_graph",
    "to_dot",
]


@dataclass(frozen=True)
class ConnectionGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]  # sorted pairs, with multiplicity; (i, i) is a loop


@dataclass(frozen=True)
class IntersectionGraph:
    """Also the carrier for the simplified graph (``SIG``)."""

    labels: dict[str, tuple[int, int]] = field(hash=False)
    directed: frozenset[tuple[str, str]]
    undirected: frozenset[frozenset[str]]

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self.labels)

    def out_neighbours(self, v: str) -> list[str]:
        return [w for (u, w) in self.directed if u == v]

    def connection(self) -> ConnectionGraph:
        """The connection graph read off the vertex labels alone."""
        comps = sorted({c for pair in self.labels.values() for c in pair})
        return ConnectionGraph(tuple(comps), tuple(sorted(self.labels.values())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntersectionGraph):
            return NotImplemented
        return (self.labels, self.directed, self.undirected) == (other.labels, other.directed, other.undirected)

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.labels.items())), self.directed, self.undirected))


@dataclass(frozen=True)
class BranchedSIG:
    """Branched simplified intersection graph of a diagram on ``1..top``.

    ``left[i]`` / ``right[i]`` list branch members bottom to top along
    component ``i``; ``tops[i]`` is the top chord of component ``i``.
    """

    diagram: ChordDiagram
    top: int
    root: str
    tops: dict[int, str]
    left: dict[int, tuple[str, ...]]
    right: dict[int, tuple[str, ...]]
    edges: frozenset[tuple[str, str]]

    @property
    def labels(self) -> dict[str, tuple[int, int]]:
        return {c: self.diagram.chord_label(c) for c in self.diagram.chords}

    @property
    def left_total(self) -> int:
        """Sum of left-branch sizes over all components except the top one."""
        return sum(len(branch) for i, branch in self.left.items() if i != self.top)


def connection_graph(diagram: ChordDiagram) -> ConnectionGraph:
    edges = sorted(diagram.chord_label(c) for c in diagram.chords)
    return ConnectionGraph(diagram.labels, tuple(edges))


def is_tree(graph: ConnectionGraph) -> bool:
    verts = set(graph.vertices)
    if len(graph.edges) != len(verts) - 1:
        return False
    if any(i == j for i, j in graph.edges) or len(set(graph.edges)) != len(graph.edges):
        return False
    if not verts:
        return False
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for i, j in graph.edges:
        if i not in verts or j not in verts:
            return False
        adj[i].add(j)
        adj[j].add(i)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def _mod2_graph(diagram: ChordDiagram, counts: Counter) -> IntersectionGraph:
    odd = {pair for pair, n in counts.items() if n % 2}
    undirected = frozenset(frozenset(p) for p in odd if p[0] != p[1] and (p[1], p[0]) in odd)
    directed = frozenset(p for p in odd if frozenset(p) not in undirected)
    labels = {c: diagram.chord_label(c) for c in diagram.chords}
    return IntersectionGraph(labels, directed, undirected)


def intersection_graph(diagram: ChordDiagram) -> IntersectionGraph:
    counts: Counter = Counter()
    for _, order in diagram.components:
        for a in range(len(order)):
            for b in range(a + 1, len(order)):
                counts[order[a], order[b]] += 1
    return _mod2_graph(diagram, counts)


def simplified_graph(diagram: ChordDiagram) -> IntersectionGraph:
    counts: Counter = Counter()
    for _, order in diagram.components:
        for a, b in zip(order, order[1:]):
            counts[a, b] += 1
    return _mod2_graph(diagram, counts)


def is_rooted_tree(graph: IntersectionGraph) -> str | None:
    """Root of ``graph`` if it is a rooted directed tree, else None."""
    verts = graph.vertices
    if not verts or graph.undirected:
        return None
    out: dict[str, list[str]] = {v: [] for v in verts}
    for u, w in graph.directed:
        out[u].append(w)
    sinks = [v for v in verts if not out[v]]
    if len(sinks) != 1 or any(len(out[v]) > 1 for v in verts):
        return None
    root = sinks[0]
    # with out-degree <= 1, reaching the root from everywhere means acyclic and connected
    for v in verts:
        seen = set()
        while v != root:
            if v in seen:
                return None
            seen.add(v)
            v = out[v][0]
    return root


def build_bsig(diagram: ChordDiagram) -> BranchedSIG | None:
    """The branched SIG of a diagram on ``1..top``; None when it is not defined."""
    if not diagram.chords:
        return None
    top = max(diagram.labels)
    root = is_rooted_tree(simplified_graph(diagram))
    if root is None or top not in diagram.chord_label(root):
        return None
    tops: dict[int, str] = {}
    left: dict[int, tuple[str, ...]] = {}
    right: dict[int, tuple[str, ...]] = {}
    edges: set[tuple[str, str]] = set()
    for i, order in diagram.components:
        if not order:
            continue
        r_i = order[-1]
        tops[i] = r_i
        lows, highs = [], []
        for chord in order[:-1]:
            a, b = diagram.chord_label(chord)
            other = b if a == i else a
            (lows if other < i else highs).append(chord)
        left[i], right[i] = tuple(lows), tuple(highs)
        for branch in (lows, highs):
            if branch:
                edges.update(zip(branch, branch[1:]))
                edges.add((branch[-1], r_i))
    return BranchedSIG(diagram, top, root, tops, left, right, frozenset(edges))


def is_good(bsig: BranchedSIG) -> bool:
    """Monotone branch orderings.

    Along the top component every chord counts, the root included, and
    partner labels increase going up.  Going up a left branch they
    decrease; going up a right branch they increase.  No two chords
    ``{i, j}``, ``{k, l}`` may interlace (``i < k < j < l``).
    """
    d, top = bsig.diagram, bsig.top
    pairs = [d.chord_label(c) for c in d.chords]
    if any(i < k < j < l for i, j in pairs for k, l in pairs):
        return False

    def partners(chords, i):
        out = []
        for c in chords:
            a, b = d.chord_label(c)
            out.append(b if a == i else a)
        return out

    def increasing(seq):
        return all(x < y for x, y in zip(seq, seq[1:]))

    if not increasing(partners(d.order(top), top)):
        return False
    for i in d.labels:
        if i == top:
            continue
        if not increasing(partners(bsig.left.get(i, ()), i)[::-1]):
            return False
        if not increasing(partners(bsig.right.get(i, ()), i)):
            return False
    return True


def reconstruct(graph: IntersectionGraph) -> ChordDiagram:
    """The unique diagram with this intersection graph, for tree connection graphs."""
    conn = graph.connection()
    if not is_tree(conn):
        raise DiagramError("vertex labels do not form a tree connection graph")
    if graph.undirected:
        raise DiagramError("undirected edge present; impossible over a tree connection graph")
    orders = []
    for comp in conn.vertices:
        chords = [c for c, pair in graph.labels.items() if comp in pair]
        below = {c: 0 for c in chords}
        for a in chords:
            for b in chords:
                if a == b:
                    continue
                if (a, b) in graph.directed:
                    below[b] += 1
                elif (b, a) not in graph.directed:
                    raise DiagramError(f"chords {a} and {b} on component {comp} are not ordered")
        ranked = sorted(chords, key=below.__getitem__)
        if sorted(below.values()) != list(range(len(chords))):
            raise DiagramError(f"edge directions on component {comp} are not a total order")
        orders.append((comp, tuple(ranked)))
    return ChordDiagram(tuple(orders))


def canonical_graph(graph: IntersectionGraph, diagram: ChordDiagram) -> tuple:
    """Hashable form of ``graph`` after renaming chords as in ``canonical_form(diagram)``."""
    rename: dict[str, int] = {}
    for _, order in diagram.components:
        for c in order:
            rename.setdefault(c, len(rename))
    labels = tuple(sorted((rename[c], pair) for c, pair in graph.labels.items()))
    directed = tuple(sorted((rename[a], rename[b]) for a, b in graph.directed))
    undirected = tuple(sorted(tuple(sorted(rename[x] for x in e)) for e in graph.undirected))
    return labels, directed, undirected


GraphLike = Union[ConnectionGraph, IntersectionGraph, BranchedSIG]


def _label(pair: tuple[int, int]) -> str:
    return "{%d,%d}" % pair


def _node(v) -> str:
    v = str(v)
    return v if re.match(r"^([A-Za-z_]\w*|\d+)$", v) else f'"{v}"'


def to_dot(graph: GraphLike, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    if isinstance(graph, ConnectionGraph):
        for v in graph.vertices:
            lines.append(f'  {_node(v)} [label="{v}"];')
        for i, j in graph.edges:
            lines.append(f"  {_node(i)} -> {_node(j)} [dir=none];")
    elif isinstance(graph, IntersectionGraph):
        for v, pair in graph.labels.items():
            lines.append(f'  {_node(v)} [label="{_label(pair)}"];')
        for a, b in sorted(graph.directed):
            lines.append(f"  {_node(a)} -> {_node(b)};")
        for e in sorted(tuple(sorted(e)) for e in graph.undirected):
            lines.append(f"  {_node(e[0])} -> {_node(e[1])} [dir=both];")
    elif isinstance(graph, BranchedSIG):
        for v, pair in graph.labels.items():
            shape = ', shape=doublecircle' if v == graph.root else ""
            lines.append(f'  {_node(v)} [label="{_label(pair)}"{shape}];')
        for a, b in sorted(graph.edges):
            lines.append(f"  {_node(a)} -> {_node(b)};")
    else:
        raise TypeError(f"cannot export {type(graph).__name__} to DOT")
    lines.append("}")
    return "\n".join(lines) + "\n"
