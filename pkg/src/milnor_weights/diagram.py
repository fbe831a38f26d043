"""Chord diagrams on string-link components.

A diagram is nothing more than the bottom-to-top order of chord endpoints
along each component.  Components are always oriented upwards; chords are
named by arbitrary case-sensitive tokens, each appearing exactly twice.

Text format::

    # comment
    diagram example
    component 1: a
    component 2: a b
    component 3: b
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "DiagramError",
    "ChordDiagram",
    "MuIndex",
    "parse_diagram",
    "render_diagram",
    "relabel_for_index",
    "canonical_form",
    "canonical_key",
    "enumerate_tree_diagrams",
    "labeled_trees",
    "chord_names",
    "random_diagram",
    "random_tree_diagram",
    "tree_diagram_count",
]

_TOKEN = re.compile(r"^\w+$")


class DiagramError(ValueError):
    """Raised for malformed chord diagrams or diagram files."""


@dataclass(frozen=True)
class ChordDiagram:
    """Endpoint orders per component, stored sorted by component label."""

    components: tuple[tuple[int, tuple[str, ...]], ...]
    name: str | None = None

    def __post_init__(self) -> None:
        comps = tuple(sorted((int(lab), tuple(order)) for lab, order in self.components))
        labels = [lab for lab, _ in comps]
        if len(set(labels)) != len(labels):
            raise DiagramError(f"duplicate component label in {labels}")
        if any(lab < 1 for lab in labels):
            raise DiagramError("component labels must be positive integers")
        counts: dict[str, int] = {}
        for _, order in comps:
            for chord in order:
                if not isinstance(chord, str) or not _TOKEN.match(chord):
                    raise DiagramError(f"invalid chord identifier {chord!r}")
                counts[chord] = counts.get(chord, 0) + 1
        bad = sorted(c for c, n in counts.items() if n != 2)
        if bad:
            detail = ", ".join(f"{c} occurs {counts[c]} times" for c in bad)
            raise DiagramError(f"every chord needs exactly two endpoints: {detail}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_orders(cls, orders: Mapping[int, str | Sequence[str]], name: str | None = None) -> ChordDiagram:
        """Build from ``{label: "a b c"}`` or ``{label: ["a", "b", "c"]}``."""
        comps = []
        for lab, order in orders.items():
            if isinstance(order, str):
                order = order.split()
            comps.append((lab, tuple(order)))
        return cls(tuple(comps), name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChordDiagram):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        body = " | ".join(f"{lab}: {' '.join(order)}".rstrip() for lab, order in self.components)
        return "{" + body + "}"

    @cached_property
    def orders(self) -> dict[int, tuple[str, ...]]:
        return dict(self.components)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(lab for lab, _ in self.components)

    def order(self, label: int) -> tuple[str, ...]:
        return self.orders.get(label, ())

    @cached_property
    def endpoints(self) -> dict[str, tuple[tuple[int, int], tuple[int, int]]]:
        """Chord id -> its two (component, position) slots, in label/position order."""
        found: dict[str, list[tuple[int, int]]] = {}
        for lab, order in self.components:
            for pos, chord in enumerate(order):
                found.setdefault(chord, []).append((lab, pos))
        return {c: (e[0], e[1]) for c, e in found.items()}

    @property
    def chords(self) -> tuple[str, ...]:
        return tuple(self.endpoints)

    @property
    def degree(self) -> int:
        return len(self.endpoints)

    def chord_label(self, chord: str) -> tuple[int, int]:
        """The (sorted) pair of components carrying ``chord``."""
        (i, _), (j, _) = self.endpoints[chord]
        return (i, j) if i <= j else (j, i)

    def with_components(self, labels: Iterable[int]) -> ChordDiagram:
        """Add empty components for any missing label."""
        orders = dict(self.orders)
        for lab in labels:
            orders.setdefault(lab, ())
        return ChordDiagram(tuple(orders.items()), self.name)

    def relabeled(self, mapping: Mapping[int, int]) -> ChordDiagram:
        return ChordDiagram(tuple((mapping[lab], order) for lab, order in self.components), self.name)


@dataclass(frozen=True)
class MuIndex:
    """Index ``i_1 ... i_n ; j`` of a Milnor invariant, all labels distinct."""

    leading: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "leading", tuple(int(i) for i in self.leading))
        labels = (*self.leading, self.target)
        if len(set(labels)) != len(labels):
            raise ValueError(f"index labels must be pairwise distinct, got {labels}")

    @classmethod
    def standard(cls, n: int) -> MuIndex:
        return cls(tuple(range(1, n + 1)), n + 1)

    @classmethod
    def parse(cls, text: str) -> MuIndex:
        """Parse ``"i1,i2,...,in,j"``; the last label is the target."""
        try:
            labels = [int(t) for t in re.split(r"[,;\s]+", text.strip()) if t]
        except ValueError as exc:
            raise ValueError(f"bad index {text!r}") from exc
        if len(labels) < 1:
            raise ValueError(f"bad index {text!r}")
        return cls(tuple(labels[:-1]), labels[-1])

    @property
    def labels(self) -> tuple[int, ...]:
        return (*self.leading, self.target)

    def __str__(self) -> str:
        return ",".join(map(str, self.labels))


def parse_diagram(text: str) -> ChordDiagram:
    name = None
    orders: dict[int, tuple[str, ...]] = {}
    lines = [part for raw in text.splitlines() for part in raw.split(" / ")]
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "diagram":
            name = rest.strip() or None
            continue
        m = re.match(r"^component\s+(\S+)\s*:(.*)$", line)
        if not m:
            raise DiagramError(f"line {lineno}: cannot parse {raw!r}")
        try:
            label = int(m.group(1))
        except ValueError:
            raise DiagramError(f"line {lineno}: component label {m.group(1)!r} is not an integer") from None
        if label in orders:
            raise DiagramError(f"line {lineno}: duplicate component label {label}")
        tokens = m.group(2).split()
        for tok in tokens:
            if not _TOKEN.match(tok):
                raise DiagramError(f"line {lineno}: unknown chord identifier {tok!r}")
        orders[label] = tuple(tokens)
    return ChordDiagram(tuple(orders.items()), name)


def render_diagram(diagram: ChordDiagram) -> str:
    lines = []
    if diagram.name:
        lines.append(f"diagram {diagram.name}")
    for lab, order in diagram.components:
        lines.append(f"component {lab}: {' '.join(order)}".rstrip())
    return "\n".join(lines) + "\n"


def relabel_for_index(diagram: ChordDiagram, index: MuIndex) -> ChordDiagram | None:
    """Rename ``i_k -> k`` and ``j -> n+1``; None when the weight is forced to 0.

    Components outside the index are dropped when empty.  A chord endpoint on
    such a component makes the value vanish, signalled by returning None.
    """
    mapping = {lab: k for k, lab in enumerate(index.labels, 1)}
    for lab, order in diagram.components:
        if lab not in mapping and order:
            return None
    comps = [(mapping[lab], order) for lab, order in diagram.components if lab in mapping]
    present = {lab for lab, _ in comps}
    comps.extend((k, ()) for k in mapping.values() if k not in present)
    return ChordDiagram(tuple(comps), diagram.name)


def chord_names(count: int) -> list[str]:
    """``a, b, ..., z, aa, ab, ...``"""
    names: list[str] = []
    if count <= 0:
        return names
    letters = "abcdefghijklmnopqrstuvwxyz"
    for size in itertools.count(1):
        for combo in itertools.product(letters, repeat=size):
            names.append("".join(combo))
            if len(names) == count:
                return names
    return names


def canonical_form(diagram: ChordDiagram) -> ChordDiagram:
    """Rename chords by first appearance along components in label order."""
    rename: dict[str, str] = {}
    for _, order in diagram.components:
        for chord in order:
            if chord not in rename:
                rename[chord] = ""
    for old, new in zip(rename, chord_names(len(rename))):
        rename[old] = new
    return ChordDiagram(tuple((lab, tuple(rename[c] for c in order)) for lab, order in diagram.components))


def canonical_key(diagram: ChordDiagram) -> str:
    canon = canonical_form(diagram)
    return "|".join(f"{lab}:{' '.join(order)}" for lab, order in canon.components)


def labeled_trees(vertices: int) -> Iterator[list[tuple[int, int]]]:
    """All labeled trees on ``1..vertices`` (via Pruefer sequences), as sorted edge lists."""
    if vertices == 1:
        yield []
        return
    if vertices == 2:
        yield [(1, 2)]
        return
    for seq in itertools.product(range(1, vertices + 1), repeat=vertices - 2):
        degree = [1] * (vertices + 1)
        for v in seq:
            degree[v] += 1
        edges = []
        for v in seq:
            leaf = min(u for u in range(1, vertices + 1) if degree[u] == 1)
            edges.append(tuple(sorted((leaf, v))))
            degree[leaf] -= 1
            degree[v] -= 1
        u, w = (x for x in range(1, vertices + 1) if degree[x] == 1)
        edges.append((u, w))
        yield sorted(edges)


def _orders_for_tree(edges: Sequence[tuple[int, int]], names: Sequence[str], vertices: int):
    incident: dict[int, list[str]] = {v: [] for v in range(1, vertices + 1)}
    for (i, j), name in zip(edges, names):
        incident[i].append(name)
        incident[j].append(name)
    return incident


def enumerate_tree_diagrams(n: int) -> Iterator[ChordDiagram]:
    """Every degree-``n`` diagram on components ``1..n+1`` with a tree connection graph."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n == 0:
        yield ChordDiagram(((1, ()),))
        return
    names = chord_names(n)
    for edges in labeled_trees(n + 1):
        incident = _orders_for_tree(edges, names, n + 1)
        per_vertex = [list(itertools.permutations(incident[v])) for v in range(1, n + 2)]
        for choice in itertools.product(*per_vertex):
            yield ChordDiagram(tuple((v, order) for v, order in enumerate(choice, 1)))


def tree_diagram_count(n: int) -> int:
    """Sum over labeled trees on ``n+1`` vertices of the product of (deg v)!."""
    total = 0
    for edges in labeled_trees(n + 1):
        deg = {v: 0 for v in range(1, n + 2)}
        for i, j in edges:
            deg[i] += 1
            deg[j] += 1
        total += math.prod(math.factorial(d) for d in deg.values())
    return total


def random_diagram(n: int, k: int, seed: int | random.Random) -> ChordDiagram:
    """Chord by chord: two components uniformly (repeats allowed), uniform slots."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    orders: dict[int, list[str]] = {lab: [] for lab in range(1, k + 1)}
    for name in chord_names(n):
        for _ in range(2):
            lab = rng.randint(1, k)
            order = orders[lab]
            order.insert(rng.randint(0, len(order)), name)
    return ChordDiagram(tuple((lab, tuple(order)) for lab, order in orders.items()))


def random_tree_diagram(n: int, seed: int | random.Random) -> ChordDiagram:
    """A random diagram of degree ``n`` on ``1..n+1`` whose connection graph is a tree."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    vertices = n + 1
    if vertices == 1:
        return ChordDiagram(((1, ()),))
    if vertices == 2:
        edges = [(1, 2)]
    else:
        seq = [rng.randint(1, vertices) for _ in range(vertices - 2)]
        degree = [1] * (vertices + 1)
        for v in seq:
            degree[v] += 1
        edges = []
        for v in seq:
            leaf = min(u for u in range(1, vertices + 1) if degree[u] == 1)
            edges.append((leaf, v))
            degree[leaf] -= 1
            degree[v] -= 1
        u, w = (x for x in range(1, vertices + 1) if degree[x] == 1)
        edges.append((u, w))
    rng.shuffle(edges)
    incident = _orders_for_tree(edges, chord_names(n), vertices)
    for order in incident.values():
        rng.shuffle(order)
    return ChordDiagram(tuple((v, tuple(order)) for v, order in incident.items()))
