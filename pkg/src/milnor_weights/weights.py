"""Milnor weight systems ``M_{1..n, n+1}`` on chord diagrams.

Two evaluators:

* :func:`eval_recursive` splits the diagram at a chord between some
  component ``k`` and the top component ``n+1``.  The part below the chord on
  the top component, followed by the part below it on ``k`` traversed
  downwards, becomes the new component ``k`` of one factor; the part below it
  on ``k`` followed by the part above it on the top component becomes the new
  top component of the other factor.  Chords touching components ``< k`` go
  to the first factor, all others to the second.
* :func:`eval_closed` reads the value off the branched simplified
  intersection graph: ``(-1)**L`` when it exists and is good, else 0.

The recursive evaluator is the reference; the closed form must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Mapping, Sequence, Union

from .diagram import ChordDiagram, DiagramError, MuIndex, canonical_form, relabel_for_index
from .graphs import build_bsig, connection_graph, is_good, is_tree

__all__ = [
    "Zero",
    "Pieces",
    "SplitResult",
    "split",
    "eval_recursive",
    "eval_closed",
    "choice_values",
    "evaluate",
    "has_interlaced_pair",
    "fourterm_quadruple",
    "METHODS",
]

METHODS = ("recursive", "closed", "oracle")


@dataclass(frozen=True)
class Zero:
    reason: Literal["erased-endpoint", "size-mismatch", "out-of-range-endpoint"]


@dataclass(frozen=True)
class Pieces:
    sign: int
    d_inf: ChordDiagram  # components 1..k
    d_zero: ChordDiagram  # components k+1..n+1

    def value(self) -> int:
        return self.sign * eval_recursive(self.d_inf) * eval_recursive(_shift_down(self.d_zero))


SplitResult = Union[Zero, Pieces]


def _shift_down(diagram: ChordDiagram) -> ChordDiagram:
    low = min(diagram.labels)
    return diagram.relabeled({lab: lab - low + 1 for lab in diagram.labels})


def split(diagram: ChordDiagram, chord: str) -> SplitResult:
    """Split at ``chord``, which joins some component ``k`` to the top component."""
    top = max(diagram.labels)
    (c1, p1), (c2, p2) = diagram.endpoints[chord]
    if c1 == c2:
        raise ValueError(f"chord {chord} has both endpoints on component {c1}")
    if top not in (c1, c2):
        raise ValueError(f"chord {chord} does not touch the top component {top}")
    k, p = (c1, p1) if c2 == top else (c2, p2)
    q = p2 if c2 == top else p1
    order_k, order_top = diagram.order(k), diagram.order(top)
    lower_k, upper_k = order_k[:p], order_k[p + 1:]
    lower_top, upper_top = order_top[:q], order_top[q + 1:]

    in_j = {
        x for x in diagram.chords
        if x != chord and any(comp < k for comp, _ in diagram.endpoints[x])
    }
    for x in diagram.chords:
        if x == chord:
            continue
        if x in in_j:
            if x in upper_k or x in upper_top:
                return Zero("erased-endpoint")
        elif x in upper_k or x in lower_top:
            return Zero("erased-endpoint")
    for x in in_j:
        if any(k < comp < top for comp, _ in diagram.endpoints[x]):
            return Zero("out-of-range-endpoint")
    if len(in_j) != k - 1:
        return Zero("size-mismatch")

    merged_inf = tuple(x for x in lower_top + lower_k[::-1] if x in in_j)
    merged_zero = tuple(x for x in lower_k + upper_top if x not in in_j)
    d_inf = [(lab, diagram.order(lab)) for lab in range(1, k)]
    d_inf.append((k, merged_inf))
    d_zero = [(lab, diagram.order(lab)) for lab in range(k + 1, top)]
    d_zero.append((top, merged_zero))
    flips = sum(1 for x in lower_k if x in in_j)
    return Pieces((-1) ** flips, ChordDiagram(tuple(d_inf)), ChordDiagram(tuple(d_zero)))


def _complete(diagram: ChordDiagram) -> ChordDiagram:
    if not diagram.labels:
        return diagram
    return diagram.with_components(range(1, max(diagram.labels) + 1))


def _admissible(diagram: ChordDiagram) -> bool:
    """Cheap conditions under which the value is certainly 0 fail."""
    m = len(diagram.labels)
    if m == 0 or diagram.degree != m - 1:
        return False
    if any(i == j for i, j in map(diagram.chord_label, diagram.chords)):
        return False
    return m == 1 or is_tree(connection_graph(diagram))


def eval_recursive(diagram: ChordDiagram) -> int:
    diagram = _complete(diagram)
    if not _admissible(diagram):
        return 0
    return _eval_canonical(canonical_form(diagram))


@lru_cache(maxsize=None)
def _eval_canonical(diagram: ChordDiagram) -> int:
    top = len(diagram.labels)
    if top == 1:
        return 1
    # lowest chord on the top component
    result = split(diagram, diagram.order(top)[0])
    return 0 if isinstance(result, Zero) else result.value()


def choice_values(diagram: ChordDiagram) -> dict[str, int]:
    """Recursive value obtained by splitting at each chord on the top component."""
    diagram = _complete(diagram)
    if not _admissible(diagram) or len(diagram.labels) == 1:
        return {}
    out = {}
    for chord in dict.fromkeys(diagram.order(max(diagram.labels))):
        result = split(diagram, chord)
        out[chord] = 0 if isinstance(result, Zero) else result.value()
    return out


def eval_closed(diagram: ChordDiagram) -> int:
    diagram = _complete(diagram)
    if not _admissible(diagram):
        return 0
    if len(diagram.labels) == 1:
        return 1
    bsig = build_bsig(diagram)
    if bsig is None or not is_good(bsig):
        return 0
    return (-1) ** bsig.left_total


def evaluate(diagram: ChordDiagram, index: MuIndex, method: str = "recursive") -> int:
    """``M_{i_1..i_n, j}(diagram)`` by the chosen method."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "oracle":
        from .oracle import weight_via_mu

        if relabel_for_index(diagram, index) is None:
            return 0
        return weight_via_mu(diagram, index)
    relabeled = relabel_for_index(diagram, index)
    if relabeled is None:
        return 0
    if method == "recursive":
        return eval_recursive(relabeled)
    return eval_closed(relabeled)


def has_interlaced_pair(diagram: ChordDiagram) -> bool:
    """Chords ``{i, j}`` and ``{k, l}`` with ``i < k < j < l``."""
    pairs = [diagram.chord_label(c) for c in diagram.chords]
    return any(i < k < j < l for i, j in pairs for k, l in pairs)


def fourterm_quadruple(
    base: Mapping[int, str | Sequence[str]], moving: str, fixed: str
) -> list[tuple[int, ChordDiagram]]:
    """Four signed placements of the free endpoint of ``moving`` around ``fixed``.

    ``base`` gives endpoint orders in which ``moving`` occurs once.  The free
    endpoint is placed immediately below and above each endpoint of ``fixed``
    (endpoints taken in component/position order), with signs
    ``+below, -above, +below, -above``.
    """
    orders = {lab: list(o.split() if isinstance(o, str) else o) for lab, o in base.items()}
    slots = [(lab, pos) for lab, o in sorted(orders.items()) for pos, c in enumerate(o) if c == fixed]
    if moving == fixed or len(slots) != 2:
        raise DiagramError(f"chord {fixed!r} must have two distinct placed endpoints")
    if sum(o.count(moving) for o in orders.values()) != 1:
        raise DiagramError(f"chord {moving!r} must have exactly one placed endpoint")
    out = []
    for lab, pos in slots:
        for sign, at in ((1, pos), (-1, pos + 1)):
            placed = {k: list(v) for k, v in orders.items()}
            placed[lab].insert(at, moving)
            out.append((sign, ChordDiagram(tuple((k, tuple(v)) for k, v in placed.items()))))
    return out
