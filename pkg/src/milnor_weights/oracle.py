"""Milnor invariants of string-link diagrams via Wirtinger arcs and the Magnus expansion.

Each strand is cut into arcs at its under-passages.  The bottom arc of strand
``i`` carries the meridian ``1 + K_i``; passing under an arc ``b`` with sign
``e`` conjugates: ``next = b**-e * current * b**e``.  The longitude of strand
``j`` is the product of ``b**e`` over its under-passages, bottom to top, and
``mu_{i_1..i_n, j}`` is the coefficient of ``K_{i_1}...K_{i_n}`` in it.
"""

from __future__ import annotations

from typing import Iterable

from .diagram import ChordDiagram, MuIndex
from .magnus import MagnusSeries
from .stringlink import StringLinkDiagram, realize, resolutions

__all__ = [
    "arc_meridians",
    "longitude",
    "mu",
    "linking",
    "weight_via_mu",
    "finite_type_sum",
]

Arc = tuple[int, int]  # (strand label, arc number from the bottom)


def _structure(link: StringLinkDiagram):
    if link.singular:
        raise ValueError("resolve double points before computing invariants")
    over_arc: dict[str, Arc] = {}
    unders: dict[int, list[tuple[str, int]]] = {}
    for lab, ps in link.strands:
        arc = 0
        unders[lab] = []
        for p in ps:
            if p.role == "u":
                unders[lab].append((p.crossing, p.sign))
                arc += 1
            else:
                over_arc[p.crossing] = (lab, arc)
    return over_arc, unders


def _sweep(arcs: dict[Arc, MagnusSeries], over_arc, unders) -> bool:
    changed = False
    for lab, seq in unders.items():
        current = arcs[lab, 0]
        for n, (cid, sign) in enumerate(seq, 1):
            b = arcs[over_arc[cid]]
            if sign > 0:
                current = b.inverse() * current * b
            else:
                current = b * current * b.inverse()
            if arcs[lab, n] != current:
                changed = True
                arcs[lab, n] = current
    return changed


def arc_meridians(
    link: StringLinkDiagram, max_degree: int, support: Iterable[int] | None = None
) -> dict[Arc, MagnusSeries]:
    """Magnus images of all arc meridians, exact up to ``max_degree``."""
    support = None if support is None else tuple(support)
    over_arc, unders = _structure(link)
    arcs: dict[Arc, MagnusSeries] = {}
    for lab, seq in unders.items():
        gen = MagnusSeries.generator(lab, max_degree, support)
        for n in range(len(seq) + 1):
            arcs[lab, n] = gen
    # each sweep fixes one more degree
    for _ in range(max_degree + 1):
        if not _sweep(arcs, over_arc, unders):
            break
    if _sweep(arcs, over_arc, unders):
        raise RuntimeError("Wirtinger iteration did not stabilise")
    return arcs


def longitude(
    link: StringLinkDiagram, strand: int, max_degree: int, support: Iterable[int] | None = None,
    arcs: dict[Arc, MagnusSeries] | None = None,
) -> MagnusSeries:
    support = None if support is None else tuple(support)
    if arcs is None:
        arcs = arc_meridians(link, max_degree, support)
    over_arc, unders = _structure(link)
    result = MagnusSeries.one(max_degree, support)
    for cid, sign in unders[strand]:
        b = arcs[over_arc[cid]]
        result = result * (b if sign > 0 else b.inverse())
    return result


def mu(link: StringLinkDiagram, index: MuIndex, restrict: bool = True) -> int:
    """``mu_{i_1..i_n, j}(link)``.

    With ``restrict`` the series are truncated to subsequences of the index
    word, which gives the same coefficient far faster.
    """
    n = len(index.leading)
    support = index.leading if restrict else None
    word = index.leading
    if index.target not in link.labels or any(i not in link.labels for i in word):
        raise ValueError(f"index {index} refers to strands not in the link")
    return longitude(link, index.target, n, support).coefficient(word)


def linking(link: StringLinkDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between strands ``i`` and ``j``."""
    total = 0
    count = 0
    for cid, ((a, p), (b, _)) in link.crossings.items():
        if p.role == "s":
            raise ValueError("resolve double points before computing linking numbers")
        if {a, b} == {i, j} and a != b:
            total += p.sign
            count += 1
    if count % 2:
        raise ValueError(f"odd number of crossings between strands {i} and {j}; not a string link")
    return total // 2


def finite_type_sum(link: StringLinkDiagram, index: MuIndex) -> int:
    """Alternating sum of ``mu`` over all resolutions of the double points."""
    return sum(r.coefficient * mu(r.resolved, index) for r in resolutions(link))


def weight_via_mu(diagram: ChordDiagram, index: MuIndex) -> int:
    """Weight of ``diagram`` computed from a singular realization."""
    diagram = diagram.with_components(index.labels)
    return finite_type_sum(realize(diagram), index)
