"""Verification suites cross-checking the evaluators against each other and the oracle.

Every suite is deterministic given its arguments and returns a
:class:`SuiteReport`; failures carry enough text to reproduce them.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .diagram import (
    ChordDiagram,
    MuIndex,
    enumerate_tree_diagrams,
    random_diagram,
    random_tree_diagram,
    render_diagram,
    tree_diagram_count,
)
from .graphs import canonical_graph, connection_graph, intersection_graph, is_tree, reconstruct
from .oracle import finite_type_sum, linking, mu, weight_via_mu
from .stringlink import (
    LinkBuilder,
    borromean_commutator,
    random_string_link,
    realize,
    render_gauss,
    switch_crossing,
)
from .weights import (
    choice_values,
    eval_closed,
    eval_recursive,
    evaluate,
    fourterm_quadruple,
    has_interlaced_pair,
)

__all__ = ["SuiteReport", "SUITES", "run_suite", "inline"]


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: dict[str, object] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def summary(self) -> str:
        extra = "".join(f" {k}={v}" for k, v in self.notes.items())
        return (f"RESULT suite={self.name} checked={self.checked} failures={len(self.failures)}"
                f"{extra} seconds={self.seconds:.2f}")


def inline(diagram: ChordDiagram) -> str:
    """Single-line diagram text (lines joined by `` / ``), re-parsable."""
    return '"' + " / ".join(render_diagram(diagram).strip().splitlines()) + '"'


def _inline_gauss(link) -> str:
    return '"' + " / ".join(render_gauss(link).strip().splitlines()) + '"'


def _exhaustive(max_degree: int):
    for n in range(1, max_degree + 1):
        yield from enumerate_tree_diagrams(n)


def equivalence(degree: int = 4, samples: int = 1000, seed: int = 0) -> SuiteReport:
    """Recursive and closed-form evaluators agree."""
    report = SuiteReport("equivalence")
    rng = random.Random(seed)

    def check(d: ChordDiagram) -> None:
        r, c = eval_recursive(d), eval_closed(d)
        report.checked += 1
        if r != c:
            report.fail(f"FAIL suite=equivalence recursive={r} closed={c} diagram={inline(d)}")

    for n in range(1, degree + 1):
        count = 0
        for d in enumerate_tree_diagrams(n):
            check(d)
            count += 1
        if count != tree_diagram_count(n):
            report.fail(f"FAIL suite=equivalence enumeration degree={n} got={count} "
                        f"expected={tree_diagram_count(n)}")
    for i in range(samples):
        n = rng.randint(5, 7)
        d = random_tree_diagram(n, rng) if i % 2 else random_diagram(n, n + 1, rng)
        check(d)
    return report


def _random_index_relabel(d: ChordDiagram, rng: random.Random) -> tuple[ChordDiagram, MuIndex]:
    labels = list(d.labels)
    perm = labels[:]
    rng.shuffle(perm)
    moved = d.relabeled(dict(zip(labels, perm)))
    return moved, MuIndex(tuple(perm[:-1]), perm[-1])


def oracle(degree: int = 4, samples: int = 200, seed: int = 0) -> SuiteReport:
    """Evaluators agree with the Magnus-expansion oracle on realized diagrams."""
    report = SuiteReport("oracle")
    rng = random.Random(seed)

    def check(d: ChordDiagram, idx: MuIndex) -> None:
        expected = weight_via_mu(d, idx)
        got = {m: evaluate(d, idx, m) for m in ("recursive", "closed")}
        report.checked += 1
        if any(v != expected for v in got.values()):
            report.fail(f"FAIL suite=oracle oracle={expected} recursive={got['recursive']} "
                        f"closed={got['closed']} index={idx} diagram={inline(d)}")

    for d in _exhaustive(min(degree, 3)):
        n = d.degree
        check(d, MuIndex.standard(n))
        check(*_random_index_relabel(d, rng))
    if degree >= 4:
        done = 0
        while done < samples:
            n = degree
            if done % 4 == 3:
                d = random_diagram(n, n + 1, rng)
                try:
                    realize(d)
                except ValueError:
                    continue
            else:
                d = random_tree_diagram(n, rng)
            check(*_random_index_relabel(d, rng))
            done += 1
    return report


def fourterm(degree: int = 5, samples: int = 500, seed: int = 0) -> SuiteReport:
    """Signed 4T quadruples of the recursive evaluator sum to zero."""
    report = SuiteReport("fourterm")
    rng = random.Random(seed)
    nonzero = 0
    while report.checked < samples:
        n = rng.randint(2, degree)
        d = random_tree_diagram(n, rng) if rng.random() < 0.75 else random_diagram(n, n + 1, rng)
        moving, fixed = rng.sample(d.chords, 2)
        # prefer freeing an endpoint on a component that ``fixed`` touches,
        # otherwise every placement changes the connection graph
        near = [e for e in d.endpoints[moving] if e[0] in d.chord_label(fixed)]
        drop = rng.choice(near if near and rng.random() < 0.8 else d.endpoints[moving])
        base = {lab: [c for pos, c in enumerate(order) if (lab, pos) != drop] for lab, order in d.components}
        terms = [(s, eval_recursive(q)) for s, q in fourterm_quadruple(base, moving, fixed)]
        total = sum(s * v for s, v in terms)
        nonzero += any(v for _, v in terms)
        report.checked += 1
        if total:
            report.fail(f"FAIL suite=fourterm sum={total} moving={moving} fixed={fixed} diagram={inline(d)}")
    report.notes["nonzero_terms"] = nonzero
    return report


def finitetype(degree: int = 4, samples: int = 100, seed: int = 0) -> SuiteReport:
    """``mu`` with ``n`` leading indices vanishes on links with ``n+1`` double points."""
    report = SuiteReport("finitetype")
    rng = random.Random(seed)
    while report.checked < samples:
        n = rng.randint(1, degree)
        strands = rng.randint(n + 1, n + 2)
        try:
            link = random_string_link(strands, rng.randint(n + 2, n + 6), rng, singular=n + 1)
        except ValueError:  # too few eligible crossings; draw again
            continue
        labels = rng.sample(range(1, strands + 1), n + 1)
        idx = MuIndex(tuple(labels[:-1]), labels[-1])
        value = finite_type_sum(link, idx)
        report.checked += 1
        if value:
            report.fail(f"FAIL suite=finitetype sum={value} index={idx} link={_inline_gauss(link)}")
    return report


def gamma(degree: int = 4, samples: int = 2000, seed: int = 0) -> SuiteReport:
    """Reconstruction from the intersection graph, and one value per graph."""
    report = SuiteReport("gamma")
    rng = random.Random(seed)
    for d in _exhaustive(degree):
        report.checked += 1
        try:
            back = reconstruct(intersection_graph(d))
        except ValueError as exc:
            report.fail(f"FAIL suite=gamma reconstruct-error={exc!s} diagram={inline(d)}")
            continue
        if back != d:
            report.fail(f"FAIL suite=gamma reconstructed={inline(back)} diagram={inline(d)}")
    groups: dict = {}
    pool = list(_exhaustive(degree))
    for _ in range(samples):
        n = rng.randint(2, min(degree, 4))
        pool.append(random_diagram(n, n + 1, rng))
    for d in pool:
        groups.setdefault(canonical_graph(intersection_graph(d), d), []).append(d)
    shared = 0
    for members in groups.values():
        values = {eval_recursive(d) for d in members}
        report.checked += 1
        if len(members) > 1:
            shared += 1
        if len(values) > 1:
            report.fail("FAIL suite=gamma values=" + ",".join(map(str, sorted(values)))
                        + " diagrams=" + ";".join(inline(d) for d in members))
    report.notes["multi_member_groups"] = shared
    return report


def chordchoice(degree: int = 4, samples: int = 0, seed: int = 0) -> SuiteReport:
    """Every admissible chord on the top component gives the same recursive value."""
    report = SuiteReport("chordchoice")
    for d in _exhaustive(degree):
        values = choice_values(d)
        report.checked += 1
        if len(set(values.values()) | {eval_recursive(d)}) > 1:
            detail = ",".join(f"{c}:{v}" for c, v in values.items())
            report.fail(f"FAIL suite=chordchoice values={detail} diagram={inline(d)}")
    return report


def skeinbase(degree: int = 0, samples: int = 100, seed: int = 0) -> SuiteReport:
    """``mu_{i,j}(L+) - mu_{i,j}(L-) = 1`` at a crossing of strands ``i`` and ``j``."""
    report = SuiteReport("skeinbase")
    rng = random.Random(seed)
    while report.checked < samples:
        strands = rng.randint(2, 6)
        link = random_string_link(strands, rng.randint(1, 8), rng, max_crossings=20)
        between = [c for c, ((a, _), (b, _)) in link.crossings.items() if a != b]
        if not between:
            continue
        cid = rng.choice(between)
        (a, p), (b, _) = link.crossings[cid]
        plus = link if p.sign > 0 else switch_crossing(link, cid)
        minus = switch_crossing(plus, cid)
        report.checked += 1
        for idx in (MuIndex((a,), b), MuIndex((b,), a)):
            diff = mu(plus, idx) - mu(minus, idx)
            if diff != 1:
                report.fail(f"FAIL suite=skeinbase difference={diff} crossing={cid} index={idx} "
                            f"link={_inline_gauss(plus)}")
    return report


def vanishing(degree: int = 4, samples: int = 100, seed: int = 0) -> SuiteReport:
    """Point values: single chords give 1; interlacing, non-trees, self-chords give 0."""
    report = SuiteReport("vanishing")
    rng = random.Random(seed)

    def expect(d: ChordDiagram, value: int, why: str) -> None:
        got = (eval_recursive(d), eval_closed(d))
        report.checked += 1
        if got != (value, value):
            report.fail(f"FAIL suite=vanishing case={why} expected={value} recursive={got[0]} "
                        f"closed={got[1]} diagram={inline(d)}")

    expect(ChordDiagram.from_orders({1: "a", 2: "a"}), 1, "single-chord")
    interlaced = 0
    for d in _exhaustive(degree):
        if has_interlaced_pair(d):
            interlaced += 1
            expect(d, 0, "interlace")
    report.notes["interlaced"] = interlaced
    found = 0
    while found < samples:
        n = rng.randint(2, max(2, degree + 1))
        d = random_diagram(n, n + 1, rng)
        if is_tree(connection_graph(d)):
            continue
        found += 1
        expect(d, 0, "non-tree")
    for _ in range(samples):
        n = rng.randint(1, max(1, degree))
        d = random_tree_diagram(n, rng)
        # move one endpoint of a chord onto the component of its other endpoint
        chord = rng.choice(d.chords)
        (c1, p1), (c2, _) = d.endpoints[chord]
        orders = {lab: list(o) for lab, o in d.components}
        orders[c2].remove(chord)
        orders[c1].insert(rng.randint(0, len(orders[c1])), chord)
        expect(ChordDiagram(tuple((k, tuple(v)) for k, v in orders.items())), 0, "same-component")
    return report


def coherence(degree: int = 0, samples: int = 200, seed: int = 0) -> SuiteReport:
    """Oracle self-consistency: linking numbers, the Borromean commutator, all-over strands."""
    report = SuiteReport("coherence")
    rng = random.Random(seed)
    for _ in range(samples):
        strands = rng.randint(2, 6)
        link = random_string_link(strands, rng.randint(1, 8), rng, max_crossings=20)
        i, j = rng.sample(range(1, strands + 1), 2)
        lk, m = linking(link, i, j), mu(link, MuIndex((i,), j))
        report.checked += 1
        if lk != m:
            report.fail(f"FAIL suite=coherence linking={lk} mu={m} i={i} j={j} link={_inline_gauss(link)}")
    borr = borromean_commutator()
    value = mu(borr, MuIndex((1, 2), 3))
    report.notes["mu_12_3_borromean"] = value
    report.checked += 1
    if abs(value) != 1:
        report.fail(f"FAIL suite=coherence borromean mu={value}")
    for _ in range(samples // 4 or 1):
        strands = rng.randint(3, 6)
        builder = LinkBuilder(range(1, strands + 1))
        j = rng.randint(1, strands)
        for _ in range(rng.randint(1, 6)):
            a, b = rng.sample(range(1, strands + 1), 2)
            size = 2 * abs(a - b)
            overs = [rng.random() < 0.5 for _ in range(size)]
            # strand j goes over at each crossing it takes part in
            between = [t for t in range(1, strands + 1) if min(a, b) < t < max(a, b)]
            others = between if b > a else between[::-1]
            for pos, t in enumerate(others + [b, b] + others[::-1]):
                if a == j:
                    overs[pos] = True
                elif t == j:
                    overs[pos] = False
            builder.excursion(a, b, overs)
        link = builder.build()
        rest = [lab for lab in range(1, strands + 1) if lab != j]
        lead = tuple(rng.sample(rest, rng.randint(1, len(rest))))
        m = mu(link, MuIndex(lead, j))
        report.checked += 1
        if m:
            report.fail(f"FAIL suite=coherence all-over strand={j} mu={m} link={_inline_gauss(link)}")
    return report


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "equivalence": equivalence,
    "oracle": oracle,
    "fourterm": fourterm,
    "finitetype": finitetype,
    "gamma": gamma,
    "chordchoice": chordchoice,
    "skeinbase": skeinbase,
    "vanishing": vanishing,
    "coherence": coherence,
}

DEFAULTS: dict[str, dict[str, int]] = {
    "equivalence": {"degree": 4, "samples": 1000},
    "oracle": {"degree": 4, "samples": 200},
    "fourterm": {"degree": 5, "samples": 500},
    "finitetype": {"degree": 4, "samples": 100},
    "gamma": {"degree": 4, "samples": 2000},
    "chordchoice": {"degree": 4, "samples": 0},
    "skeinbase": {"degree": 0, "samples": 100},
    "vanishing": {"degree": 4, "samples": 100},
    "coherence": {"degree": 0, "samples": 200},
}


def run_suite(name: str, degree: int | None = None, samples: int | None = None, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    params = dict(DEFAULTS[name])
    if degree is not None:
        params["degree"] = degree
    if samples is not None:
        params["samples"] = samples
    start = time.perf_counter()
    report = SUITES[name](seed=seed, **params)
    report.seconds = time.perf_counter() - start
    return report
