"""String-link diagrams as Gauss codes, their singular versions and realizations.

File format::

    stringlink hopf
    strand 1: u x+ o y+
    strand 2: o x+ u y+

A passage is ``o<id><sign>`` (over), ``u<id><sign>`` (under) or ``s<id>``
(one branch of a double point); the role letter may also stand apart from
the id.  Strands run bottom to top; their labels give their left-to-right
positions.
"""

from __future__ import annotations

import graphlib
import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .diagram import ChordDiagram

__all__ = [
    "GaussCodeError",
    "Passage",
    "StringLinkDiagram",
    "SingularResolution",
    "parse_gauss",
    "render_gauss",
    "switch_crossing",
    "realize",
    "resolutions",
    "crossing_sign",
    "LinkBuilder",
    "random_string_link",
    "hopf_clasp",
    "borromean_commutator",
]

_PASSAGE = re.compile(r"^([ous])([\w.]+?)([+\-−]?)$")


class GaussCodeError(ValueError):
    """Raised for malformed or inconsistent Gauss codes."""


@dataclass(frozen=True)
class Passage:
    role: str  # "o", "u" or "s"
    crossing: str
    sign: int = 0  # +-1 for real crossings, 0 at double points

    def __str__(self) -> str:
        if self.role == "s":
            return f"s {self.crossing}"
        return f"{self.role} {self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class StringLinkDiagram:
    strands: tuple[tuple[int, tuple[Passage, ...]], ...]
    name: str | None = None

    def __post_init__(self) -> None:
        strands = tuple(sorted((int(lab), tuple(ps)) for lab, ps in self.strands))
        labels = [lab for lab, _ in strands]
        if len(set(labels)) != len(labels):
            raise GaussCodeError(f"duplicate strand label in {labels}")
        seen: dict[str, list[tuple[int, Passage]]] = {}
        for lab, ps in strands:
            for p in ps:
                if p.role not in "ous" or len(p.role) != 1:
                    raise GaussCodeError(f"bad passage role {p.role!r}")
                if p.role == "s" and p.sign != 0:
                    raise GaussCodeError(f"double point {p.crossing} carries a sign")
                if p.role != "s" and p.sign not in (1, -1):
                    raise GaussCodeError(f"crossing {p.crossing} needs a sign")
                seen.setdefault(p.crossing, []).append((lab, p))
        for cid, occ in seen.items():
            if len(occ) != 2:
                raise GaussCodeError(f"crossing {cid} appears {len(occ)} times, expected 2")
            roles = sorted(p.role for _, p in occ)
            if roles == ["s", "s"]:
                continue
            if roles != ["o", "u"]:
                raise GaussCodeError(f"crossing {cid} has roles {roles}; need one over and one under")
            if occ[0][1].sign != occ[1][1].sign:
                raise GaussCodeError(f"crossing {cid} has mismatched signs")
        object.__setattr__(self, "strands", strands)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StringLinkDiagram):
            return NotImplemented
        return self.strands == other.strands

    def __hash__(self) -> int:
        return hash(self.strands)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(lab for lab, _ in self.strands)

    def passages(self, label: int) -> tuple[Passage, ...]:
        return dict(self.strands)[label]

    @property
    def crossings(self) -> dict[str, tuple[tuple[int, Passage], tuple[int, Passage]]]:
        found: dict[str, list[tuple[int, Passage]]] = {}
        for lab, ps in self.strands:
            for p in ps:
                found.setdefault(p.crossing, []).append((lab, p))
        return {c: (v[0], v[1]) for c, v in found.items()}

    @property
    def singular(self) -> tuple[str, ...]:
        return tuple(c for c, ((_, p), _) in self.crossings.items() if p.role == "s")

    def chord_diagram(self) -> ChordDiagram:
        """Double points read along each strand (ids become chord names)."""
        return ChordDiagram(tuple(
            (lab, tuple(p.crossing.replace(".", "_") for p in ps if p.role == "s"))
            for lab, ps in self.strands
        ))


@dataclass(frozen=True)
class SingularResolution:
    assignment: dict
    coefficient: int
    resolved: StringLinkDiagram


def _tokens(body: str) -> Iterator[str]:
    parts = body.split()
    i = 0
    while i < len(parts):
        tok = parts[i]
        if tok in ("o", "u", "s") and i + 1 < len(parts):
            yield tok + parts[i + 1]
            i += 2
        else:
            yield tok
            i += 1


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        for piece in raw.split(" / "):
            yield lineno, piece.strip()


def parse_gauss(text: str) -> StringLinkDiagram:
    name = None
    strands: dict[int, tuple[Passage, ...]] = {}
    for lineno, line in _lines(text):
        if not line or line.startswith("#"):
            continue
        if line.split()[0] == "stringlink":
            name = line.partition(" ")[2].strip() or None
            continue
        m = re.match(r"^strand\s+(\d+)\s*:(.*)$", line)
        if not m:
            raise GaussCodeError(f"line {lineno}: cannot parse {line!r}")
        label = int(m.group(1))
        if label in strands:
            raise GaussCodeError(f"line {lineno}: duplicate strand {label}")
        passages = []
        for tok in _tokens(m.group(2)):
            pm = _PASSAGE.match(tok)
            if not pm:
                raise GaussCodeError(f"line {lineno}: bad passage {tok!r}")
            role, cid, sign = pm.groups()
            if role == "s":
                if sign:
                    raise GaussCodeError(f"line {lineno}: double point {cid} takes no sign")
                passages.append(Passage("s", cid))
            else:
                if not sign:
                    raise GaussCodeError(f"line {lineno}: crossing {cid} needs a sign")
                passages.append(Passage(role, cid, 1 if sign == "+" else -1))
        strands[label] = tuple(passages)
    return StringLinkDiagram(tuple(strands.items()), name)


def render_gauss(link: StringLinkDiagram) -> str:
    lines = [f"stringlink {link.name}"] if link.name else []
    for lab, ps in link.strands:
        lines.append(f"strand {lab}: {' '.join(map(str, ps))}".rstrip())
    return "\n".join(lines) + "\n"


def switch_crossing(link: StringLinkDiagram, crossing: str) -> StringLinkDiagram:
    """Crossing change: swap over/under and negate the sign."""
    flip = {"o": "u", "u": "o"}
    found = False
    strands = []
    for lab, ps in link.strands:
        new = []
        for p in ps:
            if p.crossing == crossing:
                if p.role == "s":
                    raise GaussCodeError(f"{crossing} is a double point")
                found = True
                p = Passage(flip[p.role], crossing, -p.sign)
            new.append(p)
        strands.append((lab, tuple(new)))
    if not found:
        raise GaussCodeError(f"unknown crossing {crossing!r}")
    return StringLinkDiagram(tuple(strands), link.name)


def resolutions(link: StringLinkDiagram) -> list[SingularResolution]:
    """All ``2**s`` resolutions of the double points.

    ``+1`` puts the first-listed branch over with a positive sign, ``-1`` puts
    it under with a negative sign.
    """
    ids = link.singular
    out = []
    for signs in itertools.product((1, -1), repeat=len(ids)):
        assignment = dict(zip(ids, signs))
        first_done: set[str] = set()
        strands = []
        for lab, ps in link.strands:
            new = []
            for p in ps:
                if p.role == "s":
                    e = assignment[p.crossing]
                    is_first = p.crossing not in first_done
                    first_done.add(p.crossing)
                    role = "o" if is_first == (e > 0) else "u"
                    p = Passage(role, p.crossing, e)
                new.append(p)
            strands.append((lab, tuple(new)))
        coefficient = 1
        for e in signs:
            coefficient *= e
        out.append(SingularResolution(assignment, coefficient, StringLinkDiagram(tuple(strands), link.name)))
    return out


def crossing_sign(over_dir: tuple[int, int], under_dir: tuple[int, int]) -> int:
    """+1 when the over direction turned a quarter counterclockwise is the under direction."""
    return 1 if (-over_dir[1], over_dir[0]) == tuple(under_dir) else -1


UP = (0, 1)


def realize(diagram: ChordDiagram) -> StringLinkDiagram:
    """A singular string link whose double points reproduce ``diagram``.

    Chords are laid out bottom to top in an order compatible with every
    component.  For a chord between strands ``a < b``, strand ``a`` runs
    right over each strand in between and back, meeting ``b`` in a double
    point at the far end of the excursion.
    """
    sorter = graphlib.TopologicalSorter({c: set() for c in diagram.chords})
    for _, order in diagram.components:
        for lower, upper in zip(order, order[1:]):
            if lower != upper:
                sorter.add(upper, lower)
    try:
        sequence = list(sorter.static_order())
    except graphlib.CycleError as exc:
        raise ValueError(f"height constraints of {diagram!r} are cyclic; not monotonically realizable") from exc
    labels = list(diagram.labels)
    passages: dict[int, list[Passage]] = {lab: [] for lab in labels}
    for chord in sequence:
        a, b = diagram.chord_label(chord)
        if a == b:
            passages[a] += [Passage("s", chord), Passage("s", chord)]
            continue
        between = [t for t in labels if a < t < b]
        for t in between:
            cid = f"{chord}.{t}f"
            sign = crossing_sign((1, 0), UP)
            passages[a].append(Passage("o", cid, sign))
            passages[t].append(Passage("u", cid, sign))
        passages[a].append(Passage("s", chord))
        passages[b].append(Passage("s", chord))
        for t in reversed(between):
            cid = f"{chord}.{t}r"
            sign = crossing_sign((-1, 0), UP)
            passages[a].append(Passage("o", cid, sign))
            passages[t].append(Passage("u", cid, sign))
    return StringLinkDiagram(tuple((lab, tuple(ps)) for lab, ps in passages.items()))


class LinkBuilder:
    """Stack planar pieces (excursions and kinks) into a genuine string-link diagram.

    Every crossing gets its sign from the geometry, so any over/under choice
    yields a valid diagram.
    """

    def __init__(self, labels: Sequence[int]):
        self.labels = sorted(labels)
        self.passages: dict[int, list[Passage]] = {lab: [] for lab in self.labels}
        self.eligible: list[str] = []  # crossings whose first-listed branch over is positive
        self._count = 0

    def _fresh(self) -> str:
        self._count += 1
        return f"x{self._count}"

    def cross(self, mover: int, mover_dir, other: int, mover_over: bool) -> str:
        cid = self._fresh()
        if mover_over:
            sign = crossing_sign(mover_dir, UP)
        else:
            sign = crossing_sign(UP, mover_dir)
        self.passages[mover].append(Passage("o" if mover_over else "u", cid, sign))
        self.passages[other].append(Passage("u" if mover_over else "o", cid, sign))
        first_dir = mover_dir if mover < other else UP
        second_dir = UP if mover < other else mover_dir
        if crossing_sign(first_dir, second_dir) == 1:
            self.eligible.append(cid)
        return cid

    def excursion(self, a: int, b: int, overs: Sequence[bool]) -> list[str]:
        """Strand ``a`` travels sideways past ``b`` and back, the clasp with ``b`` in the middle.

        ``overs`` gives, crossing by crossing along ``a``, whether ``a`` is on top.
        """
        step = 1 if b > a else -1
        between = [t for t in self.labels if min(a, b) < t < max(a, b)]
        if step < 0:
            between.reverse()
        plan = [(t, (step, 0)) for t in between]
        plan += [(b, (step, 0)), (b, (-step, 0))]
        plan += [(t, (-step, 0)) for t in reversed(between)]
        if len(overs) != len(plan):
            raise ValueError(f"need {len(plan)} over/under choices")
        return [self.cross(a, d, t, over) for (t, d), over in zip(plan, overs)]

    def kink(self, strand: int, first_over: bool) -> str:
        cid = self._fresh()
        self.passages[strand].append(Passage("o" if first_over else "u", cid, 1 if first_over else -1))
        self.passages[strand].append(Passage("u" if first_over else "o", cid, 1 if first_over else -1))
        self.eligible.append(cid)
        return cid

    def build(self, singular: Sequence[str] = (), name: str | None = None) -> StringLinkDiagram:
        singular = set(singular)
        if not singular <= set(self.eligible):
            raise ValueError("only eligible crossings can become double points")
        strands = []
        for lab in self.labels:
            strands.append((lab, tuple(Passage("s", p.crossing) if p.crossing in singular else p
                                       for p in self.passages[lab])))
        return StringLinkDiagram(tuple(strands), name)


def random_string_link(
    strands: int,
    pieces: int,
    seed: int | random.Random,
    singular: int = 0,
    kinks: float = 0.2,
    max_crossings: int | None = None,
) -> StringLinkDiagram:
    """Random genuine string link on ``1..strands`` built from excursions and kinks.

    ``singular`` eligible crossings are turned into double points.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    builder = LinkBuilder(range(1, strands + 1))
    total = 0
    for _ in range(pieces):
        if strands < 2 or rng.random() < kinks:
            builder.kink(rng.randint(1, strands), rng.random() < 0.5)
            total += 1
        else:
            a, b = rng.sample(range(1, strands + 1), 2)
            size = 2 * abs(a - b)
            if max_crossings is not None and total + size > max_crossings:
                continue
            builder.excursion(a, b, [rng.random() < 0.5 for _ in range(size)])
            total += size
    if singular > len(builder.eligible):
        raise ValueError("not enough eligible crossings for the requested double points")
    chosen = rng.sample(builder.eligible, singular)
    return builder.build(chosen)


def hopf_clasp() -> StringLinkDiagram:
    return parse_gauss("strand 1: u x+ o y+\nstrand 2: o x+ u y+\n")


def _clasp(builder: LinkBuilder, a: int, b: int, sign: int) -> None:
    """Clasp of ``a`` around ``b`` with both crossings of sign ``sign``; ``a`` over anything between."""
    step = 1 if b > a else -1
    between = abs(a - b) - 1
    overs = [True] * between
    for d in ((step, 0), (-step, 0)):
        overs.append(crossing_sign(d, UP) == sign)
    overs += [True] * between
    builder.excursion(a, b, overs)


def borromean_commutator() -> StringLinkDiagram:
    """``A13 A23 A13^-1 A23^-1`` with ``A_ij`` a positive clasp and its inverse the negative one."""
    builder = LinkBuilder([1, 2, 3])
    _clasp(builder, 1, 3, 1)
    _clasp(builder, 2, 3, 1)
    _clasp(builder, 1, 3, -1)
    _clasp(builder, 2, 3, -1)
    return builder.build(name="borromean")
