import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from milnor_weights.diagram import (
    ChordDiagram,
    DiagramError,
    MuIndex,
    canonical_form,
    canonical_key,
    chord_names,
    enumerate_tree_diagrams,
    labeled_trees,
    parse_diagram,
    random_diagram,
    random_tree_diagram,
    relabel_for_index,
    render_diagram,
    tree_diagram_count,
)
from milnor_weights.graphs import connection_graph, is_tree

C = ChordDiagram.from_orders


def brute_tree_count(n):
    # place n chords on n+1 components in every possible way, keep trees, dedupe
    comps = range(1, n + 2)
    names = chord_names(n)
    seen = set()
    for pairs in itertools.product(itertools.combinations(comps, 2), repeat=n):
        incident = {v: [c for c, p in zip(names, pairs) if v in p] for v in comps}
        for orders in itertools.product(*(itertools.permutations(incident[v]) for v in comps)):
            d = ChordDiagram(tuple(zip(comps, orders)))
            if is_tree(connection_graph(d)):
                seen.add(canonical_key(d))
    return len(seen)


class TestParse:
    def test_minimal(self):
        assert parse_diagram("component 1: a / component 2: a") == C({1: "a", 2: "a"})

    def test_three_components(self):
        d = parse_diagram("component 1: a\ncomponent 2: a b\ncomponent 3: b\n")
        assert d == C({1: "a", 2: "a b", 3: "b"})
        assert d.chord_label("b") == (2, 3)

    def test_name_and_comments(self):
        d = parse_diagram("# comment\ndiagram pair\ncomponent 2: a\ncomponent 1: a\n")
        assert d.name == "pair"
        assert d.labels == (1, 2)

    @pytest.mark.parametrize(
        "text",
        [
            "component 1: a / component 2: a a",
            "component 1: a",
            "component 1: a / component 1: a",
            "component x: a / component 2: a",
            "component 1: a- / component 2: a-",
            "strand 1: a",
        ],
    )
    def test_errors(self, text):
        with pytest.raises(DiagramError):
            parse_diagram(text)

    def test_empty_component_rendered(self):
        text = render_diagram(C({1: "a", 2: "a", 3: ""}))
        assert "component 3:" in text.splitlines()
        assert parse_diagram(text) == C({1: "a", 2: "a", 3: ""})

    def test_round_trip(self):
        d = C({1: "a", 2: "a b", 3: "b"})
        assert parse_diagram(render_diagram(d)) == d


class TestIndex:
    def test_parse(self):
        idx = MuIndex.parse("2,1,3")
        assert idx.leading == (2, 1) and idx.target == 3
        assert str(idx) == "2,1,3"

    def test_standard(self):
        assert MuIndex.standard(3) == MuIndex((1, 2, 3), 4)

    def test_repeated(self):
        with pytest.raises(ValueError):
            MuIndex((1, 1), 2)

    def test_relabel(self):
        d = C({2: "a", 1: "a b", 3: "b"})
        assert relabel_for_index(d, MuIndex((2, 1), 3)) == C({1: "a", 2: "a b", 3: "b"})

    def test_relabel_identity(self):
        d = C({1: "a", 2: "a"})
        assert relabel_for_index(d, MuIndex((1,), 2)) == d

    def test_relabel_outside_index(self):
        assert relabel_for_index(C({1: "a", 4: "a"}), MuIndex((1, 2), 3)) is None


class TestEnumeration:
    def test_degree_one(self):
        assert list(enumerate_tree_diagrams(1)) == [C({1: "a", 2: "a"})]

    @pytest.mark.parametrize("n,expected", [(0, 1), (1, 1), (2, 6), (3, 72), (4, 1320)])
    def test_counts(self, n, expected):
        got = list(enumerate_tree_diagrams(n))
        assert len(got) == expected == tree_diagram_count(n)
        assert len({canonical_key(d) for d in got}) == expected

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_count_formula(self, n):
        assert tree_diagram_count(n) == brute_tree_count(n)

    def test_all_trees(self):
        for d in enumerate_tree_diagrams(3):
            assert is_tree(connection_graph(d))
            assert d.labels == (1, 2, 3, 4)

    def test_prufer_counts(self):
        assert [sum(1 for _ in labeled_trees(v)) for v in range(2, 6)] == [1, 3, 16, 125]


class TestRandom:
    def test_empty(self):
        assert random_diagram(0, 2, 7) == C({1: "", 2: ""})

    def test_deterministic(self):
        assert random_diagram(2, 2, 11) == random_diagram(2, 2, 11)
        assert random_tree_diagram(5, 3) == random_tree_diagram(5, 3)

    def test_tree_and_non_tree_both_occur(self):
        trees = sum(is_tree(connection_graph(random_diagram(5, 6, s))) for s in range(1000))
        assert 0 < trees < 1000

    @given(st.integers(1, 8), st.integers(0, 10_000))
    def test_random_tree_is_tree(self, n, seed):
        d = random_tree_diagram(n, seed)
        assert d.degree == n and is_tree(connection_graph(d))


class TestCanonical:
    def test_names_irrelevant(self):
        assert canonical_key(C({1: "a", 2: "a"})) == canonical_key(C({1: "z", 2: "z"}))

    def test_orders_matter(self):
        assert canonical_key(C({1: "a", 2: "a b", 3: "b"})) != canonical_key(C({1: "a", 2: "b a", 3: "b"}))

    def test_chord_names(self):
        assert chord_names(0) == []
        names = chord_names(30)
        assert len(set(names)) == 30 and names[0] == "a"

    @settings(max_examples=50)
    @given(st.integers(0, 6), st.integers(2, 6), st.integers(0, 10_000))
    def test_canonical_idempotent_and_render_round_trip(self, n, k, seed):
        d = random_diagram(n, k, seed)
        c = canonical_form(d)
        assert canonical_form(c) == c
        assert parse_diagram(render_diagram(d)) == d
        rng = random.Random(seed)
        rename = dict(zip(d.chords, rng.sample(chord_names(40), len(d.chords))))
        renamed = ChordDiagram(tuple((lab, tuple(rename[x] for x in o)) for lab, o in d.components))
        assert canonical_key(renamed) == canonical_key(d)
