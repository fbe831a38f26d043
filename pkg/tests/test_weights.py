from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from milnor_weights.diagram import (
    ChordDiagram,
    DiagramError,
    MuIndex,
    enumerate_tree_diagrams,
    random_diagram,
    random_tree_diagram,
)
from milnor_weights.weights import (
    Pieces,
    Zero,
    choice_values,
    eval_closed,
    eval_recursive,
    evaluate,
    fourterm_quadruple,
    has_interlaced_pair,
    split,
)

C = ChordDiagram.from_orders

POINT_VALUES = [
    ({1: "a", 2: "a"}, 1),
    ({1: "a", 2: "a b", 3: "b"}, -1),
    ({1: "a", 2: "b", 3: "a b"}, 1),
    ({1: "a", 2: "b", 3: "b a"}, 0),
    ({1: "a", 2: "b", 3: "a c", 4: "b c"}, 0),
    ({1: "", }, 1),
    ({1: "a a", 2: ""}, 0),
    ({1: "a b", 2: "a b"}, 0),
]

# value histograms over all tree diagrams, frozen from the recursive evaluator
FROZEN_HISTOGRAMS = {
    1: {1: 1},
    2: {-1: 1, 0: 3, 1: 2},
    3: {-1: 6, 0: 59, 1: 7},
    4: {-1: 33, 0: 1253, 1: 34},
}


class TestSplit:
    def test_chain(self):
        got = split(C({1: "a", 2: "a b", 3: "b"}), "b")
        assert got == Pieces(-1, C({1: "a", 2: "a"}), C({3: ""}))
        assert got.value() == -1

    def test_erased(self):
        assert split(C({1: "a", 2: "b a", 3: "b"}), "b") == Zero("erased-endpoint")

    def test_interlace_two_steps(self):
        got = split(C({1: "a", 2: "b", 3: "a c", 4: "b c"}), "c")
        assert isinstance(got, Pieces)
        assert got.value() == 0

    def test_requires_top_chord(self):
        with pytest.raises((DiagramError, ValueError)):
            split(C({1: "a", 2: "a b", 3: "b"}), "a")


@pytest.mark.parametrize("orders,value", POINT_VALUES)
def test_point_values(orders, value):
    d = C(orders)
    assert eval_recursive(d) == value
    assert eval_closed(d) == value


@pytest.mark.parametrize("n", sorted(FROZEN_HISTOGRAMS))
def test_frozen_histograms(n):
    assert dict(Counter(eval_recursive(d) for d in enumerate_tree_diagrams(n))) == FROZEN_HISTOGRAMS[n]


def test_closed_form_with_two_left_members():
    # every good BSIG with L = 2 gives +1
    found = 0
    from milnor_weights.graphs import build_bsig, is_good

    for d in enumerate_tree_diagrams(4):
        b = build_bsig(d)
        if b is not None and is_good(b) and b.left_total == 2:
            found += 1
            assert eval_closed(d) == 1 == eval_recursive(d)
    assert found


class TestEvaluate:
    def test_relabeled_base(self):
        for m in ("recursive", "closed", "oracle"):
            assert evaluate(C({5: "a", 9: "a"}), MuIndex((5,), 9), m) == 1

    def test_swapped_index(self):
        for m in ("recursive", "closed", "oracle"):
            assert evaluate(C({1: "a", 2: "a"}), MuIndex((2,), 1), m) == 1

    def test_outside_index(self):
        assert evaluate(C({1: "a", 4: "a"}), MuIndex((1, 2), 3)) == 0

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            evaluate(C({1: "a", 2: "a"}), MuIndex((1,), 2), "guess")


class TestInterlace:
    def test_true(self):
        assert has_interlaced_pair(C({1: "a", 2: "b", 3: "a", 4: "b"}))

    def test_shared_label(self):
        assert not has_interlaced_pair(C({1: "a", 2: "a b", 3: "b"}))

    def test_nested(self):
        assert not has_interlaced_pair(C({1: "a", 2: "b", 3: "b", 4: "a"}))


class TestFourTerm:
    def test_quadruple_shape(self):
        quad = fourterm_quadruple({1: "c", 2: "a", 3: "a"}, "c", "a")
        assert [s for s, _ in quad] == [1, -1, 1, -1]
        assert [(q.order(2), q.order(3)) for _, q in quad] == [
            (("c", "a"), ("a",)),
            (("a", "c"), ("a",)),
            (("a",), ("c", "a")),
            (("a",), ("a", "c")),
        ]

    def test_members_differ_in_one_endpoint(self):
        quad = fourterm_quadruple({1: "a", 2: "b", 3: "b x", 4: "x"}, "a", "b")
        stripped = [{lab: tuple(x for x in o if x != "a") for lab, o in q.orders.items()} for _, q in quad]
        assert all(s == stripped[0] for s in stripped)
        assert all(sum(o.count("a") for o in q.orders.values()) == 2 for _, q in quad)

    def test_same_component_degenerate(self):
        # free endpoint of c lives next to component 1, where c's other endpoint already is
        quad = fourterm_quadruple({1: "c a", 2: "a"}, "c", "a")
        values = [eval_recursive(q) for _, q in quad[:2]]
        assert values == [0, 0]
        assert sum(s * eval_recursive(q) for s, q in quad) == 0

    def test_errors(self):
        with pytest.raises(DiagramError):
            fourterm_quadruple({1: "a", 2: "a"}, "a", "a")
        with pytest.raises(DiagramError):
            fourterm_quadruple({1: "a c", 2: "a c"}, "c", "a")


class TestProperties:
    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 7), st.integers(0, 100_000))
    def test_methods_agree_on_trees(self, n, seed):
        d = random_tree_diagram(n, seed)
        assert eval_recursive(d) == eval_closed(d)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 6), st.integers(1, 7), st.integers(0, 100_000))
    def test_range_and_agreement(self, n, k, seed):
        d = random_diagram(n, k, seed)
        r = eval_recursive(d)
        assert r in (-1, 0, 1)
        assert r == eval_closed(d)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(2, 7), st.integers(0, 100_000))
    def test_interlaced_implies_zero(self, n, seed):
        d = random_tree_diagram(n, seed)
        if has_interlaced_pair(d):
            assert eval_recursive(d) == 0

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 7), st.integers(0, 100_000))
    def test_choice_independence(self, n, seed):
        d = random_tree_diagram(n, seed)
        assert set(choice_values(d).values()) <= {eval_recursive(d)}


def test_fourterm_signs_are_not_arbitrary():
    # the alternative (+above, -below, -above, +below) ordering breaks the relation
    import random

    rng = random.Random(0)
    ours = other = 0
    for _ in range(300):
        d = random_tree_diagram(rng.randint(2, 5), rng)
        moving, fixed = rng.sample(d.chords, 2)
        drop = rng.choice(d.endpoints[moving])
        base = {lab: [c for pos, c in enumerate(o) if (lab, pos) != drop] for lab, o in d.components}
        quad = fourterm_quadruple(base, moving, fixed)
        vals = [eval_recursive(q) for _, q in quad]
        ours += sum(s * v for (s, _), v in zip(quad, vals)) != 0
        other += (-vals[0] + vals[1] + vals[2] - vals[3]) != 0
    assert ours == 0
    assert other > 0
