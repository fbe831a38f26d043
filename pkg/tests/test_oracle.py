import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from milnor_weights.diagram import ChordDiagram, MuIndex, enumerate_tree_diagrams
from milnor_weights.magnus import MagnusSeries
from milnor_weights.oracle import arc_meridians, finite_type_sum, linking, longitude, mu, weight_via_mu
from milnor_weights.stringlink import (
    LinkBuilder,
    borromean_commutator,
    hopf_clasp,
    parse_gauss,
    random_string_link,
    realize,
)
from milnor_weights.weights import evaluate

C = ChordDiagram.from_orders
TRIVIAL = parse_gauss("strand 1: / strand 2: / strand 3:")

# mu_{p1,p2;p3} of the clasp commutator, frozen from the oracle
BORROMEAN = {
    (1, 2, 3): 1,
    (1, 3, 2): -1,
    (2, 1, 3): -1,
    (2, 3, 1): 1,
    (3, 1, 2): 1,
    (3, 2, 1): -1,
}


def test_trivial_arcs():
    arcs = arc_meridians(TRIVIAL, 3)
    assert arcs == {(i, 0): MagnusSeries.generator(i, 3) for i in (1, 2, 3)}
    for j in (1, 2, 3):
        assert longitude(TRIVIAL, j, 3) == MagnusSeries.one(3)
    assert mu(TRIVIAL, MuIndex((1, 2), 3)) == 0


def test_hopf_top_arc():
    arcs = arc_meridians(hopf_clasp(), 2)
    top = arcs[1, 1]
    assert top.coefficient((1, 2)) == 1 and top.coefficient((2, 1)) == -1


def test_hopf_longitude_and_mu():
    link = hopf_clasp()
    assert longitude(link, 2, 1).coefficient((1,)) == 1
    assert mu(link, MuIndex((1,), 2)) == mu(link, MuIndex((2,), 1)) == 1
    assert linking(link, 1, 2) == 1


def test_singular_rejected():
    with pytest.raises(ValueError):
        mu(realize(C({1: "a", 2: "a"})), MuIndex((1,), 2))


def test_index_outside_link():
    with pytest.raises(ValueError):
        mu(hopf_clasp(), MuIndex((1,), 3))


@pytest.mark.parametrize("perm", sorted(BORROMEAN))
def test_borromean(perm):
    link = borromean_commutator()
    index = MuIndex(perm[:2], perm[2])
    assert mu(link, index) == BORROMEAN[perm]
    assert mu(link, index, restrict=False) == BORROMEAN[perm]
    for i, j in itertools.combinations((1, 2, 3), 2):
        assert linking(link, i, j) == 0


def test_all_over_strand_has_trivial_longitude():
    b = LinkBuilder([1, 2, 3])
    b.excursion(1, 3, [True, True, True, True])  # strand 1 over everything
    b.excursion(2, 3, [False, True])
    link = b.build()
    assert longitude(link, 1, 2) == MagnusSeries.one(2)
    assert mu(link, MuIndex((2, 3), 1)) == 0


def test_kink_does_not_change_mu():
    b = LinkBuilder([1, 2])
    b.excursion(1, 2, [True, False])
    plain = b.build()
    b.kink(1, True)
    b.kink(2, False)
    assert mu(b.build(), MuIndex((1,), 2)) == mu(plain, MuIndex((1,), 2))


class TestWeightViaMu:
    def test_pair(self):
        assert weight_via_mu(C({1: "a", 2: "a"}), MuIndex((1,), 2)) == 1

    def test_chain(self):
        assert weight_via_mu(C({1: "a", 2: "a b", 3: "b"}), MuIndex((1, 2), 3)) == -1

    def test_self_chord(self):
        assert weight_via_mu(C({1: "a a", 2: ""}), MuIndex((1,), 2)) == 0

    def test_exhaustive_degree_two(self):
        for d in enumerate_tree_diagrams(2):
            assert weight_via_mu(d, MuIndex.standard(2)) == evaluate(d, MuIndex.standard(2))

    def test_realization_equals_finite_type_sum(self):
        d = C({1: "a", 2: "b", 3: "a b"})
        assert finite_type_sum(realize(d), MuIndex((1, 2), 3)) == weight_via_mu(d, MuIndex((1, 2), 3)) == 1

    def test_plain_mu_when_no_double_points(self):
        assert finite_type_sum(hopf_clasp(), MuIndex((1,), 2)) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(1, 8), st.integers(0, 10_000))
def test_stabilisation_and_restriction(strands, pieces, seed):
    link = random_string_link(strands, pieces, seed, max_crossings=16)
    n = strands - 1
    arcs = arc_meridians(link, n)
    assert arcs == arc_meridians(link, n)  # deterministic
    index = MuIndex(tuple(range(1, strands)), strands)
    assert mu(link, index) == mu(link, index, restrict=False)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.integers(1, 8), st.integers(0, 10_000))
def test_linking_is_mu(strands, pieces, seed):
    link = random_string_link(strands, pieces, seed, max_crossings=20)
    for i, j in itertools.permutations(range(1, strands + 1), 2):
        assert linking(link, i, j) == mu(link, MuIndex((i,), j))
