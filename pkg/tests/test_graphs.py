from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from endospec import (
    Endomorphism,
    InfiniteIndex,
    NotInSubgroup,
    Word,
    build_graph,
    contains,
    expand,
    index,
    is_invariant,
    mod_n_homology_kernel,
    rewrite_in_basis,
    schreier_basis,
    total_exponent_kernel,
    transversal,
)
from endospec.graphs import BasisWord

from conftest import H_GENS, PHI, w, words


@pytest.fixture(scope="module")
def H():
    return build_graph(2, H_GENS)


def test_example_subgroup_is_index_two_covering(H):
    assert H.num_vertices == 2
    assert index(H).m == 2
    assert H.basis_kind == "given"
    assert list(H.basis) == H_GENS


def test_trivial_and_cyclic_graphs():
    g = build_graph(2, [])
    assert g.num_vertices == 1 and g.num_edges == 0
    assert not index(g).finite
    assert schreier_basis(g) == []
    g = build_graph(2, [w(2, "a")])
    assert g.num_vertices == 1 and g.num_edges == 1
    assert contains(g, w(2, "a a A a")) and not contains(g, w(2, "b"))


def test_contains_examples(H):
    assert contains(H, w(2, "b a b b"))
    assert contains(H, Word.identity(2))
    assert not contains(H, w(2, "a"))


def test_index_of_automorphic_image():
    g = build_graph(2, [w(2, "b"), w(2, "a b b")])
    assert index(g).m == 1
    assert g.subgroup_rank == 2


def test_schreier_basis_rebuilds_same_graph(H):
    basis = schreier_basis(H)
    assert len(basis) == 3
    assert build_graph(2, basis).isomorphic(H)
    rose = build_graph(2, [w(2, "a"), w(2, "b")])
    assert sorted(schreier_basis(rose), key=str) in ([w(2, "a"), w(2, "b")], [w(2, "b"), w(2, "a")])


def test_transversal(H):
    assert transversal(H) == [Word.identity(2), w(2, "a")]
    rose = build_graph(2, [w(2, "a"), w(2, "b")])
    assert transversal(rose) == [Word.identity(2)]
    g = mod_n_homology_kernel(2, 2)
    reps = transversal(g)
    assert len(reps) == 4 and reps[0] == Word.identity(2)
    for i, s in enumerate(reps):
        for j, t in enumerate(reps):
            assert contains(g, s * t.inverse()) == (i == j)
    with pytest.raises(InfiniteIndex):
        transversal(build_graph(2, [w(2, "a")]))


def test_rewrite_examples(H):
    phi_b2 = w(2, "a b b a b b")
    rw = rewrite_in_basis(H, phi_b2)
    assert isinstance(rw, BasisWord)
    assert rw.format() == "h3 h2 h3^-1 h1 h2"
    assert rewrite_in_basis(H, w(2, "b a b b")).format() == "h2 h3^-1 h1 h2"
    assert len(rewrite_in_basis(H, Word.identity(2))) == 0
    with pytest.raises(NotInSubgroup):
        rewrite_in_basis(H, w(2, "a"))


def test_is_invariant_examples(H):
    assert is_invariant(H, PHI)
    rose = build_graph(2, [w(2, "a"), w(2, "b")])
    assert is_invariant(rose, PHI)
    swap = Endomorphism(2, [w(2, "b"), w(2, "a")])
    assert not is_invariant(build_graph(2, [w(2, "a")]), swap)


@given(st.lists(words(2, 6), min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_folding_confluence(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert build_graph(2, gens).isomorphic(build_graph(2, shuffled))


@given(st.lists(words(3, 6), min_size=1, max_size=4), st.lists(st.tuples(st.integers(0, 3), st.booleans()), max_size=4))
def test_membership_soundness_and_round_trip(gens, picks):
    g = build_graph(3, gens)
    for h in gens:
        assert contains(g, h)
    if not g.basis:
        return
    member = Word.identity(3)
    for i, inv in picks:
        h = g.basis[i % len(g.basis)]
        member = member * (h.inverse() if inv else h)
    assert contains(g, member)
    assert expand(g, rewrite_in_basis(g, member)) == member


@given(st.integers(2, 3), st.integers(2, 3), words(3, 10))
def test_kernel_membership_matches_exponent_sums(rank, n, u):
    u = Word(rank, [x for x in u.letters if abs(x) <= rank])
    sums = u.exponent_sums()
    assert contains(mod_n_homology_kernel(rank, n), u) == all(s % n == 0 for s in sums)
    assert contains(total_exponent_kernel(rank, n), u) == (sum(sums) % n == 0)


@given(st.lists(words(2, 5), min_size=1, max_size=3))
def test_nielsen_schreier_count(gens):
    g = build_graph(2, gens)
    assert len(schreier_basis(g)) == g.num_edges - g.num_vertices + 1
    if index(g).finite:
        assert len(schreier_basis(g)) == index(g).m * (2 - 1) + 1
