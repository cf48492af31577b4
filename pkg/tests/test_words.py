from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from endospec import Endomorphism, LengthBudgetExceeded, RankMismatch, Word, apply, compose, invert, multiply, power, reduce
from endospec.words import generator_name

from conftest import PHI, endomorphisms, letters, w, words


def naive_reduce(seq):
    # repeated scan until no adjacent inverse pair remains
    seq = list(seq)
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] == -seq[i + 1]:
                del seq[i : i + 2]
                changed = True
                break
    return seq


def test_reduce_examples():
    assert reduce(2, [1, 2, -2, 1]) == w(2, "a a")
    assert reduce(2, []) == Word.identity(2)
    assert reduce(2, [1, -1, 2, -2]) == Word.identity(2)


def test_multiply_examples():
    assert multiply(w(2, "a b"), w(2, "B a")) == w(2, "a a")
    assert multiply(w(2, "b"), w(2, "a b b")) == w(2, "b a b b")
    u = w(2, "a b A")
    assert multiply(u, invert(u)) == Word.identity(2)


def test_multiply_rank_mismatch():
    with pytest.raises(RankMismatch):
        multiply(w(2, "a"), w(3, "a"))


def test_invert_examples():
    assert invert(w(2, "a b")) == w(2, "B A")
    assert invert(Word.identity(2)) == Word.identity(2)
    assert invert(w(2, "a B a")) == w(2, "A b A")


def test_apply_examples():
    assert apply(PHI, w(2, "a b")) == w(2, "b a b b")
    assert apply(PHI, Word.identity(2)) == Word.identity(2)
    assert apply(PHI, w(2, "a a")) == w(2, "b b")
    # the long form b^2 (ab)^-1 a^2 b^2 reduces to the same word
    assert reduce(2, [2, 2, -2, -1, 1, 1, 2, 2]) == w(2, "b a b b")


def test_compose_examples():
    phi2 = compose(PHI, PHI)
    assert phi2.images[0] == w(2, "a b b")
    assert compose(PHI, Endomorphism.identity(2)) == PHI
    assert power(PHI, 3).images[0] == w(2, "b a b b a b b")
    assert power(PHI, 0) == Endomorphism.identity(2)


def test_apply_cap():
    with pytest.raises(LengthBudgetExceeded):
        apply(power(PHI, 6), w(2, "b"), cap=50)


def test_display():
    assert w(2, "a b b A").format() == "a b^2 a^-1"
    assert Word.identity(2).format() == "1"
    assert generator_name(0, 2) == "a"
    assert generator_name(26, 30) == "x27"
    assert str(PHI) == "a -> b, b -> a b^2"


@given(st.integers(1, 4).flatmap(letters))
def test_reduce_matches_naive_and_is_idempotent(seq):
    r = max((abs(x) for x in seq), default=1)
    once = reduce(r, seq)
    assert list(once.letters) == naive_reduce(seq)
    assert reduce(r, once.letters) == once


@given(words(3))
def test_inverse_cancels(u):
    assert multiply(u, invert(u)) == Word.identity(3)
    assert invert(invert(u)) == u


@given(words(3), words(3), words(3))
def test_multiply_associative(u, v, x):
    assert multiply(multiply(u, v), x) == multiply(u, multiply(v, x))


@given(endomorphisms(rank=3), words(3), words(3))
def test_apply_is_homomorphism(phi, u, v):
    assert apply(phi, multiply(u, v)) == multiply(apply(phi, u), apply(phi, v))


@given(endomorphisms(rank=2, max_image=3), endomorphisms(rank=2, max_image=3), endomorphisms(rank=2, max_image=3))
def test_compose_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(endomorphisms(rank=2, max_image=3), st.integers(0, 3), st.integers(0, 3))
def test_power_additive(phi, j, k):
    assert power(phi, j + k) == compose(power(phi, j), power(phi, k))
