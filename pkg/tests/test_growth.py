from __future__ import annotations

import pytest
from hypothesis import given

from endospec import (
    Endomorphism,
    LengthBudgetExceeded,
    Word,
    abelianization_matrix,
    build_graph,
    char_poly,
    growth_estimate,
    growth_sequence,
    max_root_modulus,
    restriction,
)

from conftest import H_GENS, PHI, endomorphisms

GR = 1 + 2**0.5


def test_lengths_of_example_map():
    # max over both generators; the a-orbit alone lags one step behind
    assert growth_sequence(PHI, 5).lengths == [3, 7, 17, 41, 99]
    rows = growth_sequence(PHI, 5).rows
    assert rows[0].ratio_estimate is None
    assert rows[-1].ratio_estimate == pytest.approx(99 / 41)


def test_estimates():
    assert growth_estimate(PHI, 10) == pytest.approx(GR, abs=0.01)
    ident = Endomorphism.identity(2)
    assert growth_sequence(ident, 4).lengths == [1, 1, 1, 1]
    assert growth_estimate(ident, 4) == 1.0
    dead = Endomorphism(2, [Word.identity(2), Word.identity(2)])
    assert growth_sequence(dead, 3).lengths == [0, 0, 0]
    assert growth_estimate(dead, 3) == 0.0


def test_restricted_estimate_close():
    psi = restriction(PHI, build_graph(2, H_GENS))
    assert abs(growth_estimate(psi, 10) - growth_estimate(PHI, 10)) <= 0.05


def test_length_cap():
    with pytest.raises(LengthBudgetExceeded):
        growth_sequence(PHI, 30, cap=1000)
    with pytest.raises(ValueError):
        growth_sequence(PHI, 0)


@given(endomorphisms(rank=2, max_image=4))
def test_growth_at_least_abelian_spectral_radius(phi):
    p = char_poly(abelianization_matrix(phi))
    bound = max_root_modulus(p) if p.strip_t().degree >= 1 else 0.0
    try:
        est = growth_estimate(phi, 10, cap=10**6)
    except LengthBudgetExceeded:
        return
    assert est >= bound - 0.05


def test_oscillating_lengths_use_root():
    phi = Endomorphism(2, [Word(2, [2]), Word(2, [1, 1])])  # lengths 2, 2, 4, 4, 8, ...
    assert growth_sequence(phi, 10).lengths[-2:] == [32, 32]
    assert growth_estimate(phi, 10) == pytest.approx(2**0.5)


@given(endomorphisms(rank=2, max_image=3))
def test_submultiplicative(phi):
    try:
        lengths = [1] + growth_sequence(phi, 8, cap=10**6).lengths
    except LengthBudgetExceeded:
        return
    for j in range(1, 5):
        for k in range(1, 5):
            assert lengths[j + k] <= lengths[j] * lengths[k]
