from __future__ import annotations

import sympy
from hypothesis import given, strategies as st

from endospec import (
    Endomorphism,
    IntMatrix,
    IntPoly,
    LaurentPoly,
    Word,
    abelianization_matrix,
    alexander_polynomial,
    build_graph,
    char_poly,
    fox_derivative,
    is_injective,
    mapping_torus,
    restriction,
)
from endospec.torus import _bareiss_poly_det, _cofactor_det, epsilon, fox_matrix, laurent_det

from conftest import H_GENS, PHI, endomorphisms, w, words

T = sympy.Symbol("t")


def rule_oracle(letters, z, stable):
    """Fox derivative by the product rule, evaluated with x -> 1/t, as a sympy expression."""
    eps = {stable: 1 / T, -stable: T}
    one = sympy.Integer(1)
    total, prefix = 0, 1
    for y in letters:
        if y == z:
            total += prefix
        elif y == -z:
            # d(z^-1)/dz = -eps(z)^-1, multiplied on the left by the prefix
            total += prefix * -(eps.get(z, one) ** -1)
        prefix *= eps.get(y, one)
    return sympy.simplify(total)


def to_sympy(p: LaurentPoly):
    return sum(c * T**k for k, c in p.terms.items())


def test_mapping_torus_relators():
    p = mapping_torus(PHI)
    assert p.format() == "< a, b, x | x^-1 a x b^-1, x^-1 b x b^-1 b^-1 a^-1 >"
    ident = mapping_torus(Endomorphism.identity(2))
    assert [ident.format_relator(r) for r in ident.relators] == ["x^-1 a x a^-1", "x^-1 b x b^-1"]
    inner = mapping_torus(restriction(PHI, build_graph(2, H_GENS)))
    assert inner.rank == 3 and len(inner.relators) == 3
    assert inner.fiber_names == ("h1", "h2", "h3")


def test_fox_derivative_examples():
    # alphabet (a, b, x); the stable letter x is last
    assert fox_derivative(w(3, "a b b"), 1) == LaurentPoly({0: 2})
    assert fox_derivative(w(3, "a"), 0) == LaurentPoly({0: 1})
    # x^-1 a x a^-1 over (a, x): -t + t = 0
    rel = Word(2, [-2, 1, 2, -1])
    assert fox_derivative(rel, 1).is_zero()
    assert fox_derivative(rel, 0) == LaurentPoly({1: 1, 0: -1})


def test_alexander_examples():
    assert alexander_polynomial(mapping_torus(PHI)) == IntPoly([-1, -2, 1])
    assert alexander_polynomial(mapping_torus(Endomorphism.identity(2))) == IntPoly([1, -2, 1])
    inner = mapping_torus(restriction(PHI, build_graph(2, H_GENS)))
    assert alexander_polynomial(inner) == char_poly(IntMatrix([[0, 1, 1], [1, 2, 2], [0, 0, -1]]))


def test_fox_matrix_is_t_minus_transpose():
    m = fox_matrix(mapping_torus(PHI))
    a = abelianization_matrix(PHI)
    for i in range(2):
        for j in range(2):
            expected = LaurentPoly({1: int(i == j)}) - LaurentPoly({0: a[j, i]})
            assert m[i][j] == expected


@given(st.integers(0, 3).flatmap(lambda z: st.tuples(st.just(z), words(4, 10))))
def test_fox_matches_rule_oracle(args):
    z, u = args
    got = to_sympy(fox_derivative(u, z))
    assert sympy.simplify(got - rule_oracle(u.letters, z + 1, 4)) == 0


@given(words(3, 8), words(3, 8), st.integers(0, 2))
def test_fox_product_rule(u, v, z):
    lhs = fox_derivative(u * v, z)
    rhs = fox_derivative(u, z) + epsilon(u) * fox_derivative(v, z)
    assert lhs == rhs


@given(words(3, 10))
def test_fox_fundamental_identity(u):
    total = LaurentPoly()
    for z in range(3):
        total = total + fox_derivative(u, z) * (epsilon(Word(3, [z + 1])) - LaurentPoly({0: 1}))
    assert total == epsilon(u) - LaurentPoly({0: 1})


@given(endomorphisms(rank=3, max_image=5))
def test_fox_agrees_with_char_poly(phi):
    if not is_injective(phi):
        return
    lin = char_poly(abelianization_matrix(phi)).strip_t()
    assert alexander_polynomial(mapping_torus(phi, injective=True)) == (-lin if lin.lead < 0 else lin)


@given(st.integers(1, 7).flatmap(lambda n: st.lists(
    st.lists(st.dictionaries(st.integers(-2, 2), st.integers(-3, 3), max_size=2), min_size=n, max_size=n),
    min_size=n, max_size=n)))
def test_laurent_det_routes_agree(rows):
    m = [[LaurentPoly(d) for d in row] for row in rows]
    direct = _cofactor_det(m)
    shifts, ints = [], []
    for row in m:
        lows = [e.low for e in row if not e.is_zero()]
        s = -min(lows) if lows else 0
        shifts.append(s)
        ints.append([e.to_intpoly()[0].shift(e.low + s) if not e.is_zero() else IntPoly() for e in row])
    assert LaurentPoly.from_intpoly(_bareiss_poly_det(ints), -sum(shifts)) == direct
    assert laurent_det(m) == direct
