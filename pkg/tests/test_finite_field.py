import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from cyclicaut.finite_field import (
    embed,
    field,
    field_of_order,
    is_irreducible,
    poly_product_over_roots,
    primitive_element,
)

FIELDS = [(2, 1), (3, 1), (7, 1), (2, 2), (3, 2), (2, 3), (2, 4), (5, 2), (3, 3)]


def test_field_moduli():
    assert field(2, 1).modulus == (0, 1)
    assert field(2, 2).modulus == (1, 1, 1)
    # least monic irreducible quadratic over GF(3) is x^2 + 1
    assert field(3, 2).modulus == (1, 0, 1)


def test_is_irreducible_against_sympy():
    x = sympy.symbols("x")
    for r, k in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        for low in itertools.product(range(r), repeat=k):
            coeffs = list(low) + [1]
            expr = sum(c * x**i for i, c in enumerate(coeffs))
            oracle = sympy.Poly(expr, x, modulus=r).is_irreducible
            assert is_irreducible(coeffs, r) == oracle, (r, coeffs)


def test_gf4_arithmetic():
    F = field(2, 2)
    x = F(2)
    assert (x * x).value == 3
    assert F(1).inverse().value == 1
    assert primitive_element(F).value == 2


def test_primitive_elements():
    assert primitive_element(field(2)).value == 1
    assert primitive_element(field(7)).value == 3
    for r, k in FIELDS:
        F = field(r, k)
        assert F.element_order(F.primitive) == F.order - 1


@pytest.mark.parametrize("r,k", FIELDS)
def test_field_axioms_exhaustive_small(r, k):
    F = field(r, k)
    elems = list(F.elements())
    if F.order > 27:
        elems = elems[:27]
    for a in elems:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, F.order - 1) == 1
    for a, b in itertools.product(elems, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms_random(rk, data):
    F = field(*rk)
    a, b, c = (data.draw(st.integers(0, F.order - 1)) for _ in range(3))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    arr = F.arrays
    assert int(arr.mul[a, b]) == F.mul(a, b)
    assert int(arr.add[a, b]) == F.add(a, b)


def test_embeddings():
    assert embed(field(2), field(2, 3), 1).value == 1
    assert embed(field(2, 2), field(2, 4), 0).value == 0
    img = embed(field(2, 2), field(2, 4), 2)
    assert img.order() == 3


@given(st.sampled_from([((2, 2), (2, 4)), ((3, 1), (3, 2)), ((2, 2), (2, 6)), ((3, 2), (3, 4))]), st.data())
def test_embedding_is_homomorphism(pair, data):
    sub, sup = field(*pair[0]), field(*pair[1])
    a = data.draw(st.integers(0, sub.order - 1))
    b = data.draw(st.integers(0, sub.order - 1))

    def e(v):
        return embed(sub, sup, v).value

    assert e(sub.add(a, b)) == sup.add(e(a), e(b))
    assert e(sub.mul(a, b)) == sup.mul(e(a), e(b))


def test_poly_product_over_roots():
    F4 = field(2, 2)
    assert poly_product_over_roots(F4, []).coeffs == (1,)
    # x^3 - 1 = x^3 + 1 in characteristic 2
    assert poly_product_over_roots(F4, [1, 2, 3]).coeffs == (1, 0, 0, 1)
    F8 = field(2, 3)
    beta = F8.primitive
    roots = [F8.pow(beta, e) for e in (1, 2, 4)]
    g = poly_product_over_roots(F8, roots)
    assert g.degree == 3 and all(c in (0, 1) for c in g.coeffs)
    assert all(g(r) == 0 for r in roots)
    with pytest.raises(ValueError):
        poly_product_over_roots(F8, [1, 1])


def test_large_field_primitive_is_fast():
    F = field(3, 20)
    assert F.element_order(F.primitive) == F.order - 1


def test_field_of_order():
    assert field_of_order(9) is field(3, 2)
    with pytest.raises(ValueError):
        field_of_order(6)
