import itertools

import pytest
from hypothesis import given, strategies as st

from cyclicaut.arithmetic import multiplicative_order, units
from cyclicaut.permutation import (
    AffineMap,
    Permutation,
    affine,
    complete_cycle,
    compose,
    conjugate_into_cycle_power,
    inverse,
    multiplier,
    order,
    parse_permutation,
    power,
)


def perms(max_n=12):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(range(n)).map(lambda p: Permutation(tuple(p))))


def test_examples():
    assert complete_cycle(3).image == (1, 2, 0)
    assert power(complete_cycle(7), 7).is_identity()
    blocks = (complete_cycle(9) ** 3).orbits()
    assert sorted(blocks) == [(0, 3, 6), (1, 4, 7), (2, 5, 8)]
    assert multiplier(7, 1).is_identity()
    assert affine(5, 2, 1).image == (1, 3, 0, 2, 4)
    assert order(complete_cycle(8)) == 8
    inv = inverse(affine(9, 2, 5))
    assert inv == AffineMap(9, 2, 5).inverse().permutation()
    assert AffineMap(9, 2, 5).inverse().a == 5


def test_affine_group_size():
    for p in (5, 7, 11):
        maps = {affine(p, a, b) for a in units(p) for b in range(p)}
        assert len(maps) == p * (p - 1)


def test_conjugation():
    T = complete_cycle(7)
    assert conjugate_into_cycle_power(T) == 1
    assert conjugate_into_cycle_power(multiplier(7, 3)) == 3
    swap = Permutation((1, 0, 2, 3, 4))
    assert conjugate_into_cycle_power(swap) is None


def test_normalizer_of_cycle_in_s5():
    normalizing = [p for p in itertools.permutations(range(5)) if conjugate_into_cycle_power(Permutation(p)) is not None]
    affine_maps = {affine(5, a, b).image for a in units(5) for b in range(5)}
    assert len(normalizing) == 20
    assert set(normalizing) == affine_maps


@given(st.integers(2, 60), st.data())
def test_affine_closure(n, data):
    us = units(n)
    a1, a2 = data.draw(st.sampled_from(us)), data.draw(st.sampled_from(us))
    b1, b2 = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    f, g = AffineMap(n, a1, b1), AffineMap(n, a2, b2)
    assert (f * g).permutation() == compose(f.permutation(), g.permutation())
    assert f * g == AffineMap(n, a1 * a2, a1 * b2 + b1)


@given(st.integers(2, 80), st.data())
def test_multiplier_order(n, data):
    a = data.draw(st.sampled_from(units(n)))
    assert order(multiplier(n, a)) == multiplicative_order(a, n)


@given(perms())
def test_group_laws(s):
    e = Permutation.identity(s.n)
    assert compose(s, e) == s == compose(e, s)
    assert compose(s, inverse(s)) == e
    assert power(s, order(s)) == e
    assert parse_permutation(str(s)) == s


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    with pytest.raises(ValueError):
        compose(complete_cycle(3), complete_cycle(4))
    with pytest.raises(ValueError):
        AffineMap(9, 3, 0)
