import random
from math import factorial

import pytest
from sympy.combinatorics import Permutation as SymPerm, PermutationGroup

from cyclicaut.arithmetic import PrimePowerLength, cyclotomic_cosets
from cyclicaut.autgroup import (
    TABLE2,
    Tag,
    algorithm_a,
    classify,
    classify_graph,
    detect_golay,
    is_projective,
    pgaml_order,
    singer_labeling,
    sylow_exponent,
)
from cyclicaut.brand import f_i
from cyclicaut.codes import CyclicCode, bch, from_defining_set
from cyclicaut.errors import PreconditionError, UnsupportedLength
from cyclicaut.finite_field import field, field_of_order
from cyclicaut.graphs import circulant, cycle_graph
from cyclicaut.permutation import complete_cycle

from conftest import all_permutations, brute_force_maps


def group_order(gens) -> int:
    return PermutationGroup([SymPerm(list(g.image)) for g in gens]).order()


def test_singer_labeling_examples():
    fano = singer_labeling(3, 2)
    assert fano.n == 7 and len(set(fano.points)) == 7
    line = singer_labeling(2, 3)
    assert line.n == 4
    for lab in (fano, line, singer_labeling(3, 3)):
        for i in range(lab.n):
            nxt = lab.normalize(lab.singer_step(lab.points[i]))
            assert nxt == lab.points[(i + 1) % lab.n]


@pytest.mark.parametrize("d,t", [(2, 3), (2, 4), (3, 2), (3, 3), (2, 5), (4, 2), (3, 4)])
def test_singer_generators_generate_pgaml(d, t):
    lab = singer_labeling(d, t)
    gens = lab.generators()
    assert group_order(gens) == pgaml_order(d, t)
    # the Singer cycle itself is the shift T
    assert group_order(gens + [complete_cycle(lab.n)]) == pgaml_order(d, t)


def test_pgaml_orders():
    assert pgaml_order(3, 2) == 168
    assert pgaml_order(3, 3) == 5616
    assert pgaml_order(3, 4) == 120960


def test_is_projective_examples():
    assert is_projective(from_defining_set(7, 2, [1]), 3, 2)
    assert is_projective(bch(13, 3, 1, 4), 3, 3)
    assert not is_projective(bch(13, 3, 1, 2), 3, 3)
    with pytest.raises(PreconditionError):
        is_projective(bch(13, 3, 1, 4), 3, 2)


def test_hamming_independent_of_labeling_class():
    for seed in (1, 3):
        c = classify(from_defining_set(7, 2, [seed]))
        assert (c.tag, c.order) == (Tag.PROJECTIVE, 168)
        assert group_order(c.generators) == 168


def test_projective_generators_generate_full_group():
    c = classify(bch(13, 3, 1, 4))
    assert c.name == "PGammaL(3,3)" and c.order == 5616
    assert group_order(c.generators) == 5616


def test_projective_plane_of_order_four():
    # binary [21, 11] code of the plane over GF(4); over GF(4) itself scalars break the permutation action
    code = CyclicCode(21, field(2), [0, 1, 2, 3, 4, 6, 8, 11, 12, 16])
    assert code.dimension == 11
    c = classify(code)
    assert c.name == "PGammaL(3,4)" and c.order == 120960
    assert all(code.is_automorphism(g) for g in c.generators)
    assert group_order(c.generators) == 120960
    with pytest.raises(UnsupportedLength):
        classify(bch(21, 4, 1, 2))


@pytest.mark.parametrize(
    "q,p,delta,size",
    [(2, 17, 2, 8), (2, 41, 2, 20), (11, 5, 3, 1), (2, 43, 5, 14), (3, 23, 3, 11)],
)
def test_algorithm_a_examples(q, p, delta, size):
    c = algorithm_a(bch(p, q, 1, delta))
    assert c.tag is Tag.AFFINE_SUBGROUP
    A = c.evidence["multipliers"]
    assert len(A) == size and c.order == p * size
    assert {a * b % p for a in A for b in A} == set(A)
    assert {pow(a, -1, p) for a in A} == set(A)
    assert group_order(c.generators) == c.order


def test_algorithm_a_preconditions():
    with pytest.raises(PreconditionError, match="Golay"):
        algorithm_a(bch(23, 2, 1, 3))
    with pytest.raises(PreconditionError, match="projective"):
        algorithm_a(from_defining_set(7, 2, [1]))
    with pytest.raises(PreconditionError, match="elementary"):
        algorithm_a(from_defining_set(7, 2, [0]))
    with pytest.raises(PreconditionError):
        algorithm_a(bch(25, 3, 1, 3))


def test_algorithm_a_prime_brute_force():
    perms5 = all_permutations(5)
    F = field(11)
    for Z in ([1], [1, 2], [2, 3], [1, 4], [0, 1, 2]):
        code = CyclicCode(5, F, Z)
        c = classify(code)
        assert c.order == len(brute_force_maps(code, code, perms5))


def test_detect_golay():
    g = detect_golay(bch(23, 2, 1, 3))
    assert g.tag is Tag.GOLAY_BINARY and g.order == 10200960 and g.evidence["min_distance"] == 7
    assert detect_golay(bch(23, 2, 1, 3).dual()).evidence["min_distance"] == 8
    t = detect_golay(bch(11, 3, 1, 2))
    assert t.tag is Tag.GOLAY_TERNARY and t.order == 660
    assert detect_golay(bch(11, 3, 1, 2).dual()).tag is Tag.GOLAY_TERNARY
    assert detect_golay(from_defining_set(7, 2, [1])) is None
    # over GF(9) the same defining sets give the extended-scalar ternary Golay codes
    assert detect_golay(CyclicCode(11, field(3, 2), bch(11, 3, 1, 2).defining_set)).tag is Tag.GOLAY_TERNARY


def test_sylow_examples():
    probe = sylow_exponent(bch(25, 3, 1, 3))
    assert (probe.I, probe.s, probe.at_cap) == (3, 5, True)
    probe = sylow_exponent(bch(9, 5, 1, 2))
    assert (probe.I, probe.s, probe.at_cap) == (1, 3, True)
    probe = sylow_exponent(cycle_graph(9))
    assert (probe.I, probe.s, probe.cyclic_only) == (0, 2, True)
    probe = sylow_exponent(cycle_graph(25))
    assert (probe.I, probe.s) == (0, 2)
    assert not cycle_graph(25).is_automorphism(f_i(PrimePowerLength(5, 2), 2).permutation())
    with pytest.raises(PreconditionError):
        sylow_exponent(cycle_graph(8))


def _random_codes(n, q, count, seed):
    rng = random.Random(seed)
    cos = list(cyclotomic_cosets(n, q))
    out = []
    for _ in range(count):
        Z = set()
        for c in cos:
            if rng.random() < 0.5:
                Z |= set(c)
        out.append(CyclicCode(n, field_of_order(q), Z))
    return out


@pytest.mark.parametrize("n,q", [(25, 2), (25, 3), (25, 7), (49, 2), (9, 4), (27, 2)])
def test_sylow_chain_is_monotone(n, q):
    for code in _random_codes(n, q, 6, n * q):
        probe = sylow_exponent(code)
        assert probe.monotone
        L = probe.length
        for j in range(1, probe.I + 1):
            assert code.is_automorphism(f_i(L, j).permutation())
        if probe.I + 1 <= L.p - 2 and probe.I >= 1:
            assert not code.is_automorphism(f_i(L, probe.I + 1).permutation())


def test_sylow_exponent_against_s9():
    perms = all_permutations(9)
    for q in (2, 4, 7):
        for code in _random_codes(9, q, 4, q):
            if code.is_elementary():
                continue
            aut = len(brute_force_maps(code, code, perms))
            three = 1
            while aut % (3 * three) == 0:
                three *= 3
            probe = sylow_exponent(code)
            if probe.at_cap:
                assert 3**probe.s <= three
            else:
                assert 3**probe.s == three


def test_classify_dispatch():
    rep = CyclicCode(17, field(2), range(1, 17))
    c = classify(rep)
    assert c.tag is Tag.SYMMETRIC and c.order == factorial(17)
    c = classify(bch(43, 4, 1, 9))
    assert c.name == "C_7 x| C_43" and c.order == 301
    c = classify(bch(25, 3, 1, 3))
    assert c.tag is Tag.IMPRIMITIVE
    assert c.evidence["blocks"] == [list(range(k, 25, 5)) for k in range(5)]
    assert sorted(map(list, (complete_cycle(25) ** 5).orbits())) == c.evidence["blocks"]
    assert not c.exact and c.order % 25 == 0
    with pytest.raises(UnsupportedLength):
        classify(from_defining_set(12, 5, [1]))


def test_classify_graph():
    c = classify_graph(cycle_graph(7))
    assert c.name == "C_2 x| C_7" and c.order == 14
    assert classify_graph(circulant(7, range(1, 7))).tag is Tag.SYMMETRIC
    assert classify_graph(circulant(9, [])).tag is Tag.SYMMETRIC
    c = classify_graph(cycle_graph(9))
    assert c.tag is Tag.IMPRIMITIVE and c.order == 18


def test_classify_prime_graphs_brute_force():
    perms = all_permutations(7)
    for S in ({1, 6}, {1, 2, 5, 6}, {1, 3, 4, 6}):
        G = circulant(7, S)
        count = int(G.batch_maps_to(perms, G).sum())
        assert classify_graph(G).order == count
    for S in ({1}, {1, 2, 4}, {1, 2}):
        G = circulant(7, S, directed=True)
        assert classify_graph(G).order == int(G.batch_maps_to(perms, G).sum())


def test_classification_json():
    c = classify(bch(17, 2, 1, 2))
    js = c.to_json()
    assert js["tag"] == "AffineSubgroup" and js["name"] == {"semidirect": [8, 17]} and js["order"] == 136
    assert str(c) == "C_8 x| C_17, order 136"
    assert str(classify(from_defining_set(7, 2, [0]))) == "S_7 (elementary), order 5040"


def test_table2_cells_disputed_by_derivation():
    # The defining set of BCH(17, GF(2), b=2, delta=2) is the coset of 2, which equals the coset of 1.
    assert bch(17, 2, 2, 2) == bch(17, 2, 1, 2)
    assert classify(bch(17, 2, 2, 2)).name == "C_8 x| C_17"
    # delta - 1 = 4 consecutive residues meet both size-5 cosets mod 11 over GF(5): a repetition code.
    for b in (1, 2, 3):
        code = bch(11, 5, b, 5)
        assert code.defining_set == tuple(range(1, 11)) and code.dimension == 1
        assert classify(code).tag is Tag.SYMMETRIC


def test_table_shape():
    assert len(TABLE2) == 14
    assert all(len(v) == 3 for v in TABLE2.values())
