import math
from itertools import product

import pytest

from schurlie.errors import DimensionMismatch, InvalidArgument
from schurlie.words import (TensorElement, act, all_perms, format_perm,
                            identity_perm, letter_class_key, multidegree,
                            orbit, perm_compose, perm_from_cycles,
                            perm_inverse, perm_sorting_onto, sorted_rep,
                            sorted_words, stabilizer_orbit_key, tensor_product,
                            words_of, young_subgroup_of)


def test_act_swap():
    # x1 (x) x2 under the transposition
    assert act((1, 2), (2, 1)) == (2, 1)


def test_act_identity():
    assert act((1, 2, 3), identity_perm(3)) == (1, 2, 3)


def test_act_three_cycle():
    # the cycle 1->2->3->1 moves letters (i,j,k) to (k,i,j)
    sigma = perm_from_cycles([(1, 2, 3)], 3)
    assert sigma == (2, 3, 1)
    assert act((1, 2, 3), sigma) == (3, 1, 2)


def test_act_length_mismatch():
    with pytest.raises(DimensionMismatch):
        act((1, 2, 3), (2, 1))


def test_action_composition_law_small():
    # act(act(w, s), t) == act(w, t o s), exhaustively for q <= 4
    for q in range(1, 5):
        for w in product(range(1, 3), repeat=q):
            for s in all_perms(q):
                for t in all_perms(q):
                    assert act(act(w, s), t) == act(w, perm_compose(t, s))


def test_action_composition_law_q5_distinct_word():
    # the action only moves positions, so the law on the all-distinct word
    # pins it for every word of that length
    w = (1, 2, 3, 4, 5)
    for s in all_perms(5):
        for t in all_perms(5):
            assert act(act(w, s), t) == act(w, perm_compose(t, s))


def test_perm_inverse_and_cycles_roundtrip():
    for q in range(1, 6):
        for p in all_perms(q):
            assert perm_compose(p, perm_inverse(p)) == identity_perm(q)
            rebuilt = perm_from_cycles([tuple(c) for c in _cycles(p)], q)
            assert rebuilt == p


def _cycles(p):
    from schurlie.words import perm_cycles
    return perm_cycles(p)


def test_format_perm():
    assert format_perm((1, 2, 3)) == "1"
    assert format_perm((2, 1, 3)) == "(1 2)"
    assert format_perm((2, 3, 1)) == "(1 2 3)"
    assert format_perm((2, 1, 4, 3)) == "(1 2)(3 4)"


def test_perm_from_cycles_rejects_repeats():
    with pytest.raises(InvalidArgument):
        perm_from_cycles([(1, 1)], 2)


def test_orbit_frozen_examples():
    assert orbit((1, 1)) == {(1, 1)}
    assert orbit((1, 2)) == {(1, 2), (2, 1)}
    assert orbit((1, 1, 2)) == {(1, 1, 2), (1, 2, 1), (2, 1, 1)}


def test_orbit_size_formula():
    for n, q in [(2, 3), (3, 3), (3, 4)]:
        for w in words_of(n, q):
            stab = sum(1 for s in all_perms(q) if act(w, s) == w)
            assert len(orbit(w)) == math.factorial(q) // stab


def test_orbit_partition_counts():
    # orbit sizes over sorted representatives add up to n^q
    for n in (1, 2, 3):
        for q in range(0, 6):
            total = sum(len(orbit(u)) for u in sorted_words(n, q))
            assert total == n ** q


def test_sorted_rep():
    assert sorted_rep((2, 1)) == (1, 2)
    assert sorted_rep((1, 1)) == (1, 1)
    assert sorted_rep((3, 1, 3)) == (1, 3, 3)
    for w in words_of(3, 4):
        u = sorted_rep(w)
        assert u in orbit(w)
        assert sorted_rep(u) == u


def test_multidegree():
    assert multidegree((1, 2, 1), 2) == (2, 1)
    assert multidegree((), 3) == (0, 0, 0)
    with pytest.raises(InvalidArgument):
        multidegree((4,), 3)


def test_orbits_match_multidegrees():
    # same orbit iff same multidegree, exhaustive at small sizes
    for n in (2, 3):
        for q in range(0, 6):
            for u in words_of(n, q):
                for v in words_of(n, q):
                    same_orbit = sorted_rep(u) == sorted_rep(v)
                    assert same_orbit == (multidegree(u, n) == multidegree(v, n))


def test_stabilizer_orbit_key_frozen():
    assert stabilizer_orbit_key((1, 1), (2, 1)) == (1, 2)
    assert stabilizer_orbit_key((1, 2), (2, 1)) == (2, 1)
    assert stabilizer_orbit_key((1, 1, 2), (3, 1, 2)) == (1, 3, 2)


def test_stabilizer_orbit_key_requires_sorted():
    with pytest.raises(InvalidArgument):
        stabilizer_orbit_key((2, 1), (1, 2))


def test_stabilizer_orbit_key_matches_bruteforce():
    # key equality must agree with membership in the same stabilizer orbit
    for n in (2, 3):
        for q in range(1, 6):
            for u in sorted_words(n, q):
                stab = young_subgroup_of(u)
                assert all(act(u, s) == u for s in stab)
                assert len(stab) == sum(1 for s in all_perms(q) if act(u, s) == u)
                for w in words_of(n, q):
                    orb = {act(w, s) for s in stab}
                    key = stabilizer_orbit_key(u, w)
                    assert key in orb
                    assert all(stabilizer_orbit_key(u, v) == key for v in orb)


def test_letter_class_key_general_position():
    # the unsorted variant groups positions by letter value
    assert letter_class_key((2, 1, 2), (3, 1, 1)) == (1, 1, 3)


def test_perm_sorting_onto():
    for w in words_of(3, 4):
        u = sorted_rep(w)
        assert act(u, perm_sorting_onto(u, w)) == w
    with pytest.raises(InvalidArgument):
        perm_sorting_onto((1, 2), (1, 1))


def test_tensor_arithmetic():
    t = TensorElement(2, {(1, 2): 2, (2, 1): -1})
    s = TensorElement(2, {(1, 2): -2})
    assert (t + s).items() == [((2, 1), -1)]
    assert (t - t).is_zero()
    assert (3 * t).coeff((1, 2)) == 6
    assert t.scale(0).is_zero()
    assert (-t).coeff((2, 1)) == 1
    with pytest.raises(DimensionMismatch):
        t + TensorElement(3)
    with pytest.raises(DimensionMismatch):
        TensorElement(2, {(1, 2, 3): 1})


def test_tensor_act_linear():
    t = TensorElement(2, {(1, 2): 1, (1, 1): 4})
    swapped = t.act((2, 1))
    assert swapped.coeff((2, 1)) == 1
    assert swapped.coeff((1, 1)) == 4


def test_tensor_product():
    a = TensorElement(1, {(1,): 1, (2,): -1})
    b = TensorElement(1, {(1,): 1})
    ab = tensor_product(a, b)
    assert ab.items() == [((1, 1), 1), ((2, 1), -1)]
    empty = TensorElement.from_word(())
    assert tensor_product(empty, a) == a
