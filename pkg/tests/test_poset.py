import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from corfun.errors import ValidationError
from corfun.poset import (Poset, antichain, chain, chain_plus_point, find_isomorphism, lambda_poset,
                          named_poset, popcount, v_poset, zigzag4)
from oracles import lower_ideals_brute, mobius_brute


@st.composite
def posets(draw, max_n=5):
    """Random order: random DAG along 0..n-1, transitively closed."""
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    return Poset.from_pairs([f"p{i}" for i in range(n)], pairs, close=True)


SMALL = [antichain(0), antichain(1), antichain(3), chain(3), v_poset(), lambda_poset(),
         chain_plus_point(), zigzag4()]


@settings(max_examples=100, deadline=None)
@given(posets())
def test_lower_ideals_match_brute_force(P):
    assert sorted(P.lower_ideals()) == sorted(lower_ideals_brute(P))
    # upper ideals are complements of lower ones
    full = (1 << P.n) - 1
    assert sorted(P.upper_ideals()) == sorted(full & ~A for A in P.lower_ideals())


@settings(max_examples=60, deadline=None)
@given(posets(max_n=5))
def test_mobius_matches_recursion(P):
    for a in range(P.n):
        for b in range(P.n):
            assert P.mobius(a, b) == mobius_brute(P, a, b)


@settings(max_examples=60, deadline=None)
@given(posets(max_n=5))
def test_automorphisms_match_brute_force(P):
    fast = {s.images for s in P.automorphisms(bound=6)}
    slow = {s.images for s in P.automorphisms_bruteforce()}
    assert fast == slow


def test_known_counts():
    assert len(antichain(2).lower_ideals()) == 4
    assert len(chain(3).lower_ideals()) == 4
    assert len(v_poset().lower_ideals()) == 5
    assert len(antichain(3).automorphisms()) == 6
    assert len(v_poset().automorphisms()) == 2
    assert len(zigzag4().automorphisms()) == 1
    assert len(chain_plus_point().automorphisms()) == 1


def test_mobius_of_chain_and_boolean():
    C = chain(4)
    assert [C.mobius(0, j) for j in range(4)] == [1, -1, 0, 0]
    A = antichain(0)
    assert A.lower_ideals() == [0]


def test_opposite_swaps_up_and_down():
    for P in SMALL:
        Q = P.opposite()
        assert list(Q.up) == list(P.down)
        assert Q.opposite() == P


def test_isomorphism_finder():
    assert find_isomorphism(v_poset(), lambda_poset().opposite()) is not None
    assert find_isomorphism(v_poset(), lambda_poset()) is None
    assert zigzag4().isomorphic_to(zigzag4().opposite())


def test_json_validation():
    ok = Poset.from_json(json.dumps({"elements": ["a", "b", "c"], "relation": [["a", "b"], ["b", "c"], ["a", "c"]]}))
    assert ok.le(0, 2) and ok.le(1, 1)
    with pytest.raises(ValidationError):
        Poset.from_json({"elements": ["a", "b", "c"], "relation": [["a", "b"], ["b", "c"]]})
    with pytest.raises(ValidationError):
        Poset.from_json({"elements": ["a", "b"], "relation": [["a", "b"], ["b", "a"]]})
    with pytest.raises(ValidationError):
        Poset.from_json({"elements": ["a"], "relation": [["a", "q"]]})
    assert Poset.from_json(ok.to_json()) == ok


def test_linear_extension_respects_order():
    for P in SMALL:
        ext = P.linear_extension
        pos = {e: i for i, e in enumerate(ext)}
        assert all(pos[a] <= pos[b] for a in range(P.n) for b in range(P.n) if P.le(a, b))


def test_named_posets():
    assert named_poset("antichain3").n == 3
    assert named_poset("v").isomorphic_to(v_poset())
    with pytest.raises(ValidationError):
        named_poset("nonsense")


def test_bounds():
    P = v_poset()  # c < a, c < b
    ub, lb = P.bounds(0b001)
    assert ub == 0b111 and lb == 0b001
    ub, lb = P.bounds(0b110)
    assert ub == 0 and lb == 0b001
