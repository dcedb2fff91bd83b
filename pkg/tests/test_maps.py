import itertools

from hypothesis import given, settings, strategies as st

from corfun.maps import FormalMapSum, commute, is_idempotent, product, sum_compose


def sums(n):
    maps = st.tuples(*[st.integers(0, n - 1)] * n)
    return st.dictionaries(maps, st.integers(-3, 3), max_size=4).map(lambda d: FormalMapSum(n, n, d))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_composition_is_associative_and_bilinear(data):
    n = data.draw(st.integers(1, 4))
    u, v, w = data.draw(sums(n)), data.draw(sums(n)), data.draw(sums(n))
    assert (u @ v) @ w == u @ (v @ w)
    assert u @ (v + w) == u @ v + u @ w
    assert (u + v) @ w == u @ w + v @ w


def test_composition_applies_right_factor_first():
    f = FormalMapSum.single((1, 1, 2))
    g = FormalMapSum.single((0, 2, 2))
    # (f o g)(i) = f(g(i))
    assert list((f @ g).terms) == [(1, 2, 2)]


def test_identity_and_zero():
    u = FormalMapSum(3, 3, {(0, 0, 1): 2, (2, 1, 0): -1})
    assert FormalMapSum.identity(3) @ u == u == u @ FormalMapSum.identity(3)
    assert not (FormalMapSum.zero(3) @ u)
    assert (u - u) == FormalMapSum.zero(3)


def test_chain_map_and_dump():
    assert FormalMapSum.chain_map(4, [0, 2, 3]) == (2, 1, 3, 3)
    u = FormalMapSum(2, 2, {(1, 1): -1, (0, 1): 2})
    assert u.dump() == "2: [0, 1]\n-1: [1, 1]"


def test_constant_maps_are_idempotent():
    for c in range(3):
        assert is_idempotent(FormalMapSum.single((c, c, c)))
    assert not is_idempotent(FormalMapSum.single((1, 0)))


def test_product_and_commute():
    a = FormalMapSum.single((0, 0, 2))
    b = FormalMapSum.single((0, 1, 1))
    assert product([a, b], 3) == a @ b
    assert commute(a, FormalMapSum.identity(3))
