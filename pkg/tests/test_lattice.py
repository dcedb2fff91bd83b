import pytest
from hypothesis import given, settings, strategies as st

from corfun.catalog import catalog, gamma_fixtures, lattice_by_name
from corfun.errors import NotALattice, ValidationError
from corfun.lattice import (MarkedLattice, add_bounds, build, ideal_lattice, lattice_from_json,
                            subset_lattice, total_order)
from corfun.poset import Poset, antichain, chain, v_poset
from oracles import irreducibles_brute, join_brute
from test_poset import posets

CAT = catalog(max_chain=4) + gamma_fixtures()


@pytest.mark.parametrize("name,T", CAT, ids=[n for n, _ in CAT])
def test_catalog_laws_and_joins(name, T):
    L = T.lattice
    assert L.check_laws()
    P = L.poset
    for a in range(L.n):
        for b in range(L.n):
            assert L.join[a][b] == join_brute(P, a, b)
    assert sorted(T.irr) == sorted(irreducibles_brute(L))


@settings(max_examples=60, deadline=None)
@given(posets(max_n=5))
def test_ideal_lattice_is_distributive_with_poset_as_irr(P):
    T = ideal_lattice(P)
    assert T.is_distributive()
    assert T.irr_poset.isomorphic_to(P)
    # the marked order is exactly P's, position by position
    assert list(T.irr_poset.up) == list(P.up)


def test_lozenge_summary():
    s = lattice_by_name("lozenge").summary()
    assert s["irr"] == 2 and s["distributive"] is True and s["G"] == 4


def test_named_shapes():
    assert lattice_by_name("m3").n == 5 and not lattice_by_name("m3").is_distributive()
    assert lattice_by_name("n5").n == 5 and not lattice_by_name("n5").is_distributive()
    assert lattice_by_name("c").n == 5 and lattice_by_name("c").is_distributive()
    assert lattice_by_name("p32").n == 6
    assert lattice_by_name("chain3").n == 4
    assert lattice_by_name("boolean3").n == 8
    with pytest.raises(ValidationError):
        lattice_by_name("nope")


def test_not_a_lattice_names_a_witness():
    P = Poset.from_pairs(["0", "a", "b", "c", "d"], [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)], close=True)
    with pytest.raises(NotALattice) as exc:
        build(P)
    assert exc.value.witness is not None


def test_lattice_json_roundtrip():
    L = lattice_by_name("n5").lattice
    L2 = lattice_from_json(L.to_json())
    assert L2.same_as(L)


def test_marked_lattice_rejects_wrong_marks():
    L = total_order(2)
    with pytest.raises(Exception):
        MarkedLattice(L, irr=[0, 1])


def test_r_and_s_on_chain():
    T = MarkedLattice(total_order(3))
    # r drops one step, s climbs one step among irreducibles
    assert [T.r(t) for t in range(4)] == [0, 0, 1, 2]
    assert T.s(1) == 2 and T.s(3) == 3
    assert T.r_inf(3) == 0


def test_G_and_Gamma_partition_catalog():
    for name, T in CAT:
        part = T.g_partition()
        assert part["G"] | part["Gamma"] == frozenset(range(T.n))
        assert not part["G"] & part["Gamma"]
        assert set(T.irr) <= part["G"]


def test_gamma_sets():
    assert len(lattice_by_name("p32").Gamma) == 1
    assert len(lattice_by_name("p33").Gamma) == 3
    assert len(lattice_by_name("p33").G) == 6
    assert len(lattice_by_name("lozenge").Gamma) == 0
    for k in range(1, 5):
        T = lattice_by_name(f"chain{k}")
        assert T.bulbs == frozenset({T.bottom})


def test_dot_marks_irreducibles_and_bulbs():
    dot = lattice_by_name("chain2").to_dot()
    assert dot.count("shape=circle, style=solid") == 2
    assert dot.count("doublecircle") == 1
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
    # stable under re-runs
    assert dot == lattice_by_name("chain2").to_dot()


def test_opposite_of_c_is_cop():
    cop = lattice_by_name("cop")
    assert cop.irr_poset.isomorphic_to(v_poset().opposite())


def test_add_bounds_of_antichain_is_m3():
    assert add_bounds(antichain(3)).n == 5
    assert MarkedLattice(subset_lattice(3)).irr_poset.isomorphic_to(antichain(3))
