"""Regression identities |T|^x = sum of fundamental ranks, and a quick invariant sweep.

Each catalog lattice T decomposes F_T(X) into fundamental functors; the
coefficient of S_n (the total order on n points) is the number of strict chains
u_0 < ... < u_n = top, and the remaining summands are rank_formula values of the
listed posets with their multiplicities.
"""
from __future__ import annotations

import random

from .catalog import lattice_by_name
from .functor import rank_formula
from .poset import antichain, chain_plus_point, lambda_poset, v_poset, zigzag4
from .total_order import chain_counts, lattice_height, s_n_rank

# the extra (non total order) summands: (poset, multiplicity)
DECOMPOSITIONS = {
    "lozenge": [(antichain, 2, 1)],
    "m3": [(antichain, 2, 3), (antichain, 3, 1)],
    "n5": [(antichain, 2, 2), (chain_plus_point, None, 1)],
    "c": [(antichain, 2, 1), (v_poset, None, 1)],
    # the last block of 3x2 is a uniserial piece: two copies of chain+point and one zigzag
    "p32": [(antichain, 2, 3), (v_poset, None, 1), (lambda_poset, None, 1),
            (chain_plus_point, None, 2), (zigzag4, None, 1)],
}


def _poset(factory, arg):
    return factory(arg) if arg is not None else factory()


def summands(name, x):
    """List of (label, coefficient, rank) whose weighted sum should be |T|^x."""
    T = lattice_by_name(name)
    h = lattice_height(T)
    counts = chain_counts(T, h)
    out = [(f"S_{n}", counts[n], s_n_rank(n, x)) for n in range(h + 1)]
    for factory, arg, mult in DECOMPOSITIONS[name]:
        P = _poset(factory, arg)
        label = factory.__name__ + (str(arg) if arg is not None else "")
        out.append((label, mult, rank_formula(P, x)))
    return T, out


def decomposition_identities(x_max=5):
    rows = []
    for name in DECOMPOSITIONS:
        for x in range(x_max + 1):
            T, parts = summands(name, x)
            lhs = T.n ** x
            rhs = sum(c * r for _, c, r in parts)
            rows.append({"example": name, "x": x, "lhs": lhs, "rhs": rhs, "ok": lhs == rhs,
                         "parts": parts})
    return rows


def invariants(seed=0) -> dict:
    """A fast sweep over the main cross-checks; name -> bool."""
    from .catalog import catalog
    from .forest import forest_suite, random_forest, u_T
    from .functor import (basis_BX, gamma_T, iota, order_relation, act_vector, rank_bruteforce,
                          star)
    from .lattice import ideal_lattice
    from .module import theta_transport_check
    from .quotients import K_of, sandwich_check
    from .total_order import structure_check

    rng = random.Random(seed)
    out = {}
    cat = catalog(max_chain=3)
    out["ranks_x<=3"] = all(rank_bruteforce(None, T, x) == rank_formula(T.irr_poset, x)
                            == len(basis_BX(T, x)) for _, T in cat for x in range(3))
    out["gamma_is_star_iota"] = all(gamma_T(T) == star(iota(T), T) for _, T in cat)
    out["R_fixes_gamma"] = all(act_vector(order_relation(T), gamma_T(T)) == gamma_T(T) for _, T in cat)
    out["u_T_checks"] = all(u_T(T, check=True) is not None for _, T in cat)
    out["forests"] = all(all(forest_suite(random_forest(rng.randint(1, 7), rng)).values())
                         for _ in range(10))
    out["end_algebra"] = all(structure_check(n)["ok"] for n in range(4))
    out["sandwich"] = all(all(sandwich_check(T).values()) for _, T in cat)
    out["G_invariance"] = all(len(ideal_lattice(T.irr_poset).G) == len(K_of(T.irr_poset).G)
                              for _, T in cat)
    out["theta"] = all(theta_transport_check(P) for P in (antichain(2), v_poset().opposite()))
    return out
