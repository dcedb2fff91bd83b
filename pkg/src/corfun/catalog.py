"""Named lattices used as fixtures and addressable from the command line."""
from __future__ import annotations

import re

from .errors import ValidationError
from .lattice import (MarkedLattice, add_bounds, build, ideal_lattice, m3, n5, opposite_lattice,
                      product, subset_lattice, total_order)
from .poset import Poset, v_poset

CATALOG_NAMES = ("lozenge", "m3", "n5", "c", "cop", "p32", "chainN", "booleanN")


def forest_lattice(parents) -> MarkedLattice:
    """E a forest (parents[i] is the parent of i or None; roots are minimal) plus 0 and 1."""
    n = len(parents)
    pairs = []
    for i in range(n):
        j = parents[i]
        while j is not None:
            pairs.append((j, i))  # ancestors sit below
            j = parents[j]
    P = Poset.from_pairs([f"f{i}" for i in range(n)], pairs)
    return MarkedLattice(add_bounds(P))


def lattice_by_name(name: str) -> MarkedLattice:
    name = name.strip().lower()
    if name == "lozenge":
        return MarkedLattice(subset_lattice(2))
    if name == "m3":
        return MarkedLattice(m3())
    if name == "n5":
        return MarkedLattice(n5())
    if name == "c":
        return ideal_lattice(v_poset())
    if name == "cop":
        return MarkedLattice(opposite_lattice(ideal_lattice(v_poset()).lattice))
    if name == "p32":
        return MarkedLattice(product(total_order(2), total_order(1)))
    m = re.fullmatch(r"chain(\d+)", name)
    if m:
        return MarkedLattice(total_order(int(m.group(1))))
    m = re.fullmatch(r"boolean(\d+)", name)
    if m:
        return MarkedLattice(subset_lattice(int(m.group(1))))
    if name == "p33":
        return MarkedLattice(product(total_order(2), total_order(2)))
    if name == "p42":
        return MarkedLattice(product(total_order(3), total_order(1)))
    if name == "n5x2":
        return MarkedLattice(product(n5(), total_order(1)))
    m = re.fullmatch(r"forest:([0-9n,]+)", name)
    if m:
        parents = [None if p == "n" else int(p) for p in m.group(1).split(",")]
        return forest_lattice(parents)
    raise ValidationError(f"unknown lattice name {name!r}; known: {', '.join(CATALOG_NAMES)}")


def catalog(max_chain=4):
    """(name, MarkedLattice) pairs for the standard fixtures."""
    out = [(n, lattice_by_name(n)) for n in ("lozenge", "m3", "n5", "c", "cop", "p32")]
    out += [(f"chain{k}", lattice_by_name(f"chain{k}")) for k in range(max_chain + 1)]
    return out


def gamma_fixtures():
    """Lattices whose Gamma set has two or more elements."""
    return [(n, lattice_by_name(n)) for n in ("p33", "p42", "n5x2")]


__all__ = ["lattice_by_name", "catalog", "forest_lattice", "build", "CATALOG_NAMES"]
