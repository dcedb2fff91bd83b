"""Finite lattices with join/meet tables, irreducibles, the r/s operators, bulbs and G."""
from __future__ import annotations

import itertools
import json
from functools import cached_property, reduce

from .errors import InvariantFailure, NotALattice, ValidationError
from .poset import Poset, _bits, popcount
from .relation import GroundSet, Relation, classify


class Lattice:
    def __init__(self, poset: Poset, join, meet, bottom: int, top: int):
        self.poset = poset
        self.join = tuple(tuple(r) for r in join)
        self.meet = tuple(tuple(r) for r in meet)
        self.bottom = bottom
        self.top = top

    @property
    def n(self):
        return self.poset.n

    def __len__(self):
        return self.poset.n

    @property
    def labels(self):
        return self.poset.elements.labels

    def le(self, a, b):
        return self.poset.le(a, b)

    def lt(self, a, b):
        return a != b and self.poset.le(a, b)

    def join_all(self, items):
        return reduce(lambda a, b: self.join[a][b], items, self.bottom)

    def meet_all(self, items):
        return reduce(lambda a, b: self.meet[a][b], items, self.top)

    def check_laws(self):
        """Raise InvariantFailure on the first broken lattice law."""
        J, M, rng = self.join, self.meet, range(self.n)
        for a in rng:
            if J[a][a] != a or M[a][a] != a:
                raise InvariantFailure(f"idempotence fails at {a}")
            for b in rng:
                if J[a][b] != J[b][a] or M[a][b] != M[b][a]:
                    raise InvariantFailure(f"commutativity fails at {a},{b}")
                if J[a][M[a][b]] != a or M[a][J[a][b]] != a:
                    raise InvariantFailure(f"absorption fails at {a},{b}")
                if self.le(a, b) != (J[a][b] == b) or self.le(a, b) != (M[a][b] == a):
                    raise InvariantFailure(f"order/join mismatch at {a},{b}")
                for c in rng:
                    if J[J[a][b]][c] != J[a][J[b][c]] or M[M[a][b]][c] != M[a][M[b][c]]:
                        raise InvariantFailure(f"associativity fails at {a},{b},{c}")
        return True

    def is_distributive(self) -> bool:
        J, M, rng = self.join, self.meet, range(self.n)
        return all(M[t][J[r][s]] == J[M[t][r]][M[t][s]] for t in rng for r in rng for s in rng)

    def covers(self):
        """Pairs (a, b) with b covering a."""
        out = []
        for a in range(self.n):
            for b in range(self.n):
                if self.lt(a, b) and not any(self.lt(a, c) and self.lt(c, b) for c in range(self.n)):
                    out.append((a, b))
        return out

    def irreducible_indices(self):
        out = []
        for e in range(self.n):
            if e == self.bottom:
                continue
            below = [t for t in range(self.n) if self.lt(t, e)]
            if self.join_all(below) != e:  # strict down-set has a unique maximal element
                out.append(e)
        return out

    def same_as(self, other: "Lattice") -> bool:
        return self.n == other.n and self.poset.leq == other.poset.leq

    def to_json(self):
        d = self.poset.to_json()
        d["validate"] = True
        return d

    def __repr__(self):
        return f"Lattice({self.n} elements)"


def build(order, labels=None) -> Lattice:
    """Lattice from an order (Relation or Poset); NotALattice names a bad pair."""
    if isinstance(order, Poset):
        P = order
    else:
        if not classify(order)["is_order"]:
            raise ValidationError("relation is not an order")
        P = Poset(order.source, order)
    if labels is not None:
        P = P.relabel(labels)
    n = P.n
    if n == 0:
        raise NotALattice("empty poset has no bottom element", witness=())
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            ub = P.up[a] & P.up[b]
            least = [c for c in _bits(ub) if P.down[c] & ub == 1 << c]
            lb = P.down[a] & P.down[b]
            greatest = [c for c in _bits(lb) if P.up[c] & lb == 1 << c]
            if len(least) != 1:
                lab = P.elements.labels
                raise NotALattice(f"no join for {{{lab[a]},{lab[b]}}}", witness=(a, b))
            if len(greatest) != 1:
                lab = P.elements.labels
                raise NotALattice(f"no meet for {{{lab[a]},{lab[b]}}}", witness=(a, b))
            join[a][b] = join[b][a] = least[0]
            meet[a][b] = meet[b][a] = greatest[0]
    full = (1 << n) - 1
    bottom = [c for c in range(n) if P.up[c] == full]
    top = [c for c in range(n) if P.down[c] == full]
    if len(bottom) != 1 or len(top) != 1:
        raise NotALattice("missing bottom or top", witness=())
    return Lattice(P, join, meet, bottom[0], top[0])


def lattice_from_json(data) -> Lattice:
    if isinstance(data, str):
        data = json.loads(data)
    P = Poset.from_json(data)
    L = build(P)
    if data.get("validate"):
        L.check_laws()
    return L


class MarkedLattice:
    """A lattice with its irreducible elements E marked.

    irr[i] is the lattice index of the i-th irreducible; irr_poset is the
    induced (full) order on those, in the same order.
    """

    def __init__(self, lattice: Lattice, irr=None, irr_labels=None):
        self.lattice = lattice
        found = lattice.irreducible_indices()
        if irr is None:
            irr = found
        irr = list(irr)
        if sorted(irr) != sorted(found):
            raise InvariantFailure("marked elements are not exactly the join-irreducibles")
        self.irr = irr
        labels = irr_labels or [lattice.labels[t] for t in irr]
        k = len(irr)
        self.irr_poset = Poset.from_pairs(labels, [(i, j) for i in range(k) for j in range(k)
                                                   if lattice.le(irr[i], irr[j])])
        self.irr_mask = sum(1 << t for t in irr)
        self.irr_pos = {t: i for i, t in enumerate(irr)}

    # pass-through conveniences
    @property
    def n(self):
        return self.lattice.n

    def __len__(self):
        return self.lattice.n

    @property
    def labels(self):
        return self.lattice.labels

    @property
    def bottom(self):
        return self.lattice.bottom

    @property
    def top(self):
        return self.lattice.top

    @property
    def join(self):
        return self.lattice.join

    @property
    def meet(self):
        return self.lattice.meet

    def le(self, a, b):
        return self.lattice.le(a, b)

    def lt(self, a, b):
        return self.lattice.lt(a, b)

    def is_irreducible(self, t) -> bool:
        return bool(self.irr_mask >> t & 1)

    @cached_property
    def down_on_e(self):
        """down_on_e[t] = bitmask over E (irr positions) of {e | e <= t}."""
        out = []
        for t in range(self.n):
            m = 0
            for i, e in enumerate(self.irr):
                if self.le(e, t):
                    m |= 1 << i
            out.append(m)
        return tuple(out)

    def is_distributive(self):
        return self.lattice.is_distributive()

    # r and s
    def r(self, t):
        return self.lattice.join_all([u for u in range(self.n) if self.lt(u, t)])

    def s(self, t):
        return self.lattice.meet_all([e for e in self.irr if self.lt(t, e)])

    def r_inf(self, t):
        while True:
            u = self.r(t)
            if u == t:
                return t
            t = u

    def s_inf(self, t):
        while True:
            u = self.s(t)
            if u == t:
                return t
            t = u

    def rs_operators(self, t):
        return {"r": self.r(t), "s": self.s(t), "r_inf": self.r_inf(t), "s_inf": self.s_inf(t)}

    @cached_property
    def meet_closure_of_e(self):
        """Meets of all subsets of E, including the empty meet (top)."""
        seen = {self.top}
        frontier = [self.top]
        while frontier:
            nxt = []
            for t in frontier:
                for e in self.irr:
                    m = self.meet[t][e]
                    if m not in seen:
                        seen.add(m)
                        nxt.append(m)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def _partition(self):
        meet_e = self.meet_closure_of_e
        bulbs = set()
        for e in self.irr:
            if self.s(e) == e:
                t = self.r_inf(e)
                if t not in meet_e:
                    bulbs.add(t)
        G = set(meet_e) | bulbs
        # second route: G = E plus the fixed points of r_inf o s_inf
        G2 = set(self.irr) | {a for a in range(self.n) if self.r_inf(self.s_inf(a)) == a}
        if G != G2:
            raise InvariantFailure(f"two descriptions of G disagree: {sorted(G)} vs {sorted(G2)}")
        gamma = set(range(self.n)) - G
        return {"meetE": frozenset(meet_e), "bulbs": frozenset(bulbs),
                "G": frozenset(G), "Gamma": frozenset(gamma)}

    def g_partition(self):
        return dict(self._partition)

    @property
    def G(self):
        return self._partition["G"]

    @property
    def Gamma(self):
        return self._partition["Gamma"]

    @property
    def bulbs(self):
        return self._partition["bulbs"]

    def sigma_set(self, t):
        """[t,1]∩E if t in E, else ]s_inf(t),1]∩E, as a list of lattice indices."""
        if self.is_irreducible(t):
            return [e for e in self.irr if self.le(t, e)]
        base = self.s_inf(t)
        return [e for e in self.irr if self.lt(base, e)]

    def opposite(self) -> "MarkedLattice":
        return MarkedLattice(opposite_lattice(self.lattice))

    def to_dot(self, name="T") -> str:
        part = self._partition
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for t in range(self.n):
            lab = self.labels[t]
            if self.is_irreducible(t):
                shape = 'shape=circle, style=solid, label=""'
            elif t in part["bulbs"]:
                shape = 'shape=doublecircle, style=filled, fillcolor=black, label="", width=0.15'
            else:
                shape = 'shape=circle, style=filled, fillcolor=black, label="", width=0.15'
            lines.append(f'  n{t} [{shape}, xlabel="{lab}"];')
        for a, b in self.lattice.covers():
            lines.append(f"  n{a} -> n{b} [arrowhead=none];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        part = self._partition
        return {
            "size": self.n,
            "irr": len(self.irr),
            "irr_elements": [self.labels[e] for e in self.irr],
            "distributive": self.is_distributive(),
            "G": len(part["G"]),
            "bulbs": sorted(self.labels[t] for t in part["bulbs"]),
            "Gamma": sorted(self.labels[t] for t in part["Gamma"]),
        }

    def __repr__(self):
        return f"MarkedLattice({self.n} elements, {len(self.irr)} irreducible)"


def irreducibles(T: Lattice) -> MarkedLattice:
    return MarkedLattice(T)


def _ideal_label(P: Poset, mask):
    lab = P.elements.labels
    return "{" + ",".join(lab[i] for i in _bits(mask)) + "}"


def lattice_of_sets(P: Poset, sets, close=None, labels=None) -> Lattice:
    """Lattice of the given subsets of P (bitmasks) under inclusion.

    Meet is intersection; join is close(union), close defaulting to identity.
    """
    sets = list(sets)
    idx = {m: i for i, m in enumerate(sets)}
    n = len(sets)
    close = close or (lambda m: m)
    labels = labels or [_ideal_label(P, m) for m in sets]
    order = Poset.from_pairs(labels, [(i, j) for i in range(n) for j in range(n)
                                      if sets[i] & ~sets[j] == 0])
    join = [[idx[close(sets[i] | sets[j])] for j in range(n)] for i in range(n)]
    meet = [[idx[sets[i] & sets[j]] for j in range(n)] for i in range(n)]
    bottom = min(range(n), key=lambda i: popcount(sets[i]))
    top = max(range(n), key=lambda i: popcount(sets[i]))
    L = Lattice(order, join, meet, bottom, top)
    L.sets = sets
    return L


def ideal_lattice(P: Poset) -> MarkedLattice:
    """I_down(P): lower ideals under inclusion, with E marked via principal ideals."""
    ideals = P.lower_ideals()
    L = lattice_of_sets(P, ideals)
    idx = {m: i for i, m in enumerate(ideals)}
    irr = [idx[P.down[e]] for e in range(P.n)]
    M = MarkedLattice(L, irr=irr, irr_labels=list(P.elements.labels))
    M.ideals = ideals
    M.base_poset = P
    return M


def total_order(n: int) -> Lattice:
    """The chain 0 < 1 < ... < n."""
    P = Poset.from_pairs([str(i) for i in range(n + 1)],
                         [(i, j) for i in range(n + 1) for j in range(i, n + 1)])
    return build(P)


def subset_lattice(n: int) -> Lattice:
    sets = list(range(1 << n))
    sets.sort(key=lambda m: (popcount(m), m))
    labels = ["{" + ",".join(str(i + 1) for i in _bits(m)) + "}" for m in sets]
    return lattice_of_sets(Poset.from_pairs([str(i + 1) for i in range(n)], []), sets, labels=labels)


def product(T1: Lattice, T2: Lattice) -> Lattice:
    pairs = list(itertools.product(range(T1.n), range(T2.n)))
    idx = {p: i for i, p in enumerate(pairs)}
    labels = [f"({T1.labels[a]},{T2.labels[b]})" for a, b in pairs]
    order = Poset.from_pairs(labels, [(idx[p], idx[q]) for p in pairs for q in pairs
                                      if T1.le(p[0], q[0]) and T2.le(p[1], q[1])])
    join = [[idx[(T1.join[p[0]][q[0]], T2.join[p[1]][q[1]])] for q in pairs] for p in pairs]
    meet = [[idx[(T1.meet[p[0]][q[0]], T2.meet[p[1]][q[1]])] for q in pairs] for p in pairs]
    return Lattice(order, join, meet, idx[(T1.bottom, T2.bottom)], idx[(T1.top, T2.top)])


def opposite_lattice(T: Lattice) -> Lattice:
    return Lattice(T.poset.opposite(), T.meet, T.join, T.top, T.bottom)


def add_bounds(P: Poset) -> Lattice:
    """P with a new bottom and top adjoined (must come out a lattice)."""
    n = P.n
    labels = ["0"] + list(P.elements.labels) + ["1"]
    pairs = [(0, i) for i in range(n + 2)] + [(i, n + 1) for i in range(n + 2)]
    pairs += [(a + 1, b + 1) for a, b in P.leq.pairs()]
    return build(Poset.from_pairs(labels, pairs))


def m3() -> Lattice:
    return add_bounds(Poset.from_pairs(["a", "b", "c"], []))


def n5() -> Lattice:
    """Pentagon: 0 < x < y < 1 and 0 < z < 1."""
    return add_bounds(Poset.from_pairs(["x", "y", "z"], [(0, 1)]))
