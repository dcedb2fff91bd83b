"""Forests, the graph of reduction sequences on a lattice, and the idempotents
h, v_B, u_B, u_T built from geodesics."""
from __future__ import annotations

import itertools
import random

from .errors import InvariantFailure, ValidationError
from .lattice import MarkedLattice
from .maps import FormalMapSum, commute, is_idempotent, product, sum_compose


class Forest:
    """Vertices 0..n-1, parent[x] = d(x) or None at a root."""

    def __init__(self, parent, labels=None):
        self.parent = list(parent)
        self.n = len(self.parent)
        self.labels = list(labels) if labels else [str(i) for i in range(self.n)]
        self.validate()

    def validate(self):
        for x in range(self.n):
            seen, y = set(), x
            while y is not None:
                if y in seen:
                    raise InvariantFailure(f"cycle through vertex {self.labels[x]}")
                seen.add(y)
                y = self.parent[y]

    @property
    def leaves(self):
        has_child = {p for p in self.parent if p is not None}
        return [x for x in range(self.n) if self.parent[x] is not None and x not in has_child]

    def edges(self):
        return [(x, self.parent[x]) for x in range(self.n) if self.parent[x] is not None]

    def geodesic(self, x):
        """(x, d(x), ..., root)."""
        out = [x]
        while self.parent[out[-1]] is not None:
            out.append(self.parent[out[-1]])
        return out

    def tau(self, A) -> tuple:
        """tau_A(x) = d(x) for edges (x,d(x)) in A (edges named by their source)."""
        return tuple(self.parent[x] if x in A else x for x in range(self.n))

    def edge_sets(self, B, interior=False):
        """S_B (unions of partial geodesics starting in some subset of B), or the
        interior version where every x in B starts a nonempty one."""
        B = list(B)
        choices = []
        for x in B:
            g = self.geodesic(x)
            lo = 1 if interior else 0
            choices.append([frozenset(g[:l]) for l in range(lo, len(g))])
        out = set()
        for combo in itertools.product(*choices):
            out.add(frozenset().union(*combo))
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def _check_leaves(self, B):
        leaves = set(self.leaves)
        bad = [x for x in B if x not in leaves]
        if bad:
            raise ValidationError(f"not leaves: {[self.labels[x] for x in bad]}")

    def v(self, B) -> FormalMapSum:
        self._check_leaves(B)
        terms = {}
        for A in self.edge_sets(B):
            f = self.tau(A)
            terms[f] = terms.get(f, 0) + (-1) ** len(A)
        return FormalMapSum(self.n, self.n, terms)

    def u(self, B) -> FormalMapSum:
        self._check_leaves(B)
        terms = {}
        for A in self.edge_sets(B, interior=True):
            f = self.tau(A)
            terms[f] = terms.get(f, 0) + (-1) ** (len(B) + len(A))
        return FormalMapSum(self.n, self.n, terms)

    def h(self, x) -> FormalMapSum:
        return h_sequence(self.n, self.geodesic(x))

    def to_dot(self, highlight=(), name="G") -> str:
        hl = set(highlight) if highlight else set(self.leaves)
        lines = [f"digraph {name} {{"]
        for x in range(self.n):
            style = ', style=filled, fillcolor=lightgray, shape=box' if x in hl else ''
            lines.append(f'  v{x} [label="{self.labels[x]}"{style}];')
        for x, y in self.edges():
            lines.append(f"  v{x} -> v{y};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def h_sequence(n, seq) -> FormalMapSum:
    """h = sum_i (-1)^i [a_0..a_i]."""
    terms = {}
    for i in range(len(seq)):
        f = FormalMapSum.chain_map(n, seq[:i + 1])
        terms[f] = terms.get(f, 0) + (-1) ** i
    return FormalMapSum(n, n, terms)


def kappa_sequence(n, seq) -> FormalMapSum:
    """sum_{i>=1} (-1)^{i-1} [a_0..a_i]  (= id - h)."""
    terms = {}
    for i in range(1, len(seq)):
        f = FormalMapSum.chain_map(n, seq[:i + 1])
        terms[f] = terms.get(f, 0) + (-1) ** (i - 1)
    return FormalMapSum(n, n, terms)


def geodesic_idempotents(F: Forest, B) -> dict:
    B = list(B)
    F._check_leaves(B)
    return {
        "h": {x: F.h(x) for x in B},
        "v_x": {x: F.v([x]) for x in B},
        "u_x": {x: F.u([x]) for x in B},
        "v_B": F.v(B),
        "u_B": F.u(B),
    }


def reduction_sequence(T: MarkedLattice, a):
    """a < s(a) < ... < s^r(a) < b = r_inf(s_inf(a)) for a in Gamma."""
    if a not in T.Gamma:
        raise ValidationError(f"{T.labels[a]} is not in Gamma")
    b = T.r_inf(T.s_inf(a))
    seq = [a]
    cur = a
    while True:
        nxt = T.s(cur)
        if T.lt(nxt, b):
            if not T.is_irreducible(nxt):
                raise InvariantFailure(f"reduction step {T.labels[nxt]} is not irreducible")
            seq.append(nxt)
            cur = nxt
        else:
            seq.append(b)
            break
    for x, y in zip(seq, seq[1:]):
        if not T.lt(x, y):
            raise InvariantFailure("reduction sequence is not increasing")
    return seq


def graph_of_lattice(T: MarkedLattice):
    """The forest on T whose edges are consecutive pairs of reduction sequences."""
    parent = [None] * T.n
    seqs = {}
    for a in sorted(T.Gamma):
        seq = reduction_sequence(T, a)
        seqs[a] = seq
        for x, y in zip(seq, seq[1:]):
            if parent[x] is not None and parent[x] != y:
                raise InvariantFailure(f"vertex {T.labels[x]} gets two outgoing edges")
            parent[x] = y
    F = Forest(parent, labels=list(T.labels))
    if set(F.leaves) != set(T.Gamma):
        raise InvariantFailure("leaves of the reduction forest differ from Gamma")
    for a, seq in seqs.items():
        if F.geodesic(a) != seq:
            raise InvariantFailure("geodesic differs from the reduction sequence")
    return F, seqs


def u_a(T: MarkedLattice, a, seqs=None) -> FormalMapSum:
    seq = seqs[a] if seqs else reduction_sequence(T, a)
    return kappa_sequence(T.n, seq)


def u_T(T: MarkedLattice, check=True) -> FormalMapSum:
    """Product of u_a over a in Gamma (ascending order)."""
    F, seqs = graph_of_lattice(T)
    gam = sorted(T.Gamma)
    factors = [kappa_sequence(T.n, seqs[a]) for a in gam]
    if check:
        for i, x in enumerate(factors):
            for y in factors[i + 1:]:
                if not commute(x, y):
                    raise InvariantFailure("the u_a do not commute")
    out = product(factors, T.n)
    if check:
        if not is_idempotent(out):
            raise InvariantFailure("u_T is not idempotent")
        if gam and out != F.u(gam):
            raise InvariantFailure("u_T differs from its edge-set expansion")
    return out


def random_forest(n, rng: random.Random):
    """Uniform parent choice along a random topological order."""
    order = list(range(n))
    rng.shuffle(order)
    parent = [None] * n
    for k in range(1, n):
        if rng.random() < 0.8:
            parent[order[k]] = order[rng.randrange(k)]
    return Forest(parent)


def forest_suite(F: Forest) -> dict:
    """Every leaf-idempotent identity on one forest; returns name -> bool."""
    leaves = F.leaves
    n = F.n
    out = {}
    vx = {x: F.v([x]) for x in leaves}
    ux = {x: F.u([x]) for x in leaves}
    out["h_equals_v"] = all(F.h(x) == vx[x] for x in leaves)
    out["v_idem"] = all(is_idempotent(v) for v in vx.values())
    out["u_idem"] = all(is_idempotent(u) for u in ux.values())
    out["u_is_id_minus_v"] = all(ux[x] == FormalMapSum.identity(n) - vx[x] for x in leaves)
    out["v_commute"] = all(commute(vx[x], vx[y]) for x, y in itertools.combinations(leaves, 2))
    out["u_commute"] = all(commute(ux[x], ux[y]) for x, y in itertools.combinations(leaves, 2))
    ok_v = ok_u = ok_union = True
    subsets = [list(c) for k in range(len(leaves) + 1) for c in itertools.combinations(leaves, k)]
    if len(subsets) > 64:
        subsets = subsets[:64]
    for B in subsets:
        vB, uB = F.v(B), F.u(B)
        if vB != product([vx[x] for x in B], n):
            ok_v = False
        if uB != product([ux[x] for x in B], n):
            ok_u = False
        if not is_idempotent(uB) or not is_idempotent(vB):
            ok_u = False
    for B, C in itertools.combinations(subsets[:16], 2):
        if sum_compose(F.v(B), F.v(C)) != F.v(sorted(set(B) | set(C))):
            ok_union = False
    out["v_B_product"] = ok_v
    out["u_B_product"] = ok_u
    out["v_union"] = ok_union
    return out
