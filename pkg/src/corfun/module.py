"""The fundamental module P_E f_R: free on the permutations of E, with the
relation action Q . Delta_sigma f_R = Delta_{tau sigma} f_R or 0."""
from __future__ import annotations

import itertools
import random

from .errors import InvariantFailure, ValidationError
from .lattice import ideal_lattice
from .poset import Poset
from .relation import GroundSet, Permutation, Relation, all_relations, compose, conjugate, delta


def all_permutations(n):
    return [Permutation(p) for p in itertools.permutations(range(n))]


class PEfRElement:
    """sum of c_sigma * Delta_sigma f_R, stored as {Permutation: c}."""

    def __init__(self, poset: Poset, terms=None):
        self.poset = poset
        out = {}
        for s, c in (terms or {}).items():
            if not isinstance(s, Permutation):
                s = Permutation(tuple(s))
            if len(s) != poset.n:
                raise ValidationError("permutation size differs from |E|")
            if c:
                out[s] = out.get(s, 0) + c
        self.terms = {s: c for s, c in out.items() if c}

    @classmethod
    def unit(cls, poset):
        return cls(poset, {Permutation.identity(poset.n): 1})

    @classmethod
    def basis(cls, poset, sigma):
        return cls(poset, {sigma: 1})

    def __add__(self, other):
        t = dict(self.terms)
        for s, c in other.terms.items():
            t[s] = t.get(s, 0) + c
        return PEfRElement(self.poset, t)

    def __eq__(self, other):
        return isinstance(other, PEfRElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*D{list(s.images)}" for s, c in sorted(self.terms.items(), key=lambda kv: kv[0].images))


class _Tables:
    """Per-poset caches: permutations, their graphs, and the conjugates of R."""

    def __init__(self, P: Poset):
        n = P.n
        self.E = P.elements
        self.perms = all_permutations(n)
        self.delta_inv = {t: delta(t.inverse(), self.E) for t in self.perms}
        self.diag = Relation.identity(self.E)
        self.conj = {s: conjugate(s, P.leq) for s in self.perms}


_TABLES: dict = {}


def _tables(P: Poset) -> _Tables:
    key = (P.n, tuple(P.up))
    tab = _TABLES.get(key)
    if tab is None:
        tab = _TABLES[key] = _Tables(P)
    return tab


def find_tau(Q: Relation, sigma: Permutation, P: Poset):
    """All tau with Delta <= Delta_{tau^-1} Q <= sigma-conjugate of R (at most one expected)."""
    tab = _tables(P)
    upper = tab.conj[sigma]
    hits = []
    for tau in tab.perms:
        D = compose(tab.delta_inv[tau], Q)
        if tab.diag <= D and D <= upper:
            hits.append(tau)
    return hits


def act_PEfR(Q: Relation, m: PEfRElement) -> PEfRElement:
    P = m.poset
    if len(Q.source) != P.n or len(Q.target) != P.n:
        raise ValidationError("relation is not on E")
    out = {}
    for sigma, c in m.terms.items():
        hits = find_tau(Q, sigma, P)
        if len(hits) > 1:
            raise InvariantFailure(f"{len(hits)} permutations tau satisfy the inclusions")
        if hits:
            rho = hits[0] * sigma
            out[rho] = out.get(rho, 0) + c
    return PEfRElement(P, out)


def theta_image(Q: Relation, sigma: Permutation, P: Poset, T=None):
    """Q acting on d_sigma = iota o sigma^-1 in F_T(E), reduced modulo H_T.

    Returns the permutation rho with class d_rho, or None when the class is 0."""
    from .functor import act
    T = T or ideal_lattice(P)
    n = P.n
    iota = T.irr
    inv = sigma.inverse()
    d_sigma = tuple(iota[inv(e)] for e in range(n))
    img = act(Q, d_sigma, T)
    pos = T.irr_pos
    if not all(t in pos for t in img):
        return None
    rho_inv = tuple(pos[t] for t in img)
    if sorted(rho_inv) != list(range(n)):
        return None
    return Permutation(rho_inv).inverse()


def theta_transport_check(P: Poset, relations=None) -> bool:
    """Compare Q . d_sigma in (F_T/H_T)(E) with act_PEfR(Q, Delta_sigma f_{R^op})."""
    if P.n > 5:
        raise ValidationError("theta transport check is capped at |E| <= 5")
    T = ideal_lattice(P)
    Pop = P.opposite()
    perms = all_permutations(P.n)
    rels = relations if relations is not None else all_relations(P.elements)
    for Q in rels:
        for sigma in perms:
            rho = theta_image(Q, sigma, P, T)
            want = act_PEfR(Q, PEfRElement.basis(Pop, sigma))
            got = PEfRElement(Pop, {rho: 1} if rho is not None else {})
            if got != want:
                return False
    return True


def module_axiom_check(P: Poset, samples=10_000, seed=0) -> dict:
    """act(Q', act(Q, m)) == act(Q'Q, m); exhaustive when the pair count fits in `samples`."""
    E = P.elements
    n = P.n
    nrel = 1 << (n * n)
    perms = all_permutations(n)
    if nrel * nrel <= samples:
        rels = list(all_relations(E))
        pairs = itertools.product(rels, rels)
        mode = "exhaustive"
    else:
        rng = random.Random(seed)

        def rnd():
            return Relation(E, E, [rng.randrange(1 << n) for _ in range(n)])
        pairs = ((rnd(), rnd()) for _ in range(samples))
        mode = "sampled"
    count = bad = 0
    for Q, Q2 in pairs:
        QQ = compose(Q2, Q)
        for sigma in perms:
            m = PEfRElement.basis(P, sigma)
            if act_PEfR(Q2, act_PEfR(Q, m)) != act_PEfR(QQ, m):
                bad += 1
        count += 1
    return {"mode": mode, "pairs": count, "failures": bad, "ok": bad == 0}


def fixes_unit(P: Poset) -> dict:
    """Orders Q with Delta <= Q <= R fix f_R; relations outside R do not."""
    E = P.elements
    unit = PEfRElement.unit(P)
    diag = Relation.identity(E)
    inside = outside = 0
    ok = True
    for Q in all_relations(E):
        if not diag <= Q:
            continue
        fixed = act_PEfR(Q, unit) == unit
        if Q <= P.leq:
            inside += 1
            ok &= fixed
        else:
            outside += 1
            ok &= not fixed
    return {"inside": inside, "outside": outside, "ok": ok}


def rank_consistency(P: Poset) -> bool:
    """|Sigma_E| equals |B_E| for I_down(E, R^op)."""
    from math import factorial
    from .functor import basis_BX
    return len(basis_BX(ideal_lattice(P.opposite()), P.n)) == factorial(P.n)


def module_report(P: Poset, samples=10_000) -> dict:
    rep = {"E": P.n}
    rep["axiom"] = module_axiom_check(P, samples=samples)
    rep["unit"] = fixes_unit(P) if P.n <= 3 else None
    rep["theta"] = theta_transport_check(P) if P.n <= 3 else None
    rep["rank"] = rank_consistency(P)
    rep["ok"] = (rep["axiom"]["ok"] and (rep["unit"] is None or rep["unit"]["ok"])
                 and rep["theta"] is not False and rep["rank"])
    return rep
