"""Closure operations on I_down(E,R), the lattices L(E,R) and K(E,R), and the
join-preserving maps between a lattice generated by E and these two."""
from __future__ import annotations

import itertools

from .errors import InvariantFailure, ValidationError
from .lattice import Lattice, MarkedLattice, build, ideal_lattice, lattice_of_sets
from .poset import Poset, _bits, popcount


class ClosureOperation:
    """A closure A -> close(A) on lower ideals of P which fixes principal ideals."""

    def __init__(self, P: Poset, close, name="closure"):
        self.poset = P
        self._close = close
        self.name = name
        self.ideals = P.lower_ideals()
        self.table = {A: close(A) for A in self.ideals}

    def __call__(self, A: int) -> int:
        return self.table[A]

    def violations(self):
        """List of broken laws (empty when this is a valid closure operation)."""
        P, bad = self.poset, []
        for A in self.ideals:
            c = self.table[A]
            if c not in self.table:
                bad.append(("not an ideal", A))
                continue
            if A & ~c:
                bad.append(("not extensive", A))
            if self.table[c] != c:
                bad.append(("not idempotent", A))
        for A in self.ideals:
            for B in self.ideals:
                if A & ~B == 0 and self.table[A] & ~self.table[B]:
                    bad.append(("not monotone", (A, B)))
        for e in range(P.n):
            if self.table[P.down[e]] != P.down[e]:
                bad.append(("moves a principal ideal", P.down[e]))
        return bad

    def verify(self):
        bad = self.violations()
        if bad:
            raise ValidationError(f"{self.name}: {bad[0][0]} at {bad[0][1]}")
        return True

    def closed(self):
        return sorted({self.table[A] for A in self.ideals}, key=lambda m: (popcount(m), m))


def lbub_closure(P: Poset) -> ClosureOperation:
    def close(A):
        ub, _ = P.bounds(A)
        return P.bounds(ub)[1]
    return ClosureOperation(P, close, "LbUb")


def k_closure(P: Poset) -> ClosureOperation:
    """LbUb, except that a nonprincipal A whose LbUb is ].,a] closes to ].,a[."""
    principal = {P.down[a]: a for a in range(P.n)}

    def close(A):
        ub, _ = P.bounds(A)
        bar = P.bounds(ub)[1]
        if A not in principal and bar in principal:
            a = principal[bar]
            return bar & ~(1 << a)
        return bar
    return ClosureOperation(P, close, "K")


class ClosedLattice(MarkedLattice):
    """Lattice of closed ideals; gens[e] is the index of the principal ideal of e."""

    def __init__(self, cl: ClosureOperation):
        P = cl.poset
        sets = cl.closed()
        lat = lattice_of_sets(P, sets, close=cl)
        super().__init__(lat)
        self.closure = cl
        self.base_poset = P
        self.sets = sets
        idx = {m: i for i, m in enumerate(sets)}
        self.index_of = idx
        self.gens = [idx[P.down[e]] for e in range(P.n)]

    def label_masks(self):
        return {i: m for i, m in enumerate(self.sets)}


def lattice_of_closed(cl: ClosureOperation) -> ClosedLattice:
    cl.verify()
    return ClosedLattice(cl)


def L_of(P: Poset) -> ClosedLattice:
    return lattice_of_closed(lbub_closure(P))


def K_of(P: Poset) -> ClosedLattice:
    return lattice_of_closed(k_closure(P))


class JoinMorphism:
    def __init__(self, source: Lattice, target: Lattice, images):
        self.source = source
        self.target = target
        self.images = tuple(images)

    def __call__(self, t):
        return self.images[t]

    def preserves_joins(self) -> bool:
        S, T, f = self.source, self.target, self.images
        if f[S.bottom] != T.bottom:
            return False
        if S.n <= 16:
            # every subset of the source
            for k in range(2, S.n + 1):
                for sub in itertools.combinations(range(S.n), k):
                    if f[S.join_all(sub)] != T.join_all(f[t] for t in sub):
                        return False
            return True
        return all(f[S.join[a][b]] == T.join[f[a]][f[b]] for a in range(S.n) for b in range(S.n))

    def is_surjective(self) -> bool:
        return set(self.images) == set(range(self.target.n))

    def adjoint(self) -> "JoinMorphism":
        """f^op: T -> S, f^op(t) = join of {s | f(s) <= t}; read on the opposite lattices."""
        S, T = self.source, self.target
        imgs = [S.join_all([s for s in range(S.n) if T.le(self.images[s], t)]) for t in range(T.n)]
        return JoinMorphism(T, S, imgs)

    def galois_ok(self) -> bool:
        g = self.adjoint()
        S, T = self.source, self.target
        return all(T.le(self.images[s], t) == S.le(s, g.images[t]) for s in range(S.n) for t in range(T.n))

    def compose(self, inner: "JoinMorphism") -> "JoinMorphism":
        return JoinMorphism(inner.source, self.target, [self.images[i] for i in inner.images])

    def fibers(self):
        out = {t: [] for t in range(self.target.n)}
        for s, t in enumerate(self.images):
            out[t].append(s)
        return out


def _generators(T, gens):
    if gens is not None:
        return list(gens)
    return list(T.irr)


def generated_poset(T: Lattice | MarkedLattice, gens) -> Poset:
    lat = T.lattice if isinstance(T, MarkedLattice) else T
    labels = [lat.labels[g] for g in gens]
    k = len(gens)
    return Poset.from_pairs(labels, [(i, j) for i in range(k) for j in range(k) if lat.le(gens[i], gens[j])])


def pi_T(T: MarkedLattice, gens=None):
    """pi_T: I_down(E) -> T, A -> join of A.  Returns (morphism, ideal lattice)."""
    lat = T.lattice if isinstance(T, MarkedLattice) else T
    gens = _generators(T, gens)
    P = generated_poset(T, gens)
    I = ideal_lattice(P)
    images = [lat.join_all([gens[e] for e in _bits(A)]) for A in I.ideals]
    return JoinMorphism(I.lattice, lat, images), I


def phi_psi(T: MarkedLattice, gens=None):
    """phi_T: T -> L(E) and psi_T: T -> K(E) (psi only when E is the irreducible set)."""
    lat = T.lattice if isinstance(T, MarkedLattice) else T
    gens = _generators(T, gens)
    P = generated_poset(T, gens)
    L = L_of(P)
    K = K_of(P)
    phi_images = []
    below = []
    for t in range(lat.n):
        above = sum(1 << i for i, g in enumerate(gens) if lat.le(t, g))
        phi_images.append(L.index_of[P.bounds(above)[1]])
        below.append(sum(1 << i for i, g in enumerate(gens) if lat.le(g, t)))
    phi = JoinMorphism(lat, L.lattice, phi_images)
    psi, reason = None, None
    irr = MarkedLattice(lat).irr
    if sorted(irr) != sorted(gens):
        reason = "generators are not the irreducible elements"
    else:
        kc = K.closure
        psi = JoinMorphism(lat, K.lattice, [K.index_of[kc(below[t])] for t in range(lat.n)])
    return {"phi": phi, "psi": psi, "psi_reason": reason, "L": L, "K": K}


def sandwich_check(T: MarkedLattice, gens=None) -> dict:
    """Check I_down(E) -> T -> L(E) (and -> K(E)) are join-preserving surjections
    whose composites are pi_L and pi_K."""
    pi, I = pi_T(T, gens)
    maps = phi_psi(T, gens)
    phi, psi, L, K = maps["phi"], maps["psi"], maps["L"], maps["K"]
    pi_L, _ = pi_T(L, L.gens)
    report = {
        "pi_joins": pi.preserves_joins(), "pi_onto": pi.is_surjective(),
        "phi_joins": phi.preserves_joins(), "phi_onto": phi.is_surjective(),
        "phi_pi_is_piL": phi.compose(pi).images == pi_L.images,
    }
    # fibers of pi have a greatest element {e | e <= t}
    gens_l = _generators(T, gens)
    lat = T.lattice if isinstance(T, MarkedLattice) else T
    ok = True
    for t, fib in pi.fibers().items():
        masks = [I.ideals[s] for s in fib]
        top = sum(1 << i for i, g in enumerate(gens_l) if lat.le(g, t))
        if top not in masks or any(m & ~top for m in masks):
            ok = False
    report["fiber_top"] = ok
    if psi is not None:
        pi_K, _ = pi_T(K, K.gens)
        report.update({"psi_joins": psi.preserves_joins(), "psi_onto": psi.is_surjective(),
                       "psi_pi_is_piK": psi.compose(pi).images == pi_K.images})
    return report


# --- brute-force side of the closure/lattice bijection -------------------

def all_closure_operations(P: Poset):
    """Every closure operation fixing principal ideals, via intersection-closed families."""
    ideals = P.lower_ideals()
    full = (1 << P.n) - 1
    forced = {P.down[e] for e in range(P.n)} | {full}
    optional = [A for A in ideals if A not in forced]
    out = []
    for k in range(len(optional) + 1):
        for extra in itertools.combinations(optional, k):
            fam = forced | set(extra)
            if any(a & b not in fam for a in fam for b in fam):
                continue

            def close(A, fam=fam):
                m = full
                for B in fam:
                    if A & ~B == 0:
                        m &= B
                return m
            out.append(ClosureOperation(P, close, "enumerated"))
    return out


def _orders_on(m):
    """All partial orders on range(m) (labelled), as Poset objects."""
    pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
    for k in range(len(pairs) + 1):
        for chosen in itertools.combinations(pairs, k):
            s = set(chosen)
            if any((j, i) in s for i, j in s):
                continue
            if any((i, l) not in s for i, j in s for jj, l in s if j == jj and i != l):
                continue
            yield Poset.from_pairs([str(i) for i in range(m)], list(chosen))


def lattices_generated_by(P: Poset, max_size=None):
    """Brute force: iso classes of (lattice T, full embedding E -> T generating T)."""
    max_size = max_size or len(P.lower_ideals())
    found = []
    for m in range(1, max_size + 1):
        for order in _orders_on(m):
            try:
                lat = build(order)
            except ValidationError:
                continue
            for emb in itertools.permutations(range(m), P.n):
                if any(P.le(a, b) != lat.le(emb[a], emb[b]) for a in range(P.n) for b in range(P.n)):
                    continue
                sub_joins = {lat.join_all([emb[i] for i in _bits(S)]) for S in range(1 << P.n)}
                if len(sub_joins) != m:
                    continue
                if not any(_same_generated(lat, emb, l2, e2) for l2, e2 in found):
                    found.append((lat, emb))
    return found


def _same_generated(l1, g1, l2, g2):
    f = []
    for t in range(l1.n):
        S = [i for i, g in enumerate(g1) if l1.le(g, t)]
        f.append(l2.join_all([g2[i] for i in S]))
    if sorted(f) != list(range(l2.n)) or l1.n != l2.n:
        return False
    return all(l1.le(a, b) == l2.le(f[a], f[b]) for a in range(l1.n) for b in range(l1.n))


def bijection_check(P: Poset) -> dict:
    ops = all_closure_operations(P)
    lats = [lattice_of_closed(c) for c in ops]
    distinct = all(not _same_generated(a.lattice, a.gens, b.lattice, b.gens)
                   for a, b in itertools.combinations(lats, 2))
    brute = lattices_generated_by(P)
    covered = all(any(_same_generated(l, e, c.lattice, c.gens) for c in lats) for l, e in brute)
    return {"closures": len(ops), "brute_lattices": len(brute), "distinct": distinct,
            "covered": covered and len(brute) == len(ops)}


def fibers_table(T: MarkedLattice, gens=None):
    """Rows (element of T, ideals of the generating poset mapping onto it)."""
    pi, I = pi_T(T, gens)
    rows = []
    for t, fib in pi.fibers().items():
        rows.append((T.labels[t], [I.labels[s] for s in fib]))
    return rows
