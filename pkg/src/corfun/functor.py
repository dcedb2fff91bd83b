"""Evaluations of correspondence functors: the action on maps X -> T, the
correspondences Gamma, the relation phi |- psi, the matrix N and its ranks,
the basis B_X, duality data and the explicit action on fundamental functors."""
from __future__ import annotations

import itertools
import os
from fractions import Fraction
from math import comb

from . import kernels
from .errors import BudgetExceeded, InvariantFailure, ValidationError
from .lattice import MarkedLattice, ideal_lattice
from .linalg import IntegerMatrix, rank, smith_divisors
from .maps import FormalMapSum, sum_compose
from .poset import Poset, _bits, popcount
from .relation import GroundSet, Relation

DEFAULT_BUDGET = 2_000_000


def budget() -> int:
    raw = os.environ.get("CORFUN_BUDGET")
    if raw is None or raw == "":
        return DEFAULT_BUDGET
    try:
        return int(float(raw))
    except ValueError:
        raise ValidationError(f"CORFUN_BUDGET must be a number, got {raw!r}") from None


def check_budget(count: int, what: str):
    lim = budget()
    if count > lim:
        raise BudgetExceeded(f"{what}: {count} exceeds budget {lim} (set CORFUN_BUDGET)")


def all_maps(x: int, n: int):
    """Maps {0..x-1} -> {0..n-1} in lexicographic order."""
    return itertools.product(range(n), repeat=x)


class MapVector:
    """Integer combination of maps X -> T; an element of F_T(X).

    op=True marks a vector of F_{T^op}(X): same maps, joins read as meets.
    """

    def __init__(self, x_size, lattice, terms=None, op=False, _trusted=False):
        self.x_size = x_size
        self.lattice = lattice
        self.op = op
        if _trusted:
            self.terms = dict(terms)
        else:
            self.terms = {}
            for f, c in (terms or {}).items():
                f = tuple(f)
                if c:
                    self.terms[f] = self.terms.get(f, 0) + c
            self.terms = {f: c for f, c in self.terms.items() if c}

    @classmethod
    def basis(cls, x_size, lattice, phi, op=False):
        return cls(x_size, lattice, {tuple(phi): 1}, op=op, _trusted=True)

    def __add__(self, other):
        t = dict(self.terms)
        for f, c in other.terms.items():
            v = t.get(f, 0) + c
            if v:
                t[f] = v
            else:
                t.pop(f, None)
        return MapVector(self.x_size, self.lattice, t, self.op, _trusted=True)

    def __neg__(self):
        return MapVector(self.x_size, self.lattice, {f: -c for f, c in self.terms.items()}, self.op, True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return MapVector(self.x_size, self.lattice, {f: k * c for f, c in self.terms.items() if k * c},
                         self.op, True)

    def __eq__(self, other):
        return isinstance(other, MapVector) and self.terms == other.terms and self.op == other.op

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coordinates(self, index):
        v = [0] * len(index)
        for f, c in self.terms.items():
            v[index[f]] += c
        return v

    def dump(self):
        return "\n".join(f"{c}: {list(f)}" for f, c in sorted(self.terms.items()))

    def __repr__(self):
        return f"MapVector({len(self.terms)} terms{', op' if self.op else ''})"


# --- the action of correspondences -----------------------------------------

def _lat(T):
    return T.lattice if isinstance(T, MarkedLattice) else T


def act(R: Relation, phi, T):
    """(R phi)(y) = join of phi(x) over (y, x) in R; empty join is the bottom."""
    if len(R.source) != len(phi):
        raise ValidationError(f"relation starts at {len(R.source)} points but the map has {len(phi)}")
    lat = _lat(T)
    return kernels.join_action(R.rows, tuple(phi), lat.join, lat.bottom)


def act_vector(R: Relation, vec: MapVector) -> MapVector:
    lat = _lat(vec.lattice)
    out = {}
    if vec.op:
        for f, c in vec.terms.items():
            g = star_act_map(R, f, lat)
            out[g] = out.get(g, 0) + c
    else:
        for f, c in vec.terms.items():
            g = kernels.join_action(R.rows, f, lat.join, lat.bottom)
            out[g] = out.get(g, 0) + c
    return MapVector(len(R.target), vec.lattice, {f: c for f, c in out.items() if c}, vec.op, True)


def star_act_map(Q: Relation, psi, T):
    """(Q * psi)(y) = meet of psi(x) over (y, x) in Q; empty meet is the top."""
    lat = _lat(T)
    return kernels.join_action(Q.rows, tuple(psi), lat.meet, lat.top)


def iota(T: MarkedLattice):
    return tuple(T.irr)


def e_set(T: MarkedLattice) -> GroundSet:
    return T.irr_poset.elements


def gamma(phi, T: MarkedLattice) -> Relation:
    """Gamma_phi = {(x, e) | e <= phi(x)}, a correspondence from E to X."""
    X = GroundSet.range(len(phi))
    return Relation(e_set(T), X, [T.down_on_e[t] for t in phi])


def gamma_inv(S: Relation, T: MarkedLattice):
    """Inverse of gamma on T = I_down(E,R): needs S R^op = S (rows are lower ideals)."""
    ideals = getattr(T, "ideals", None)
    if ideals is None:
        raise ValidationError("gamma_inv needs an ideal lattice")
    P = T.irr_poset
    rop = Relation(P.elements, P.elements, P.down)
    if S @ rop != S:
        raise ValidationError("S R^op differs from S")
    idx = {m: i for i, m in enumerate(ideals)}
    # the irr positions of an ideal lattice follow the poset order, so masks agree
    return tuple(idx[r] for r in S.rows)


# --- the relation phi |- psi -------------------------------------------------

def upper_ideals_e(T: MarkedLattice):
    """I_up(E,R) as bitmasks over E, sorted by (size, mask)."""
    return T.irr_poset.upper_ideals()


def vdash(phi, psi, T: MarkedLattice, debug=False) -> bool:
    """Condition (d): Gamma_psi^op Gamma_phi equals R^op."""
    P = T.irr_poset
    rows = kernels.vdash_rows(tuple(phi), tuple(psi), T.down_on_e, P.n)
    val = list(rows) == list(P.down)
    if debug:
        conds = vdash_conditions(phi, psi, T)
        if len(set(conds.values())) != 1:
            raise InvariantFailure(f"conditions disagree: {conds}")
    return val


def vdash_conditions(phi, psi, T: MarkedLattice) -> dict:
    """Conditions (a), (c), (d), (e), (f) evaluated independently."""
    P, lat = T.irr_poset, T.lattice
    E, X = range(P.n), range(len(phi))
    irr = T.irr
    out = {}
    # (a) join of phi(x) over x with e in psi(x) equals e
    out["a"] = all(lat.join_all([phi[x] for x in X if psi[x] >> e & 1]) == irr[e] for e in E)
    # (c) Delta <= product <= R^op, product computed pair by pair
    prod = {(e, f) for e in E for f in E
            if any(psi[x] >> e & 1 and lat.le(irr[f], phi[x]) for x in X)}
    rop = {(e, f) for e in E for f in E if P.le(f, e)}
    out["c"] = all((e, e) in prod for e in E) and prod <= rop
    out["d"] = prod == rop
    # (e) phi <= meet psi pointwise, and every e is hit with psi(x) = [e, .[
    meets_ok = all(lat.le(phi[x], lat.meet_all([irr[e] for e in _bits(psi[x])])) for x in X)
    hits = all(any(phi[x] == irr[e] and psi[x] == P.up[e] for x in X) for e in E)
    out["e"] = meets_ok and hits
    # (f) union of psi over each fibre of phi
    f1 = True
    for t in set(phi):
        above = sum(1 << e for e in E if lat.le(t, irr[e]))
        union = 0
        for x in X:
            if phi[x] == t:
                union |= psi[x]
        if union & ~above:
            f1 = False
    f2 = True
    for e in E:
        union = 0
        for x in X:
            if phi[x] == irr[e]:
                union |= psi[x]
        if union != P.up[e]:
            f2 = False
    out["f"] = f1 and f2
    return out


def check_matrix_budget(T: MarkedLattice, x: int):
    """Fail before enumerating anything when N(T, X) is too large."""
    ncols, nrows = T.n ** x, len(upper_ideals_e(T)) ** x
    check_budget(ncols, f"N at |X|={x}: maps X -> T")
    check_budget(nrows, f"N at |X|={x}: maps X -> I_up(E)")
    check_budget(ncols * nrows, f"N at |X|={x}: matrix entries")


def matrix_N(P: Poset | None, T: MarkedLattice, x: int):
    """Rows psi: X -> I_up(E,R), columns phi: X -> T, entry [phi |- psi].

    Returns (IntegerMatrix, row maps, column maps)."""
    if P is not None and not T.irr_poset.isomorphic_to(P):
        raise ValidationError("the lattice's irreducible poset is not the given poset")
    ups = upper_ideals_e(T)
    check_matrix_budget(T, x)
    cols = list(all_maps(x, T.n))
    rows = [tuple(ups[i] for i in r) for r in all_maps(x, len(ups))]
    target = list(T.irr_poset.down)
    dn, ne = T.down_on_e, T.irr_poset.n
    vr = kernels.vdash_rows
    M = [[1 if vr(phi, psi, dn, ne) == target else 0 for phi in cols] for psi in rows]
    return IntegerMatrix(M, len(cols)), rows, cols


def rank_formula(P: Poset, x: int) -> int:
    """sum_i (-1)^i C(|E|, i) (|G| - i)^x with G taken in I_down(P)."""
    g = len(ideal_lattice(P).G)
    e = P.n
    return sum((-1) ** i * comb(e, i) * (g - i) ** x for i in range(e + 1))


def rank_fundamental(P: Poset, x: int) -> int:
    """Rank of S_{E,R} itself (the formula is stated for the opposite order)."""
    return rank_formula(P.opposite(), x)


def rank_bruteforce(P: Poset | None, T: MarkedLattice, x: int) -> int:
    M, _, _ = matrix_N(P, T, x)
    return rank(M)


def smith(M) -> list:
    return smith_divisors(M)


def basis_BX(T: MarkedLattice, x: int):
    """Maps phi: X -> T with E inside phi(X) inside G (lexicographic)."""
    G = sorted(T.G)
    E = set(T.irr)
    check_budget(len(G) ** x, "basis enumeration")
    out = []
    for f in itertools.product(G, repeat=x):
        if E <= set(f):
            out.append(f)
    return out


def surjection_counts(x: int, e: int, g: int | None = None) -> dict:
    if e < 0 or (g is not None and g < e):
        raise ValidationError("need 0 <= e <= g")
    s = sum((-1) ** j * comb(e, j) * (e - j) ** x for j in range(e + 1))
    out = {"s": s}
    if g is not None:
        out["ss"] = sum((-1) ** i * comb(e, i) * (g - i) ** x for i in range(e + 1))
    return out


def dim_simple(P: Poset, x: int, dim_v: int, aut_order: int) -> int:
    if dim_v < 1:
        raise ValidationError("dimV must be positive")
    if aut_order != len(P.automorphisms(bound=max(8, P.n))):
        raise ValidationError("autOrder does not match the automorphism group of the poset")
    num = dim_v * rank_formula(P.opposite(), x)
    q = Fraction(num, aut_order)
    if q.denominator != 1:
        raise InvariantFailure(f"dimension {q} is not an integer")
    return int(q)


# --- duality -------------------------------------------------------------------

def pairing(phi, psi, T) -> int:
    lat = _lat(T)
    return int(all(lat.le(a, b) for a, b in zip(phi, psi)))


def star(phi, T) -> MapVector:
    """phi* = sum over rho <= phi of prod_x mu(rho(x), phi(x)) rho, in F_{T^op}(X)."""
    lat = _lat(T)
    P = lat.poset
    options = []
    for t in phi:
        opts = [(r, P.mobius(r, t)) for r in range(lat.n) if lat.le(r, t)]
        options.append([(r, m) for r, m in opts if m])
    terms = {}
    for combo in itertools.product(*options):
        c = 1
        for _, m in combo:
            c *= m
        f = tuple(r for r, _ in combo)
        terms[f] = terms.get(f, 0) + c
    return MapVector(len(phi), T, terms, op=True)


def pairing_vectors(u: MapVector, v: MapVector) -> int:
    lat = _lat(u.lattice)
    return sum(a * b * pairing(f, g, lat) for f, a in u.terms.items() for g, b in v.terms.items())


def eta(T: MarkedLattice, A: int):
    """eta_A(e) = r(e) for e in A, e otherwise (A a bitmask over E)."""
    return tuple(T.r(e) if A >> i & 1 else e for i, e in enumerate(T.irr))


def gamma_T(T: MarkedLattice) -> MapVector:
    k = len(T.irr)
    terms = {}
    for A in range(1 << k):
        f = eta(T, A)
        terms[f] = terms.get(f, 0) + (-1) ** popcount(A)
    return MapVector(k, T, terms, op=True)


def order_relation(T: MarkedLattice) -> Relation:
    """R on E as a correspondence: row e holds {e' | e <= e'}."""
    P = T.irr_poset
    return Relation(P.elements, P.elements, P.up)


def pairing_matrix(T, x: int):
    """Rows lambda: X -> T, columns psi as maps into T^op; entry [lambda <= psi]."""
    lat = _lat(T)
    check_budget(lat.n ** x, "pairing matrix")
    maps = list(all_maps(x, lat.n))
    return IntegerMatrix([[pairing(l, p, lat) for p in maps] for l in maps], len(maps)), maps


def is_ideal_lattice(T: MarkedLattice) -> bool:
    return T.n == len(T.irr_poset.lower_ideals())


def span_rank_gamma(T: MarkedLattice, x: int) -> int:
    """Rank of {S * gamma_T | S a correspondence from E to X} inside F_{T^op}(X)."""
    if not is_ideal_lattice(T):
        raise ValidationError("span_rank_gamma needs T = I_down(E,R)")
    k = len(T.irr)
    check_budget(T.n ** x, "gamma span coordinates")
    check_budget(2 ** (k * x), "gamma span generators")
    g = gamma_T(T)
    Ek, X = e_set(T), GroundSet.range(x)
    index = {f: i for i, f in enumerate(all_maps(x, T.n))}
    vecs = set()
    for code in range(1 << (k * x)):
        S = Relation(Ek, X, [(code >> (y * k)) & ((1 << k) - 1) for y in range(x)])
        v = act_vector(S, g)
        if v:
            vecs.add(tuple(v.coordinates(index)))
    return rank(list(vecs)) if vecs else 0


# --- action on the fundamental functor ---------------------------------------

def project_E(vec: MapVector, T: MarkedLattice) -> MapVector:
    """pi_{T,X}: keep maps whose image contains E."""
    E = set(T.irr)
    return MapVector(vec.x_size, T, {f: c for f, c in vec.terms.items() if E <= set(f)}, _trusted=True)


class FundamentalAction:
    """S(U)(phi) = pi(u_T o U phi) on the basis B_X."""

    def __init__(self, T: MarkedLattice):
        from .forest import u_T
        self.T = T
        self.uT = u_T(T)
        self.G = T.G

    def apply(self, U: Relation, phi) -> MapVector:
        T = self.T
        phi = tuple(phi)
        if not (set(T.irr) <= set(phi) <= self.G):
            raise ValidationError("map is not in the basis B_X")
        psi = act(U, phi, T)
        v = MapVector(len(psi), T, kernels.compose_terms(self.uT.terms, {psi: 1}), _trusted=True)
        out = project_E(v, T)
        for f in out.terms:
            if not set(f) <= self.G:
                raise InvariantFailure("action left the span of B_Y")
        return out

    def matrix(self, U: Relation):
        """Rows B_Y, columns B_X."""
        x, y = len(U.source), len(U.target)
        BX, BY = basis_BX(self.T, x), basis_BX(self.T, y)
        idx = {f: i for i, f in enumerate(BY)}
        cols = [self.apply(U, phi).coordinates(idx) for phi in BX]
        rows = [[cols[j][i] for j in range(len(BX))] for i in range(len(BY))]
        return IntegerMatrix(rows, len(BX)), BY, BX


def fundamental_action(T: MarkedLattice, U: Relation, phi) -> dict:
    return FundamentalAction(T).apply(U, phi).terms


def theta_matrix(T: MarkedLattice, x: int):
    """Rows B_X, columns all maps X -> T: coordinates of pi(u_T o phi)."""
    from .forest import u_T
    uT = u_T(T)
    BX = basis_BX(T, x)
    idx = {f: i for i, f in enumerate(BX)}
    check_budget(T.n ** x, "theta matrix")
    cols = list(all_maps(x, T.n))
    data = [[0] * len(cols) for _ in BX]
    for j, phi in enumerate(cols):
        v = project_E(MapVector(x, T, kernels.compose_terms(uT.terms, {phi: 1}), _trusted=True), T)
        for f, c in v.terms.items():
            if f not in idx:
                raise InvariantFailure("u_T o phi has a term outside B_X after projection")
            data[idx[f]][j] += c
    return IntegerMatrix(data, len(cols)), BX, cols


def kernels_agree(T: MarkedLattice, x: int) -> dict:
    """Kernel of N versus kernel of phi -> pi(u_T o phi), both over Q.

    Two matrices on the same columns have the same right kernel exactly when
    their row spaces coincide, i.e. rank N = rank W = rank of N stacked on W."""
    N, _, cols = matrix_N(None, T, x)
    W, BX, cols2 = theta_matrix(T, x)
    if cols != cols2:
        raise InvariantFailure("column orders differ")
    rN, rW = rank(N.rows), rank(W.rows)
    rNW = rank(N.rows + W.rows)
    n = len(cols)
    return {"dim_ker_N": n - rN, "dim_ker_theta": n - rW, "same": rN == rW == rNW,
            "basis": len(BX)}


def phi_minus_ua_in_kernel(T: MarkedLattice, x: int) -> bool:
    from .forest import graph_of_lattice, kappa_sequence
    N, _, cols = matrix_N(None, T, x)
    idx = {f: i for i, f in enumerate(cols)}
    _, seqs = graph_of_lattice(T)
    for a, seq in seqs.items():
        ua = kappa_sequence(T.n, seq)
        for phi in cols:
            terms = dict(kernels.compose_terms(ua.terms, {phi: 1}))
            terms[phi] = terms.get(phi, 0) - 1
            vec = [0] * len(cols)
            for f, c in terms.items():
                vec[idx[f]] += c
            if any(N.apply(vec)):
                return False
    return True


# --- the square matrix M on surjections ---------------------------------------

def matrix_M(P: Poset, x: int):
    """M[psi, phi] = 1 iff {(e,f) | exists x: e <= psi(x), phi(x) <= f} equals R,
    psi and phi running over surjections X -> E, sorted by total height."""
    E = range(P.n)
    check_budget(P.n ** x, "surjections for M")
    surj = [f for f in all_maps(x, P.n) if set(f) == set(E)]
    height = [popcount(P.down[e]) for e in E]
    surj.sort(key=lambda f: (sum(height[v] for v in f), f))
    target = list(P.up)

    def entry(psi, phi):
        rows = [0] * P.n
        for xx in range(x):
            up = P.up[phi[xx]]
            for e in _bits(P.down[psi[xx]]):
                rows[e] |= up
        return int(rows == target)

    return IntegerMatrix([[entry(p, q) for q in surj] for p in surj], len(surj)), surj


def is_unitriangular(M: IntegerMatrix) -> bool:
    n = M.nrows
    return (M.ncols == n and all(M[i, i] == 1 for i in range(n))
            and all(M[i, j] == 0 for i in range(n) for j in range(i)))
