"""Join-preserving endomaps of the chain n = {0 < 1 < ... < n}: the maps s_A,
i_{A,C}, the elements f_{A,B} and eps_n, and sequences of elements ending at top."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .errors import ValidationError
from .maps import FormalMapSum, sum_compose
from .poset import _bits, popcount


def subset_list(mask):
    """Members of a subset of [n] (bit i-1 for element i), increasing."""
    return [i + 1 for i in _bits(mask)]


def s_map(n: int, A: int):
    """s_A: n -> l, j -> |]0,j] ∩ A|."""
    members = subset_list(A)
    return tuple(sum(1 for a in members if a <= j) for j in range(n + 1))


def i_map(n: int, A: int, C: int):
    """i_{A,C}: l -> n, 0 -> 0, j -> a_j or a_j - 1 when j is in C."""
    a = subset_list(A)
    out = [0]
    for j in range(1, len(a) + 1):
        out.append(a[j - 1] - 1 if C >> (j - 1) & 1 else a[j - 1])
    return tuple(out)


def s_A(n, A) -> FormalMapSum:
    l = popcount(A)
    return FormalMapSum.single(s_map(n, A), dst=l + 1)


def i_A(n, A) -> FormalMapSum:
    l = popcount(A)
    terms = {}
    for C in range(1 << l):
        f = i_map(n, A, C)
        terms[f] = terms.get(f, 0) + (-1) ** popcount(C)
    return FormalMapSum(l + 1, n + 1, terms)


def f_AB(n: int, A: int, B: int) -> FormalMapSum:
    if popcount(A) != popcount(B):
        raise ValidationError("f_{A,B} needs |A| = |B|")
    return sum_compose(i_A(n, A), s_A(n, B))


def epsilon(n: int) -> FormalMapSum:
    full = (1 << n) - 1
    return f_AB(n, full, full)


def beta(n: int, l: int) -> FormalMapSum:
    out = FormalMapSum.zero(n + 1)
    for A in range(1 << n):
        if popcount(A) == l:
            out = out + f_AB(n, A, A)
    return out


def join_endomaps(n: int):
    """Monotone maps n -> n sending 0 to 0 (the join-preserving ones on a chain)."""
    out = []
    for tail in itertools.combinations_with_replacement(range(n + 1), n):
        out.append((0,) + tail)
    return out


def structure_check(n: int) -> dict:
    """Multiplication table, basis count and the central idempotents beta_l."""
    if n > 4:
        raise ValidationError("structure check is capped at n <= 4")
    subsets = {l: [A for A in range(1 << n) if popcount(A) == l] for l in range(n + 1)}
    f = {(A, B): f_AB(n, A, B) for l in subsets for A in subsets[l] for B in subsets[l]}
    report = {"n": n, "failures": []}
    zero = FormalMapSum.zero(n + 1)
    for (A, B), u in f.items():
        for (C, D), v in f.items():
            prod = sum_compose(u, v)
            want = f[(A, D)] if B == C else zero
            if prod != want:
                report["failures"].append(("product", A, B, C, D))
    endos = join_endomaps(n)
    report["join_endomaps"] = len(endos)
    report["expected_count"] = sum(comb(n, l) ** 2 for l in range(n + 1))
    report["f_count"] = len(f)
    # every f_{A,B} is a combination of join endomaps, and they are independent
    endo_set = set(endos)
    if any(m not in endo_set for u in f.values() for m in u.terms):
        report["failures"].append(("term not a join endomap",))
    from .linalg import rank
    idx = {m: i for i, m in enumerate(endos)}
    rows = []
    for u in f.values():
        row = [0] * len(endos)
        for m, c in u.terms.items():
            row[idx[m]] = c
        rows.append(row)
    report["f_rank"] = rank(rows)
    if report["f_rank"] != len(endos):
        report["failures"].append(("f_{A,B} do not span",))
    betas = [beta(n, l) for l in range(n + 1)]
    total = zero
    for b in betas:
        total = total + b
    if total != FormalMapSum.identity(n + 1):
        report["failures"].append(("betas do not sum to 1",))
    for i, bi in enumerate(betas):
        for j, bj in enumerate(betas):
            want = bi if i == j else zero
            if sum_compose(bi, bj) != want:
                report["failures"].append(("beta orthogonality", i, j))
        for m in endos:
            g = FormalMapSum.single(m)
            if sum_compose(bi, g) != sum_compose(g, bi):
                report["failures"].append(("beta not central", i, m))
                break
    report["block_sizes"] = [comb(n, l) for l in range(n + 1)]
    report["ok"] = not report["failures"]
    return report


@dataclass
class ChainSet:
    """Non-decreasing sequences u_0 <= ... <= u_n = top in a lattice."""
    lattice: object
    n: int
    sequences: list = field(default_factory=list)

    def strict(self):
        T = self.lattice
        return [u for u in self.sequences if all(T.lt(u[i], u[i + 1]) for i in range(self.n))]

    def check_map(self, u):
        """u-check: t -> min{j | t <= u_j}."""
        T = self.lattice
        return tuple(min(j for j in range(self.n + 1) if T.le(t, u[j])) for t in range(T.n))

    def hat(self, phi):
        T = self.lattice
        return tuple(T.join_all([t for t in range(T.n) if phi[t] <= j]) for j in range(self.n + 1))


def join_morphisms(T, n: int) -> ChainSet:
    lat = getattr(T, "lattice", T)
    seqs = []

    def grow(prefix):
        if len(prefix) == n:
            seqs.append(tuple(prefix) + (lat.top,))
            return
        for t in range(lat.n):
            if (not prefix or lat.le(prefix[-1], t)):
                grow(prefix + [t])

    grow([])
    return ChainSet(lat, n, seqs)


def chain_counts(T, nmax: int):
    """|V_n| for n = 0..nmax (strictly increasing chains ending at top)."""
    return [len(join_morphisms(T, n).strict()) for n in range(nmax + 1)]


def lattice_height(T) -> int:
    lat = getattr(T, "lattice", T)
    n = 0
    while chain_counts(lat, n + 1)[-1]:
        n += 1
    return n


def s_n_rank(n: int, x: int) -> int:
    """Sum_i (-1)^{n-i} C(n,i) (i+1)^x."""
    return sum((-1) ** (n - i) * comb(n, i) * (i + 1) ** x for i in range(n + 1))


def summary_text(n: int) -> str:
    rep = structure_check(n)
    lines = [f"End(chain {n}) in the lattice category",
             f"basis count: {rep['join_endomaps']} (sum of C(n,l)^2 = {rep['expected_count']})",
             "blocks: " + " + ".join(f"M_{b}" for b in rep["block_sizes"]),
             f"f_AB span rank: {rep['f_rank']}",
             f"identities: {'ok' if rep['ok'] else 'FAILED ' + str(rep['failures'][:3])}"]
    return "\n".join(lines)
