"""Finite posets: ideals, upper/lower bounds, Moebius function, automorphisms."""
from __future__ import annotations

import itertools
import json
from functools import cached_property

from .errors import ValidationError
from .relation import GroundSet, Relation, Permutation, classify, compose, conjugate, opposite


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Poset:
    """(E, R) with (a, b) in R meaning a <= b.

    The relation is stored as a Relation on E whose row a holds {b | a <= b};
    that is the pair list read target-first, so R.has(a, b) iff a <= b.
    """

    def __init__(self, elements: GroundSet, leq: Relation):
        if not classify(leq)["is_order"]:
            raise ValidationError("relation is not an order")
        self.elements = elements
        self.leq = leq

    # construction helpers
    @classmethod
    def from_pairs(cls, labels, pairs, close=False):
        """pairs (a, b) of indices meaning a <= b; reflexive closure always added."""
        E = GroundSet(labels)
        n = len(E)
        pairs = list(pairs) + [(i, i) for i in range(n)]
        R = Relation.from_pairs(E, E, pairs)
        if close:
            while True:
                R2 = compose(R, R) | R
                if R2 == R:
                    break
                R = R2
        return cls(E, R)

    @classmethod
    def from_json(cls, data) -> "Poset":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "elements" not in data:
            raise ValidationError("poset JSON needs an 'elements' list")
        E = GroundSet(data["elements"])
        pairs = []
        for p in data.get("relation", []):
            if not isinstance(p, (list, tuple)) or len(p) != 2:
                raise ValidationError(f"bad relation entry {p!r}")
            pairs.append((E.index(p[0]), E.index(p[1])))
        pairs += [(i, i) for i in range(len(E))]
        R = Relation.from_pairs(E, E, pairs)
        flags = classify(R)
        if not flags["transitive"]:
            raise ValidationError("poset relation is not transitive")
        if not flags["antisymmetric"]:
            raise ValidationError("poset relation is not antisymmetric")
        return cls(E, R)

    def to_json(self) -> dict:
        lab = self.elements.labels
        return {"elements": list(lab),
                "relation": [[lab[a], lab[b]] for a, b in self.leq.pairs() if a != b]}

    # basic queries
    def __len__(self):
        return len(self.elements)

    @property
    def n(self):
        return len(self.elements)

    def le(self, a, b) -> bool:
        return bool(self.leq.rows[a] >> b & 1)

    def lt(self, a, b) -> bool:
        return a != b and self.le(a, b)

    @cached_property
    def up(self):
        """up[a] = bitmask of {b | a <= b}."""
        return self.leq.rows

    @cached_property
    def down(self):
        """down[b] = bitmask of {a | a <= b}."""
        return opposite(self.leq).rows

    def opposite(self) -> "Poset":
        return Poset(self.elements, opposite(self.leq))

    def relabel(self, labels) -> "Poset":
        return Poset(GroundSet(labels), Relation(GroundSet(labels), GroundSet(labels), self.leq.rows))

    def is_ideal(self, mask: int) -> bool:
        return all(self.down[a] & ~mask == 0 for a in _bits(mask))

    def is_upper_ideal(self, mask: int) -> bool:
        return all(self.up[a] & ~mask == 0 for a in _bits(mask))

    @cached_property
    def linear_extension(self):
        order, placed = [], 0
        while len(order) < self.n:
            for a in range(self.n):
                if not placed >> a & 1 and (self.down[a] & ~(1 << a)) & ~placed == 0:
                    order.append(a)
                    placed |= 1 << a
                    break
        return order

    def lower_ideals(self):
        """All lower ideals as bitmasks, sorted by (size, mask)."""
        out = []

        def extend(k, mask):
            if k == self.n:
                out.append(mask)
                return
            a = self.linear_extension[k]
            extend(k + 1, mask)  # leave a out
            if self.down[a] & ~(1 << a) & ~mask == 0:
                extend(k + 1, mask | 1 << a)

        # depth-first over a linear extension: a may join only if everything below it is in
        extend(0, 0)
        return sorted(out, key=lambda m: (popcount(m), m))

    def upper_ideals(self):
        full = (1 << self.n) - 1
        return sorted((full & ~m for m in self.lower_ideals()), key=lambda m: (popcount(m), m))

    def principal_ideals(self):
        return list(self.down)

    def bounds(self, A: int):
        """(Ub A, Lb A) as bitmasks; both are everything for A empty."""
        full = (1 << self.n) - 1
        ub, lb = full, full
        for a in _bits(A):
            ub &= self.up[a]
            lb &= self.down[a]
        return ub, lb

    def maximal(self, mask: int):
        return [a for a in _bits(mask) if self.up[a] & mask == 1 << a]

    def minimal(self, mask: int):
        return [a for a in _bits(mask) if self.down[a] & mask == 1 << a]

    # Moebius function
    @cached_property
    def _mobius_rows(self):
        return {}

    def mobius(self, a: int, b: int) -> int:
        if not self.le(a, b):
            return 0
        memo = self._mobius_rows.get(a)
        if memo is None:
            memo = self._mobius_from(a)
            self._mobius_rows[a] = memo
        return memo[b]

    def _mobius_from(self, a):
        # mu(a,a)=1, mu(a,b) = -sum_{a<=z<b} mu(a,z), walked along a linear extension
        mu = {}
        for b in self.linear_extension:
            if not self.le(a, b):
                continue
            if b == a:
                mu[b] = 1
            else:
                mu[b] = -sum(mu[z] for z in mu if self.le(z, b) and z != b)
        return {b: mu.get(b, 0) for b in range(self.n)}

    # automorphisms
    def is_automorphism(self, sigma: Permutation) -> bool:
        return conjugate(sigma, self.leq) == self.leq

    def automorphisms(self, bound: int = 8):
        """Permutations fixing the order, searched with a degree-signature prune."""
        if self.n > bound:
            raise ValidationError(f"automorphism search limited to {bound} elements, got {self.n}")
        sig = [(popcount(self.up[a]), popcount(self.down[a])) for a in range(self.n)]
        out = []
        images = [-1] * self.n
        used = 0

        def place(k):
            nonlocal used
            if k == self.n:
                out.append(Permutation(tuple(images)))
                return
            for c in range(self.n):
                if used >> c & 1 or sig[c] != sig[k]:
                    continue
                ok = all(self.le(j, k) == self.le(images[j], c) and self.le(k, j) == self.le(c, images[j])
                         for j in range(k))
                if not ok:
                    continue
                images[k] = c
                used |= 1 << c
                place(k + 1)
                used &= ~(1 << c)
            images[k] = -1

        place(0)
        return out

    def automorphisms_bruteforce(self):
        return [Permutation(p) for p in itertools.permutations(range(self.n))
                if self.is_automorphism(Permutation(p))]

    def isomorphic_to(self, other: "Poset") -> bool:
        if self.n != other.n:
            return False
        return find_isomorphism(self, other) is not None

    def __eq__(self, other):
        return isinstance(other, Poset) and self.leq == other.leq

    def __hash__(self):
        return hash(self.leq)

    def __repr__(self):
        lab = self.elements.labels
        rel = ", ".join(f"{lab[a]}<{lab[b]}" for a, b in self.leq.pairs() if a != b)
        return f"Poset({list(lab)}; {rel})"


def find_isomorphism(P: Poset, Q: Poset):
    """Some bijection f with a<=b iff f(a)<=f(b), or None."""
    if P.n != Q.n:
        return None
    sigP = [(popcount(P.up[a]), popcount(P.down[a])) for a in range(P.n)]
    sigQ = [(popcount(Q.up[a]), popcount(Q.down[a])) for a in range(Q.n)]
    if sorted(sigP) != sorted(sigQ):
        return None
    images = [-1] * P.n

    def place(k, used):
        if k == P.n:
            return True
        for c in range(Q.n):
            if used >> c & 1 or sigQ[c] != sigP[k]:
                continue
            if all(P.le(j, k) == Q.le(images[j], c) and P.le(k, j) == Q.le(c, images[j]) for j in range(k)):
                images[k] = c
                if place(k + 1, used | 1 << c):
                    return True
        return False

    return list(images) if place(0, 0) else None


# a few named posets
def antichain(n: int) -> Poset:
    return Poset.from_pairs([f"e{i}" for i in range(n)], [])


def chain(n: int) -> Poset:
    return Poset.from_pairs([str(i + 1) for i in range(n)],
                            [(i, j) for i in range(n) for j in range(i, n)])


def v_poset() -> Poset:
    """c < a, c < b."""
    return Poset.from_pairs(["c", "a", "b"], [(0, 1), (0, 2)])


def lambda_poset() -> Poset:
    """a < c, b < c (the opposite of the V)."""
    return Poset.from_pairs(["a", "b", "c"], [(0, 2), (1, 2)])


def chain_plus_point() -> Poset:
    return Poset.from_pairs(["1", "2", "p"], [(0, 1)])


def zigzag4() -> Poset:
    """a < c, b < c, b < d."""
    return Poset.from_pairs(["a", "b", "c", "d"], [(0, 2), (1, 2), (1, 3)])


def named_poset(name: str) -> Poset:
    if name.startswith("antichain"):
        return antichain(int(name[len("antichain"):] or 2))
    if name.startswith("chain"):
        return chain(int(name[len("chain"):] or 2))
    table = {"v": v_poset, "lambda": lambda_poset, "chainpoint": chain_plus_point, "zigzag": zigzag4}
    if name not in table:
        raise ValidationError(f"unknown poset name {name!r}")
    return table[name]()
