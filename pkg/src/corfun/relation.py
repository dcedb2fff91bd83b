"""Finite sets and binary relations (correspondences) stored as bitset rows.

A relation R from X to Y is a subset of Y x X.  Row y is an int whose bit x
is set iff (y, x) is in R.  Composition is the boolean matrix product.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .errors import ValidationError


class GroundSet:
    """Ordered list of distinct labels; internal work only uses indices."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable = ()):
        labels = tuple(str(l) for l in labels)
        if len(set(labels)) != len(labels):
            raise ValidationError(f"duplicate labels in ground set {list(labels)}")
        self.labels = labels
        self._index = {l: i for i, l in enumerate(labels)}

    @classmethod
    def range(cls, n: int) -> "GroundSet":
        return cls(str(i) for i in range(n))

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise ValidationError(f"unknown label {label!r}") from None

    def __eq__(self, other):
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"GroundSet({list(self.labels)})"


def _full(n):
    return (1 << n) - 1


class Relation:
    """Subset of target x source, one bitmask row per target element."""

    __slots__ = ("source", "target", "rows")

    def __init__(self, source: GroundSet, target: GroundSet, rows: Sequence[int]):
        rows = tuple(int(r) for r in rows)
        if len(rows) != len(target):
            raise ValidationError(f"relation has {len(rows)} rows, target has {len(target)}")
        mask = _full(len(source))
        if any(r & ~mask for r in rows):
            raise ValidationError("relation row has bits outside the source set")
        self.source = source
        self.target = target
        self.rows = rows

    # constructors
    @classmethod
    def from_pairs(cls, source, target, pairs):
        """pairs are (y, x) index pairs, target first."""
        rows = [0] * len(target)
        for y, x in pairs:
            if not (0 <= y < len(target) and 0 <= x < len(source)):
                raise ValidationError(f"pair {(y, x)} out of range")
            rows[y] |= 1 << x
        return cls(source, target, rows)

    @classmethod
    def identity(cls, X: GroundSet):
        return cls(X, X, [1 << i for i in range(len(X))])

    @classmethod
    def empty(cls, source, target):
        return cls(source, target, [0] * len(target))

    @classmethod
    def full(cls, source, target):
        return cls(source, target, [_full(len(source))] * len(target))

    @classmethod
    def from_matrix(cls, source, target, matrix):
        rows = []
        for row in matrix:
            r = 0
            for x, v in enumerate(row):
                if v:
                    r |= 1 << x
            rows.append(r)
        return cls(source, target, rows)

    # queries
    def has(self, y: int, x: int) -> bool:
        return bool(self.rows[y] >> x & 1)

    def pairs(self):
        out = []
        for y, r in enumerate(self.rows):
            x = 0
            while r:
                if r & 1:
                    out.append((y, x))
                r >>= 1
                x += 1
        return out

    def matrix(self):
        n = len(self.source)
        return [[(r >> x) & 1 for x in range(n)] for r in self.rows]

    def issubset(self, other: "Relation") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    __le__ = issubset

    def __or__(self, other):
        return Relation(self.source, self.target, [a | b for a, b in zip(self.rows, other.rows)])

    def __and__(self, other):
        return Relation(self.source, self.target, [a & b for a, b in zip(self.rows, other.rows)])

    def __matmul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        return (isinstance(other, Relation) and self.rows == other.rows
                and len(self.source) == len(other.source) and len(self.target) == len(other.target))

    def __hash__(self):
        return hash((len(self.source), self.rows))

    def __len__(self):
        return sum(bin(r).count("1") for r in self.rows)

    def __repr__(self):
        lab_s, lab_t = self.source.labels, self.target.labels
        return "Relation{" + ", ".join(f"({lab_t[y]},{lab_s[x]})" for y, x in self.pairs()) + "}"

    # serialization
    def to_json(self) -> dict:
        ls, lt = self.source.labels, self.target.labels
        return {"source": list(ls), "target": list(lt),
                "pairs": [[lt[y], ls[x]] for y, x in self.pairs()]}

    @classmethod
    def from_json(cls, data) -> "Relation":
        if isinstance(data, str):
            data = json.loads(data)
        for key in ("source", "target", "pairs"):
            if key not in data:
                raise ValidationError(f"relation JSON missing key {key!r}")
        X, Y = GroundSet(data["source"]), GroundSet(data["target"])
        pairs = []
        for p in data["pairs"]:
            if len(p) != 2:
                raise ValidationError(f"bad pair {p!r}")
            pairs.append((Y.index(p[0]), X.index(p[1])))
        return cls.from_pairs(X, Y, pairs)


def compose(R: Relation, S: Relation) -> Relation:
    """RS = {(z,x) | exists y, (z,y) in R and (y,x) in S}."""
    if len(R.source) != len(S.target):
        raise ValidationError(
            f"cannot compose: left source has {len(R.source)} elements, right target has {len(S.target)}")
    return Relation(S.source, R.target, kernels.compose_rows(R.rows, S.rows))


def opposite(R: Relation) -> Relation:
    rows = [0] * len(R.source)
    for y, r in enumerate(R.rows):
        x = 0
        while r:
            if r & 1:
                rows[x] |= 1 << y
            r >>= 1
            x += 1
    return Relation(R.target, R.source, rows)


def _square(R):
    if len(R.source) != len(R.target):
        raise ValidationError("relation is not on a single set")


def classify(R: Relation) -> dict:
    _square(R)
    n = len(R.source)
    refl = all(R.rows[i] >> i & 1 for i in range(n))
    trans = compose(R, R).issubset(R)
    anti = all(not (R.has(i, j) and R.has(j, i)) for i in range(n) for j in range(i + 1, n))
    return {
        "reflexive": refl,
        "transitive": trans,
        "antisymmetric": anti,
        "is_preorder": refl and trans,
        "is_order": refl and trans and anti,
    }


def preorder_quotient(R: Relation):
    """Collapse x~y (x R y and y R x).  Returns (order on classes, projection list)."""
    if not classify(R)["is_preorder"]:
        raise ValidationError("relation is not a preorder")
    n = len(R.source)
    proj = [-1] * n
    reps = []
    for x in range(n):
        if proj[x] >= 0:
            continue
        proj[x] = len(reps)
        for y in range(x + 1, n):
            if proj[y] < 0 and R.has(x, y) and R.has(y, x):
                proj[y] = len(reps)
        reps.append(x)
    labels = ["~".join(R.source.labels[y] for y in range(n) if proj[y] == c) for c in range(len(reps))]
    Q = GroundSet(labels)
    pairs = [(proj[a], proj[b]) for a, b in R.pairs()]
    return Relation.from_pairs(Q, Q, pairs), proj


@dataclass(frozen=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValidationError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __len__(self):
        return len(self.images)


def delta(sigma: Permutation, X: GroundSet | None = None) -> Relation:
    """Graph {(sigma(x), x)} of a permutation."""
    X = X or GroundSet.range(len(sigma))
    return Relation.from_pairs(X, X, [(sigma(x), x) for x in range(len(X))])


def conjugate(sigma: Permutation, R: Relation) -> Relation:
    """Delta_sigma R Delta_{sigma^-1}, i.e. {(sigma a, sigma b) | (a,b) in R}."""
    return compose(compose(delta(sigma, R.target), R), delta(sigma.inverse(), R.source))


def all_relations(X: GroundSet, Y: GroundSet | None = None):
    """Every subset of Y x X, in bitmask order (small sets only)."""
    Y = X if Y is None else Y
    nx, ny = len(X), len(Y)
    for code in range(1 << (nx * ny)):
        rows = [(code >> (y * nx)) & _full(nx) for y in range(ny)]
        yield Relation(X, Y, rows)
