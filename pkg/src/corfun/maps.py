"""Integer combinations of maps between finite sets {0..m-1} -> {0..n-1}.

A map is a tuple of images.  Endomaps (m == n) form the monoid algebra Z(T^T);
maps of different sizes are needed for s_A and i_A on total orders, and a
MapVector (maps X -> T) is just the case m = |X|, n = |T|.
"""
from __future__ import annotations

from typing import Iterable

from . import kernels
from .errors import ValidationError


class FormalMapSum:
    __slots__ = ("src", "dst", "terms")

    def __init__(self, src: int, dst: int | None = None, terms=None):
        self.src = src
        self.dst = src if dst is None else dst
        out = {}
        for f, c in (terms or {}).items():
            f = tuple(f)
            if len(f) != self.src or any(not 0 <= v < self.dst for v in f):
                raise ValidationError(f"map {f} is not {self.src} -> {self.dst}")
            if c:
                out[f] = out.get(f, 0) + c
        self.terms = {f: c for f, c in out.items() if c}

    @classmethod
    def _raw(cls, src, dst, terms):
        obj = cls.__new__(cls)
        obj.src, obj.dst, obj.terms = src, dst, terms
        return obj

    @classmethod
    def identity(cls, n):
        return cls._raw(n, n, {tuple(range(n)): 1})

    @classmethod
    def zero(cls, src, dst=None):
        return cls._raw(src, src if dst is None else dst, {})

    @classmethod
    def single(cls, images, dst=None, coeff=1):
        images = tuple(images)
        return cls(len(images), dst if dst is not None else len(images), {images: coeff})

    @classmethod
    def chain_map(cls, n, seq):
        """[a0,...,ak]: a_i -> a_{i+1} for i<k, identity elsewhere (seq distinct)."""
        img = list(range(n))
        for a, b in zip(seq, seq[1:]):
            img[a] = b
        return tuple(img)

    # arithmetic
    def _check(self, other):
        if (self.src, self.dst) != (other.src, other.dst):
            raise ValidationError("formal sums live on different sets")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for f, c in other.terms.items():
            v = t.get(f, 0) + c
            if v:
                t[f] = v
            else:
                t.pop(f, None)
        return FormalMapSum._raw(self.src, self.dst, t)

    def __neg__(self):
        return FormalMapSum._raw(self.src, self.dst, {f: -c for f, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int):
        if k == 0:
            return FormalMapSum.zero(self.src, self.dst)
        return FormalMapSum._raw(self.src, self.dst, {f: k * c for f, c in self.terms.items()})

    def __rmul__(self, k):
        return self.scale(k)

    def __matmul__(self, other):
        return sum_compose(self, other)

    def __eq__(self, other):
        return (isinstance(other, FormalMapSum) and (self.src, self.dst) == (other.src, other.dst)
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.src, self.dst, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_idempotent(self) -> bool:
        return is_idempotent(self)

    def dump(self) -> str:
        """One line per term: 'coeff: [image list]'."""
        return "\n".join(f"{c}: {list(f)}" for f, c in sorted(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{list(f)}" for f, c in sorted(self.terms.items()))


def sum_compose(u: FormalMapSum, v: FormalMapSum) -> FormalMapSum:
    """u o v, bilinear: apply v first."""
    if v.dst != u.src:
        raise ValidationError(f"cannot compose: inner lands in {v.dst} points, outer starts at {u.src}")
    return FormalMapSum._raw(v.src, u.dst, kernels.compose_terms(u.terms, v.terms))


def is_idempotent(u: FormalMapSum) -> bool:
    return sum_compose(u, u) == u


def product(factors: Iterable[FormalMapSum], n: int) -> FormalMapSum:
    out = FormalMapSum.identity(n)
    for f in factors:
        out = sum_compose(out, f)
    return out


def apply_to_vector(u: FormalMapSum, vec):
    """Post-compose every map of a vector of maps X -> T with u (u acts on T)."""
    from .functor import MapVector  # local: functor imports this module
    terms = kernels.compose_terms(u.terms, vec.terms)
    return MapVector(vec.x_size, vec.lattice, terms, _trusted=True)


def commute(u: FormalMapSum, v: FormalMapSum) -> bool:
    return sum_compose(u, v) == sum_compose(v, u)
