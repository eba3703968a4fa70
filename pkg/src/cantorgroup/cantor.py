"""Clopen subsets of {0,1}^omega, eventually constant points, the metric.

A binary word ``w_0 w_1 ... w_{n-1}`` is identified with the integer
``sum(w_j << j)`` (little-endian).  A :class:`ClopenSet` of depth ``n`` stores
the set of such integers ``u < 2**n`` as a bitmask: bit ``u`` set means the
cylinder ``[w(u)]`` is included.  Sets are always kept at minimal depth, so
structural equality is set equality.

Eventually constant points ``head . tail^omega`` are in bijection with the
ordinary integers viewed as 2-adic integers (tail 0 for ``z >= 0``, tail 1 for
two's-complement negatives).  This makes the odometer literally ``z -> z + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import EmptySet, InvalidInput


def _full_mask(depth: int) -> int:
    return (1 << (1 << depth)) - 1


def _refine_mask(mask: int, depth: int, new_depth: int) -> int:
    while depth < new_depth:
        mask |= mask << (1 << depth)
        depth += 1
    return mask


def word_to_int(word: str) -> int:
    if any(c not in "01" for c in word):
        raise InvalidInput(f"not a binary word: {word!r}")
    return sum(1 << j for j, c in enumerate(word) if c == "1")


def int_to_word(u: int, depth: int) -> str:
    return "".join("1" if (u >> j) & 1 else "0" for j in range(depth))


@dataclass(frozen=True)
class ClopenSet:
    depth: int
    mask: int

    def __post_init__(self):
        if self.depth < 0:
            raise InvalidInput("depth must be >= 0")
        if self.mask < 0 or self.mask >> (1 << self.depth):
            raise InvalidInput("mask has bits beyond 2**depth")
        depth, mask = self.depth, self.mask
        # Halve while the two children of every depth-(n-1) word agree.
        while depth > 0:
            half = 1 << (depth - 1)
            low = mask & ((1 << half) - 1)
            if mask >> half != low:
                break
            mask, depth = low, depth - 1
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_leaves(cls, depth: int, leaves: Iterable[int | str]) -> ClopenSet:
        mask = 0
        for leaf in leaves:
            if isinstance(leaf, str):
                if len(leaf) != depth:
                    raise InvalidInput(f"word {leaf!r} does not have length {depth}")
                leaf = word_to_int(leaf)
            if not 0 <= leaf < (1 << depth):
                raise InvalidInput(f"leaf {leaf} out of range for depth {depth}")
            mask |= 1 << leaf
        return cls(depth, mask)

    @classmethod
    def cylinder(cls, word: str) -> ClopenSet:
        return cls.from_leaves(len(word), [word])

    @classmethod
    def cylinder_int(cls, depth: int, u: int) -> ClopenSet:
        return cls(depth, 1 << u)

    @classmethod
    def full(cls) -> ClopenSet:
        return cls(0, 1)

    @classmethod
    def empty(cls) -> ClopenSet:
        return cls(0, 0)

    def refined(self, depth: int) -> int:
        """The bitmask of this set written at a greater or equal depth."""
        if depth < self.depth:
            raise ValueError("cannot coarsen below the canonical depth")
        return _refine_mask(self.mask, self.depth, depth)

    @property
    def leaves(self) -> list[int]:
        m, out, u = self.mask, [], 0
        while m:
            if m & 1:
                out.append(u)
            m >>= 1
            u += 1
        return out

    def words(self) -> list[str]:
        return [int_to_word(u, self.depth) for u in self.leaves]

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self.depth == 0 and self.mask == 1

    def __bool__(self):
        return self.mask != 0

    def __len__(self):
        return self.mask.bit_count()

    def _pair(self, other: ClopenSet):
        d = max(self.depth, other.depth)
        return d, self.refined(d), other.refined(d)

    def __or__(self, other: ClopenSet) -> ClopenSet:
        d, a, b = self._pair(other)
        return ClopenSet(d, a | b)

    def __and__(self, other: ClopenSet) -> ClopenSet:
        d, a, b = self._pair(other)
        return ClopenSet(d, a & b)

    def __sub__(self, other: ClopenSet) -> ClopenSet:
        d, a, b = self._pair(other)
        return ClopenSet(d, a & ~b)

    def __xor__(self, other: ClopenSet) -> ClopenSet:
        d, a, b = self._pair(other)
        return ClopenSet(d, a ^ b)

    def complement(self) -> ClopenSet:
        return ClopenSet(self.depth, self.mask ^ _full_mask(self.depth))

    def __invert__(self):
        return self.complement()

    def issubset(self, other: ClopenSet) -> bool:
        return (self - other).is_empty()

    __le__ = issubset

    def isdisjoint(self, other: ClopenSet) -> bool:
        return (self & other).is_empty()

    def measure(self) -> Fraction:
        return Fraction(self.mask.bit_count(), 1 << self.depth)

    def contains(self, x: CantorPoint) -> bool:
        return bool((self.mask >> x.prefix(self.depth)) & 1)

    def __contains__(self, x):
        return self.contains(x)

    def diameter(self) -> Fraction:
        return diameter(self)

    def __repr__(self):
        return f"ClopenSet(depth={self.depth}, leaves={self.words()})"


def union(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return a | b


def intersection(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return a & b


def difference(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    return a - b


def complement(a: ClopenSet) -> ClopenSet:
    return a.complement()


def measure(a: ClopenSet) -> Fraction:
    return a.measure()


def diameter(a: ClopenSet) -> Fraction:
    """``2**-p`` where ``p`` is the length of the longest prefix shared by every
    point of ``a``."""
    if a.is_empty():
        raise EmptySet("diameter of the empty set")
    leaves = a.leaves
    if len(leaves) == 1:
        return Fraction(1, 1 << a.depth)
    diff = 0
    for u in leaves[1:]:
        diff |= u ^ leaves[0]
    p = (diff & -diff).bit_length() - 1
    return Fraction(1, 1 << p)


@dataclass(frozen=True, order=True)
class CantorPoint:
    """The point ``head . tail^omega``; stored as its 2-adic integer value."""

    value: int

    @classmethod
    def from_head(cls, head: str, tail: int = 0) -> CantorPoint:
        if tail not in (0, 1):
            raise InvalidInput("tail bit must be 0 or 1")
        z = word_to_int(head)
        if tail:
            z -= 1 << len(head)
        return cls(z)

    @property
    def tail(self) -> int:
        return 1 if self.value < 0 else 0

    @property
    def head(self) -> str:
        z = self.value
        n = z.bit_length() if z >= 0 else (~z).bit_length()
        return int_to_word(z, n)

    def bit(self, i: int) -> int:
        return (self.value >> i) & 1

    def prefix(self, depth: int) -> int:
        return self.value % (1 << depth)

    def shift(self, k: int) -> CantorPoint:
        """``phi**k`` applied to this point."""
        return CantorPoint(self.value + k)

    def __repr__(self):
        return f"CantorPoint({self.head!r}, tail={self.tail})"


def distance(x: CantorPoint, y: CantorPoint) -> Fraction:
    diff = x.value ^ y.value
    if diff == 0:
        return Fraction(0)
    # for two's-complement values xor is a nonzero integer whose lowest set
    # bit is the first differing coordinate
    i = (diff & -diff).bit_length() - 1
    return Fraction(1, 1 << i)
