"""The dyadic odometer and its topological full group.

Elements of the topological full group are stored as their cocycle level sets:
a :class:`PiecewiseMap` maps each power ``k`` to the clopen set ``D_k`` on which
the map agrees with ``phi**k``.  On a cylinder of depth ``n`` with prefix
integer ``u``, ``phi**k`` has image the cylinder ``(u + k) mod 2**n``, so all
set-level computations reduce to rotating bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .cantor import CantorPoint, ClopenSet, _full_mask
from .errors import InvalidDelta, InvalidInput, InvariantViolation, MeasureMismatch, MeasureNotDominated


def _rotate(mask: int, depth: int, k: int) -> int:
    size = 1 << depth
    k %= size
    if k == 0:
        return mask
    full = _full_mask(depth)
    return ((mask << k) | (mask >> (size - k))) & full


def image_set(a: ClopenSet, k: int) -> ClopenSet:
    """``phi**k(a)``, computed at the canonical depth of ``a``."""
    return ClopenSet(a.depth, _rotate(a.mask, a.depth, k))


def _valuation2(n: int) -> int:
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class PiecewiseMap:
    """``x -> phi**k(x)`` for ``x`` in ``levels[k]``."""

    pieces: tuple[tuple[int, ClopenSet], ...]

    def __init__(self, pieces: Iterable[tuple[ClopenSet, int]] | Mapping[int, ClopenSet], *, check: bool = True):
        if isinstance(pieces, Mapping):
            items = [(dom, k) for k, dom in pieces.items()]
        else:
            items = list(pieces)
        merged: dict[int, ClopenSet] = {}
        for dom, k in items:
            if dom.is_empty():
                continue
            merged[k] = merged[k] | dom if k in merged else dom
        object.__setattr__(self, "pieces", tuple(sorted(merged.items(), key=lambda kv: kv[0])))
        if check:
            self.validate()

    @classmethod
    def identity(cls) -> PiecewiseMap:
        return cls({0: ClopenSet.full()}, check=False)

    @classmethod
    def power(cls, k: int) -> PiecewiseMap:
        return cls({k: ClopenSet.full()}, check=False)

    @classmethod
    def from_masks(cls, depth: int, masks: Mapping[int, int], check: bool = True) -> PiecewiseMap:
        return cls({k: ClopenSet(depth, m) for k, m in masks.items()}, check=check)

    # ----- structure

    @property
    def depth(self) -> int:
        return max((d.depth for _, d in self.pieces), default=0)

    def level_sets(self) -> dict[int, ClopenSet]:
        return dict(self.pieces)

    def cocycle_bound(self) -> int:
        return max((abs(k) for k, _ in self.pieces), default=0)

    def images(self) -> dict[int, ClopenSet]:
        return {k: image_set(d, k) for k, d in self.pieces}

    def validate(self) -> None:
        for name, sets in (("domains", [d for _, d in self.pieces]), ("images", list(self.images().values()))):
            depth = max((s.depth for s in sets), default=0)
            union, count = 0, 0
            for s in sets:
                m = s.refined(depth)
                union |= m
                count += m.bit_count()
            if union != _full_mask(depth) or count != 1 << depth:
                raise InvariantViolation(f"{name} do not partition X")

    def is_identity(self) -> bool:
        return len(self.pieces) == 1 and self.pieces[0][0] == 0

    def power_at(self, x: CantorPoint) -> int:
        for k, d in self.pieces:
            if d.contains(x):
                return k
        raise InvariantViolation(f"{x!r} is not covered by any piece")

    def __call__(self, x: CantorPoint) -> CantorPoint:
        return x.shift(self.power_at(x))

    def apply_set(self, a: ClopenSet) -> ClopenSet:
        out = ClopenSet.empty()
        for k, d in self.pieces:
            out = out | image_set(a & d, k)
        return out

    def __matmul__(self, other: PiecewiseMap) -> PiecewiseMap:
        return compose(self, other)

    def __mul__(self, other: PiecewiseMap) -> PiecewiseMap:
        return compose(self, other)

    def __invert__(self) -> PiecewiseMap:
        return inverse(self)

    def __repr__(self):
        body = ", ".join(f"{k}: {d.words()}@{d.depth}" for k, d in self.pieces)
        return f"PiecewiseMap({{{body}}})"


PHI = PiecewiseMap.power(1)
IDENTITY = PiecewiseMap.identity()


def eval_point(g: PiecewiseMap, x: CantorPoint) -> CantorPoint:
    return g(x)


def compose(g: PiecewiseMap, h: PiecewiseMap) -> PiecewiseMap:
    """``g o h``: on ``D_a(h) & phi**-a(D_b(g))`` the composite is ``phi**(a+b)``."""
    out: dict[int, ClopenSet] = {}
    for a, dh in h.pieces:
        for b, dg in g.pieces:
            s = dh & image_set(dg, -a)
            if s:
                out[a + b] = out[a + b] | s if a + b in out else s
    return PiecewiseMap(out, check=False)


def inverse(g: PiecewiseMap) -> PiecewiseMap:
    return PiecewiseMap({-k: image_set(d, k) for k, d in g.pieces}, check=False)


def is_identity(g: PiecewiseMap) -> bool:
    return g.is_identity()


def cocycle_bound(g: PiecewiseMap) -> int:
    return g.cocycle_bound()


def level_sets(g: PiecewiseMap) -> dict[int, ClopenSet]:
    return g.level_sets()


def tree_rank(g: PiecewiseMap) -> int:
    """Rank of the tree of shrinking clopen chains avoiding the cocycle levels.

    A chain ``(U_0, ..., U_n)`` exists iff some point avoids every ``D_k`` with
    ``|k| <= n``, i.e. iff ``n < K``.  The longest chains have ``K`` terms, so the
    rank is ``K + 1``; the identity has no chains at all and gets rank 0.
    """
    if g.is_identity():
        return 0
    return g.cocycle_bound() + 1


def order(g: PiecewiseMap, max_iter: int) -> int | None:
    """Least ``m`` with ``g**m == id``, or None if none exists up to ``max_iter``."""
    if max_iter < 1:
        raise InvalidInput("max_iter must be >= 1")
    cur = g
    for m in range(1, max_iter + 1):
        if cur.is_identity():
            return m
        cur = compose(cur, g)
    return None


def sup_distance(g: PiecewiseMap, h: PiecewiseMap) -> Fraction:
    """``max_x d(g(x), h(x))``, exact.

    Each nonempty overlap of a ``g``-piece of power ``a`` with an ``h``-piece of
    power ``b != a`` is split into cylinders until ``phi**a`` and ``phi**b`` send
    the cylinder to different prefixes; the first differing bit is then the
    same for every point of the cylinder.
    """
    best = Fraction(0)
    for a, dg in g.pieces:
        for b, dh in h.pieces:
            if a == b:
                continue
            s = dg & dh
            if not s:
                continue
            stack = [(s.depth, u) for u in s.leaves]
            while stack:
                m, u = stack.pop()
                diff = ((u + a) ^ (u + b)) & ((1 << m) - 1)
                if diff:
                    best = max(best, Fraction(1, 1 << _valuation2(diff)))
                else:
                    stack.append((m + 1, u))
                    stack.append((m + 1, u + (1 << m)))
    return best


@dataclass(frozen=True)
class KRPartition:
    """Single-tower Kakutani-Rokhlin partition with base ``[0^n]``."""

    base_depth: int
    levels: tuple[ClopenSet, ...]

    @property
    def height(self) -> int:
        return len(self.levels)

    @property
    def base(self) -> ClopenSet:
        return self.levels[0]

    @property
    def top(self) -> ClopenSet:
        return self.levels[-1]

    def level_index(self, u: int) -> int:
        """Tower level of the depth-``n`` cylinder with prefix integer ``u``."""
        return u

    def y(self, i: int) -> ClopenSet:
        return self.levels[i % self.height]

    def z(self, i: int) -> ClopenSet:
        return self.levels[-i % self.height]


def kr_partition(n: int) -> KRPartition:
    if n < 1:
        raise InvalidInput("tower depth must be >= 1")
    base = ClopenSet.cylinder_int(n, 0)
    levels = [base]
    for _ in range((1 << n) - 1):
        levels.append(image_set(levels[-1], 1))
    return KRPartition(n, tuple(levels))


def _swap_matching(a: ClopenSet, b: ClopenSet, depth: int) -> PiecewiseMap:
    am, bm = a.refined(depth), b.refined(depth)
    src, dst = am & ~bm, bm & ~am
    src_l = [u for u in range(1 << depth) if (src >> u) & 1]
    dst_l = [u for u in range(1 << depth) if (dst >> u) & 1]
    masks: dict[int, int] = {}
    moved = 0
    for u, v in zip(src_l, dst_l):
        masks[v - u] = masks.get(v - u, 0) | (1 << u)
        masks[u - v] = masks.get(u - v, 0) | (1 << v)
        moved |= (1 << u) | (1 << v)
    masks[0] = masks.get(0, 0) | (_full_mask(depth) & ~moved)
    return PiecewiseMap.from_masks(depth, masks, check=False)


def gw_transport(a: ClopenSet, b: ClopenSet) -> PiecewiseMap:
    """An involution ``g`` with ``g(a) <= b``; requires ``mu(a) < mu(b)``.

    ``a & b`` stays fixed; the cylinders of ``a - b`` are swapped, in ascending
    prefix order, with the first cylinders of ``b - a``.
    """
    if not a.measure() < b.measure():
        raise MeasureNotDominated(f"mu(A)={a.measure()} is not below mu(B)={b.measure()}")
    return _swap_matching(a, b, max(a.depth, b.depth))


def gw_equivalence(a: ClopenSet, b: ClopenSet) -> PiecewiseMap:
    if a.measure() != b.measure():
        raise MeasureMismatch(f"mu(A)={a.measure()} != mu(B)={b.measure()}")
    return _swap_matching(a, b, max(a.depth, b.depth))


def _dyadic_exponent(delta: Fraction) -> int:
    delta = Fraction(delta)
    if not (0 < delta <= 1) or delta.numerator != 1 or delta.denominator & (delta.denominator - 1):
        raise InvalidDelta(f"delta must be 2**-d with d >= 0, got {delta}")
    return delta.denominator.bit_length() - 1


def gm_finite_order_approx(gamma: PiecewiseMap, delta) -> PiecewiseMap:
    """A finite-order ``P`` within ``delta`` of ``gamma`` (and inverses likewise).

    The tower has depth ``n`` large enough that the cocycles of ``gamma`` and
    its inverse are constant on levels, the height is at least ``2K + 2`` and
    levels have diameter below ``delta``.  Level ``i`` with ``gamma = phi**j``
    keeps ``gamma`` if ``i + j`` stays in the tower; otherwise the move is
    redirected by ``+-h`` so that it wraps between top and bottom instead.
    """
    d = _dyadic_exponent(delta)
    K = gamma.cocycle_bound()
    n = max(1, d + 1, gamma.depth, inverse(gamma).depth)
    while (1 << n) < 2 * K + 2:
        n += 1
    tower = kr_partition(n)
    h = tower.height
    jmap = {}
    for k, dom in gamma.pieces:
        m = dom.refined(n)
        for i in range(h):
            if (m >> i) & 1:
                jmap[i] = k
    masks: dict[int, int] = {}
    for i in range(h):
        j = jmap[i]
        if 0 <= j + i <= h - 1:
            p = j
        elif j + i < 0:
            # level i is Y_i with i < K; gamma(Y_i) = Z_l
            l = -(j + i)
            assert i < K and 1 <= l <= K
            p = -i + h - l
        else:
            # level i is Z_{j'}; gamma(Z_{j'}) = Y_l
            jj, l = h - i, i + j - h
            assert 1 <= jj <= K and 0 <= l < K
            p = -i + l
        masks[p] = masks.get(p, 0) | (1 << i)
    return PiecewiseMap.from_masks(n, masks)
