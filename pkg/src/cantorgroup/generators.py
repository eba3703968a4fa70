"""Seeded random generators for maps, clopen sets, algebras and instances.

All generators take a :class:`random.Random` so identical seeds give
identical outputs.
"""

from __future__ import annotations

import random
from functools import cmp_to_key
from fractions import Fraction

from .cantor import ClopenSet
from .errors import InvalidInput
from .finalg.algebra import Automorphism, BlockPartition, MeasuredAlgebra
from .odometer import PiecewiseMap
from .valueset import ONE, ZERO, Order, Ring, Value, ValueGroup, value_sum

MAX_DEPTH = 12


# ----- odometer


def random_clopen(rng: random.Random, depth: int) -> ClopenSet:
    return ClopenSet(depth, rng.getrandbits(1 << depth))


def random_map(rng: random.Random, depth: int, cocycle_bound: int, max_restarts: int = 10_000) -> PiecewiseMap:
    """A random element of the full group whose cocycle is constant on depth-``depth``
    cylinders and bounded by ``cocycle_bound``.

    Cylinders are assigned powers one at a time, each uniformly among the
    powers whose target cylinder is still free; a dead end restarts the draw.
    """
    if not 0 <= depth <= MAX_DEPTH:
        raise InvalidInput(f"depth must be in [0, {MAX_DEPTH}]")
    if cocycle_bound < 0:
        raise InvalidInput("cocycle bound must be >= 0")
    size = 1 << depth
    for _ in range(max_restarts):
        used = [False] * size
        masks: dict[int, int] = {}
        for u in range(size):
            options = [k for k in range(-cocycle_bound, cocycle_bound + 1) if not used[(u + k) % size]]
            if not options:
                break
            k = rng.choice(options)
            used[(u + k) % size] = True
            masks[k] = masks.get(k, 0) | (1 << u)
        else:
            return PiecewiseMap.from_masks(depth, masks)
    raise InvalidInput("no bijective assignment found; try a larger cocycle bound")


# ----- value groups


def random_member(rng: random.Random, V: ValueGroup, below: Value, tries: int = 2000) -> Value | None:
    """A random member of V strictly between 0 and ``below``, or None."""
    basis = V.lattice_basis()
    for _ in range(tries):
        if V.ring is Ring.RATIONALS:
            # any rational multiple of a member is a member
            d = rng.randint(2, 8)
            return below * Fraction(rng.randint(1, d - 1), d)
        v = value_sum(rng.randint(-3, 3) * b for b in basis)
        if V.ring is Ring.INTEGERS_INVERTING:
            v = v / V.m ** rng.randint(0, 3)
        if v.is_zero():
            continue
        if V.sign(v) is Order.GREATER and V.compare(v, below) is Order.LESS:
            return v
    return None


def random_partition_of(rng: random.Random, V: ValueGroup, total: Value, parts: int) -> list[Value]:
    """Split ``total`` into at most ``parts`` positive members of V."""
    out = [total]
    while len(out) < parts:
        i = rng.randrange(len(out))
        y = random_member(rng, V, out[i])
        if y is None:
            break
        out[i : i + 1] = [out[i] - y, y]
    return out


def random_algebra(rng: random.Random, V: ValueGroup, atoms: int, prefix: str = "a") -> MeasuredAlgebra:
    parts = random_partition_of(rng, V, ONE, atoms)
    return MeasuredAlgebra(V, tuple((f"{prefix}{i}", m) for i, m in enumerate(parts)))


def cyclic_algebra(V: ValueGroup, cycles, prefix: str = "a") -> Automorphism:
    """Algebra with one cycle of ``n`` atoms of measure ``a`` per ``(a, n)``, and the
    automorphism rotating each cycle."""
    atoms, perm = [], {}
    for i, (a, n) in enumerate(cycles):
        labels = [f"{prefix}{i}_{t}" for t in range(n)]
        atoms += [(lab, a) for lab in labels]
        perm.update({labels[t]: labels[(t + 1) % n] for t in range(n)})
    return Automorphism(MeasuredAlgebra(V, tuple(atoms)), perm)


# ----- JEP instances


def _random_marginals(rng, V: ValueGroup, count: int, max_n: int, den: int | None = None):
    data = []
    rest = ONE
    for i in range(count - 1):
        n = rng.randint(1, max_n)
        if den is not None:
            # room left for one more unit of 1/den per remaining entry
            hi = (rest.rational * den - (count - 1 - i)) // n
            if hi < 1:
                break
            a = Value(Fraction(rng.randint(1, hi), den))
        else:
            a = random_member(rng, V, rest / (n + 1))
            if a is None:
                break
        data.append((a, n))
        rest = rest - n * a
    # last entry absorbs the remainder with a multiplicity that keeps it in V
    for n in sorted(range(1, max_n + 1), key=lambda _: rng.random()):
        if V.member(rest / n):
            data.append((rest / n, n))
            return data
    data.append((rest, 1))
    return data


def ring_case_instance(rng: random.Random, p: int | None = None, q: int | None = None):
    """A JEP instance over a value group declared to be a ring."""
    m = rng.choice([2, 2, 6, 10])
    V = ValueGroup.dyadic() if m == 2 else ValueGroup(Ring.INTEGERS_INVERTING, (ONE,), m=m, declared_ring=True)
    p = p or rng.randint(1, 4)
    q = q or rng.randint(1, 4)
    return V, _random_marginals(rng, V, p, 4), _random_marginals(rng, V, q, 4)


def q_like_instance(rng: random.Random, p: int | None = None, q: int | None = None, max_den: int = 64):
    V = ValueGroup.rationals()
    p = p or rng.randint(1, 5)
    q = q or rng.randint(1, 5)
    rows = _random_marginals(rng, V, p, 5, den=rng.randint(max(p, 2), max_den))
    cols = _random_marginals(rng, V, q, 5, den=rng.randint(max(q, 2), max_den))
    return V, rows, cols


def counterexample_instance():
    V = ValueGroup.half_and_inverse_pi()
    p = Value.symbol(V.symbols[0].name)
    return V, [(Value(Fraction(1, 2)), 2)], [(p, 1), (ONE - p, 1)]


# ----- extension instances


def extension_instance(rng: random.Random, V: ValueGroup, blocks: int = 3, partial: bool = False):
    """``(A, U, W, pairing)`` with ``U_i`` paired to an equal-measure ``W`` block.

    The U blocks are laid out on [0, 1] in one order and the W blocks (same
    measures) in another; atoms are the nonempty overlaps, so there are at most
    ``2 * blocks - 1`` of them.
    """
    sizes = random_partition_of(rng, V, ONE, blocks)
    k = len(sizes)
    order = list(range(k))
    rng.shuffle(order)
    cuts_u = _prefix_sums(sizes)
    cuts_w = _prefix_sums([sizes[i] for i in order])
    cuts = _sorted_values(V, cuts_u + cuts_w)
    atoms, u_of, w_of = [], {}, {}
    for t in range(len(cuts) - 1):
        lo, hi = cuts[t], cuts[t + 1]
        label = f"a{t}"
        atoms.append((label, hi - lo))
        u_of[label] = _segment(V, cuts_u, lo)
        w_of[label] = _segment(V, cuts_w, lo)
    A = MeasuredAlgebra(V, tuple(atoms))
    U = BlockPartition(A, {f"u{i}": tuple(a for a in u_of if u_of[a] == i) for i in range(k)})
    W = BlockPartition(A, {f"w{i}": tuple(a for a in w_of if order[w_of[a]] == i) for i in range(k)})
    pairing = {f"u{i}": f"w{i}" for i in range(k)}
    if partial and k > 1:
        drop = rng.sample(sorted(pairing), rng.randint(1, k - 1))
        for u in drop:
            del pairing[u]
    return A, U, W, pairing


def _prefix_sums(sizes):
    out, s = [ZERO], ZERO
    for x in sizes:
        s = s + x
        out.append(s)
    return out


def _sorted_values(V, values):
    uniq = list(dict.fromkeys(values))
    return sorted(uniq, key=cmp_to_key(lambda a, b: int(V.compare(a, b))))


def _segment(V, cuts, x):
    """Index ``i`` with ``cuts[i] <= x < cuts[i + 1]``."""
    for i in range(len(cuts) - 1):
        if V.le(cuts[i], x) and V.lt(x, cuts[i + 1]):
            return i
    raise AssertionError("point outside [0, 1)")


# ----- amalgamation triples


def _exact_split(rng, V, total, parts):
    for _ in range(50):
        out = random_partition_of(rng, V, total, parts)
        if len(out) == parts:
            return out
    raise InvalidInput(f"could not split {total} into {parts} parts")


def _equivariant_refinement(rng, V, phi, a_cycles, budget, prefix):
    """A cyclic ``(B, psi)`` and equivariant embedding of ``(A, phi)``.

    Below an ``n``-cycle of A-atoms sit psi-cycles of lengths ``n * t``;
    a psi-cycle of length ``n * t`` with weight ``w`` has atoms of measure ``w / t``.
    """
    spare = budget - sum(n for _, n in a_cycles)
    cycles, parent = [], []
    for idx, (a, n) in enumerate(a_cycles):
        ts = [rng.choice([1, 1, 2])]
        while rng.random() < 0.5:
            ts.append(rng.choice([1, 1, 2]))
        while sum(n * t for t in ts) - n > spare:
            ts.pop()
        ts = ts or [1]
        spare -= sum(n * t for t in ts) - n
        for w, t in zip(_exact_split(rng, V, a, len(ts)), ts):
            cycles.append((w / t, n * t))
            parent.append(idx)
    psi = cyclic_algebra(V, cycles, prefix=prefix)
    emb = {lab: [] for lab in phi.algebra.labels}
    for r, (_, length) in enumerate(cycles):
        base_n = a_cycles[parent[r]][1]
        for s in range(length):
            emb[f"a{parent[r]}_{s % base_n}"].append(f"{prefix}{r}_{s}")
    return psi, emb


def amalgam_triple(rng: random.Random, V: ValueGroup | None = None, max_a: int = 3, max_bc: int = 6):
    """``(phi, psi, f, theta, g)`` over a QQ-like V with equivariant embeddings."""
    V = V or ValueGroup.rationals()
    size = rng.randint(1, max_a)
    lengths = []
    while sum(lengths) < size:
        lengths.append(rng.randint(1, size - sum(lengths)))
    weights = _exact_split(rng, V, ONE, len(lengths))
    a_cycles = [(w / n, n) for w, n in zip(weights, lengths)]
    phi = cyclic_algebra(V, a_cycles, prefix="a")
    psi, f = _equivariant_refinement(rng, V, phi, a_cycles, max_bc, "b")
    theta, g = _equivariant_refinement(rng, V, phi, a_cycles, max_bc, "c")
    return phi, psi, f, theta, g


def cycle_instance(p: int, V: ValueGroup | None = None, extra: int = 1):
    """An automorphism with a p-cycle of blocks, each block holding ``extra``
    atoms, plus one fixed atom; returns ``(g, base_block)``."""
    V = V or ValueGroup.rationals()
    total = p * extra + 1
    unit = Value(Fraction(1, total))
    labels = [[f"x{i}_{e}" for e in range(extra)] for i in range(p)]
    atoms = [(lab, unit) for row in labels for lab in row] + [("fixed", unit)]
    perm = {labels[i][e]: labels[(i + 1) % p][e] for i in range(p) for e in range(extra)}
    A = MeasuredAlgebra(V, tuple(atoms))
    return Automorphism(A, perm), labels[0]


__all__ = [
    "amalgam_triple", "counterexample_instance", "cycle_instance", "cyclic_algebra",
    "extension_instance", "q_like_instance", "random_algebra", "random_clopen", "random_map",
    "random_member", "random_partition_of", "ring_case_instance",
]
