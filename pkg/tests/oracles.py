"""Independent oracles and postcondition checkers shared by the test modules."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from cantorgroup.cantor import CantorPoint, ClopenSet
from cantorgroup.valueset import Order, value_sum


# ----- points and maps


def sample_points(depth: int):
    """All points ``w . t^omega`` with ``|w| = depth`` and ``t`` in {0, 1}."""
    for u in range(1 << depth):
        word = "".join(str((u >> j) & 1) for j in range(depth))
        for tail in (0, 1):
            yield CantorPoint.from_head(word, tail)


def pointwise_power(g, x: CantorPoint) -> int:
    """The power used by ``g`` at ``x``, read off by scanning pieces directly."""
    hits = [k for k, dom in g.pieces if dom.contains(x)]
    assert len(hits) == 1, f"{x} lies in {len(hits)} domains"
    return hits[0]


def bitwise_distance(x: CantorPoint, y: CantorPoint, horizon: int = 64) -> Fraction:
    for i in range(horizon):
        if x.bit(i) != y.bit(i):
            return Fraction(1, 2**i)
    return Fraction(0)


def sampled_sup_distance(g, h, depth: int) -> Fraction:
    return max(bitwise_distance(g(x), h(x)) for x in sample_points(depth))


def chain_search_rank(g) -> int:
    """Tree rank by exhaustive search over chains of unions of level sets.

    A node ``(U_0, ..., U_n)`` needs ``U_j`` nonempty, decreasing, and disjoint
    from the levels of powers ``j`` and ``-j``.  The identity's tree has no
    nodes and rank 0; otherwise the rank is ``rank(root) + 1``.
    """
    levels = [(k, dom) for k, dom in g.level_sets().items() if not dom.is_empty()]
    atoms = len(levels)
    powers = [k for k, _ in levels]

    def allowed(mask: int, j: int) -> bool:
        return all(not (mask >> t) & 1 or abs(powers[t]) != j for t in range(atoms))

    @lru_cache(maxsize=None)
    def node_rank(mask: int, j: int) -> int:
        # rank of a chain whose last set is ``mask`` placed at index ``j``
        best = -1
        sub = mask
        while sub:
            if allowed(sub, j + 1):
                best = max(best, node_rank(sub, j + 1))
            sub = (sub - 1) & mask
        return best + 1

    full = (1 << atoms) - 1
    firsts = [node_rank(m, 0) for m in range(1, full + 1) if allowed(m, 0)]
    if not firsts:
        return 0
    return max(firsts) + 2


# ----- finite algebras


def check_extension(A, U, W, pairing, refinement, h):
    """Postconditions of a partial-automorphism extension; returns a list of failures."""
    V = A.V
    problems = []
    B = refinement.algebra()
    emb = refinement.embedding()
    if set(h.perm) != set(B.labels) or sorted(h.perm.values()) != sorted(B.labels):
        problems.append("not a permutation")
    for c, m in B.atoms:
        if not V.member(m) or V.sign(m) is not Order.GREATER:
            problems.append(f"child {c} has a bad measure")
        if B.measure(h.perm[c]) != m:
            problems.append(f"h does not preserve the measure of {c}")
    for a in A.labels:
        if value_sum(B.measure(c) for c in emb[a]) != A.measure(a):
            problems.append(f"children of {a} do not sum to its measure")

    def lift(atoms):
        return {c for a in atoms for c in emb[a]}

    for u, w in pairing.items():
        if {h.perm[c] for c in lift(U.blocks[u])} != lift(W.blocks[w]):
            problems.append(f"h does not send {u} onto {w}")
    rest_u = lift(a for u in U.blocks if u not in pairing for a in U.blocks[u])
    rest_w = lift(a for w in W.blocks if w not in set(pairing.values()) for a in W.blocks[w])
    if {h.perm[c] for c in rest_u} != rest_w:
        problems.append("unpaired remainder is not mapped onto the unpaired remainder")
    return problems


def check_amalgam(phi, psi, f, theta, g, am):
    """Marginals, equivariance and the commuting square of an amalgam."""
    D = am.algebra
    problems = []
    for name, alg, emb in (("B", psi.algebra, am.embed_b), ("C", theta.algebra, am.embed_c)):
        for x in alg.labels:
            if D.measure_of(emb[x]) != alg.measure(x):
                problems.append(f"{name}-marginal of {x} is wrong")
        covered = sorted(d for x in alg.labels for d in emb[x])
        if covered != sorted(D.labels):
            problems.append(f"{name}-images do not partition D")
    for name, aut, emb in (("B", psi, am.embed_b), ("C", theta, am.embed_c)):
        for x in aut.algebra.labels:
            if am.automorphism.image(emb[x]) != set(emb[aut(x)]):
                problems.append(f"psi(x)theta is not equivariant on {name}-atom {x}")
    for a in phi.algebra.labels:
        via_b = {d for b in f[a] for d in am.embed_b[b]}
        via_c = {d for c in g[a] for d in am.embed_c[c]}
        if via_b != via_c:
            problems.append(f"square does not commute at {a}")
    return problems


def check_transport_equations(psi, theta, f, g, transport):
    """The orbit-level system: column sums ``m_l mu(c^l_0)``, row sums ``n_k mu(b^k_0)``."""
    y = transport.y
    B, C = psi.algebra, theta.algebra
    for k, row in enumerate(transport.row_orbits):
        if value_sum(y[k]) != len(row) * B.measure(row[0]):
            return False
    for l, col in enumerate(transport.col_orbits):
        if value_sum(y[k][l] for k in range(len(y))) != len(col) * C.measure(col[0]):
            return False
    return True


def brute_dyadic_member(q: Fraction, max_exp: int = 8) -> bool:
    """``q`` is ``k / 2**n`` for some integer ``k`` and ``n <= max_exp``."""
    return any((q * 2**n).denominator == 1 for n in range(max_exp + 1))


def brute_jep_check(rows, cols, c) -> bool:
    """Marginal systems re-derived from the atom-level picture, using plain Fractions."""
    for i, (a, n) in enumerate(rows):
        if sum(lcm(n, m) * c[i][j] for j, (_, m) in enumerate(cols)) != n * a:
            return False
    for j, (b, m) in enumerate(cols):
        if sum(lcm(n, m) * c[i][j] for i, (_, n) in enumerate(rows)) != m * b:
            return False
    return all(x >= 0 for row in c for x in row)


def ring_closed_form(rows, cols):
    return [[a * b * gcd(n, m) for b, m in cols] for a, n in rows]


def cylinders(depth: int):
    return [ClopenSet.cylinder_int(depth, u) for u in range(1 << depth)]
