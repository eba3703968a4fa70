"""Joint embedding of automorphisms of finite measured algebras.

Two automorphisms with cycle data ``(a_i, n_i)`` and ``(b_j, m_j)`` (atom measure
and cycle length, one row per cycle) embed jointly iff there are ``c_ij`` in V,
``c_ij >= 0``, with

    sum_i lcm(n_i, m_j) * c_ij == m_j * b_j    for every j,
    sum_j lcm(n_i, m_j) * c_ij == n_i * a_i    for every i.

:func:`jep_instance` decides such systems where it can: closed form for rings,
northwest corner for QQ-like groups, exact linear algebra when the solution is
unique, and a bounded lattice search otherwise (reporting UNKNOWN when the
search box or step budget runs out).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .. import _linalg
from ..errors import InvalidInstance, MeasureNotDivisible, NotGroupLike, PrecisionExhausted
from ..valueset import ONE, ZERO, Order, Value, ValueGroup, value_sum
from .algebra import Automorphism, MeasuredAlgebra, validate_embedding
from .transport import northwest_corner

SAT, UNSAT, UNKNOWN = "SAT", "UNSAT", "UNKNOWN"

DEFAULT_BOUND = 32
DEFAULT_STEP_BUDGET = 200_000


@dataclass
class JepResult:
    status: str
    witness: list[list[Value]] | None = None
    method: str = ""
    reason: str = ""

    def __bool__(self):
        return self.status == SAT


def _check_instance(V: ValueGroup, rows, cols):
    for side, data in (("row", rows), ("col", cols)):
        if not data:
            raise InvalidInstance(f"no {side}s")
        for v, k in data:
            if not isinstance(k, int) or k < 1:
                raise InvalidInstance(f"{side} multiplicity {k!r} must be a positive integer")
            if not V.member(v):
                raise InvalidInstance(f"{side} value {v} is not in V")
            if V.sign(v) is not Order.GREATER:
                raise InvalidInstance(f"{side} value {v} is not positive")
        if value_sum(k * v for v, k in data) != ONE:
            raise InvalidInstance(f"{side} totals do not sum to 1")


def verify_witness(V: ValueGroup, rows, cols, c) -> bool:
    """Exact re-check of both marginal systems, membership and c >= 0."""
    p, q = len(rows), len(cols)
    if len(c) != p or any(len(r) != q for r in c):
        return False
    for i, (a, n) in enumerate(rows):
        if value_sum(lcm(n, cols[j][1]) * c[i][j] for j in range(q)) != n * a:
            return False
    for j, (b, m) in enumerate(cols):
        if value_sum(lcm(rows[i][1], m) * c[i][j] for i in range(p)) != m * b:
            return False
    return all(V.member(x) and V.sign(x) is not Order.LESS for r in c for x in r)


def ring_witness(rows, cols):
    return [[a * b * gcd(n, m) for b, m in cols] for a, n in rows]


def northwest_witness(V: ValueGroup, rows, cols):
    y = northwest_corner(V, [n * a for a, n in rows], [m * b for b, m in cols])
    return [[y[i][j] / lcm(rows[i][1], cols[j][1]) for j in range(len(cols))] for i in range(len(rows))]


def jep_instance(
    V: ValueGroup,
    rows: Sequence[tuple[Value, int]],
    cols: Sequence[tuple[Value, int]],
    bound: int = DEFAULT_BOUND,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> JepResult:
    rows, cols = [tuple(r) for r in rows], [tuple(c) for c in cols]
    _check_instance(V, rows, cols)

    if V.declared_ring:
        c = ring_witness(rows, cols)
        if verify_witness(V, rows, cols, c):
            return JepResult(SAT, c, "ring")
    if V.is_q_like():
        c = northwest_witness(V, rows, cols)
        if verify_witness(V, rows, cols, c):
            return JepResult(SAT, c, "northwest")
        raise AssertionError("northwest-corner witness failed in a QQ-like group")

    p, q = len(rows), len(cols)
    lcms = [[lcm(n, m) for _, m in cols] for _, n in rows]
    matrix = []
    for j in range(q):
        matrix.append([lcms[i][jj] if jj == j else 0 for i in range(p) for jj in range(q)])
    for i in range(p):
        matrix.append([lcms[ii][j] if ii == i else 0 for ii in range(p) for j in range(q)])
    targets = [m * b for b, m in cols] + [n * a for a, n in rows]

    if _linalg.rank(matrix) == p * q:
        # one value per cell; solve coordinate by coordinate (QQ-independence)
        vecs = [V.vector(t) for t in targets]
        cells = [[ZERO] * q for _ in range(p)]
        dim = len(vecs[0])
        coords = []
        for t in range(dim):
            x = _linalg.solve(matrix, [vec[t] for vec in vecs])
            if x is None:
                return JepResult(UNSAT, None, "unique", "marginal systems are inconsistent")
            coords.append(x)
        for i in range(p):
            for j in range(q):
                cells[i][j] = V.from_vector([coords[t][i * q + j] for t in range(dim)])
        for i in range(p):
            for j in range(q):
                x = cells[i][j]
                if not V.member(x):
                    return JepResult(UNSAT, None, "unique", f"c[{i}][{j}] = {x} is forced and not in V")
                if V.sign(x) is Order.LESS:
                    return JepResult(UNSAT, None, "unique", f"c[{i}][{j}] = {x} is forced and negative")
        return JepResult(SAT, cells, "unique")

    try:
        c = northwest_witness(V, rows, cols)
        if verify_witness(V, rows, cols, c):
            return JepResult(SAT, c, "northwest")
    except PrecisionExhausted:
        pass
    return _lattice_search(V, rows, cols, lcms, bound, step_budget)


class _BudgetExhausted(Exception):
    pass


def _scale(V: ValueGroup, values, lcms) -> int:
    if V.m is None:
        return 1
    need = 0
    for v in values:
        for x in V.lattice_coordinates(v) or ():
            d, k = x.denominator, 0
            while d % V.m ** k:
                k += 1
            need = max(need, k)
    extra = 0
    for L in itertools.chain.from_iterable(lcms):
        m_part = L // _linalg.strip_factors(L, V.m)
        k = 0
        while V.m ** k % m_part:
            k += 1
        extra = max(extra, k)
    return V.m ** (need + extra)


def _lattice_search(V, rows, cols, lcms, bound, step_budget) -> JepResult:
    p, q = len(rows), len(cols)
    basis = V.lattice_basis()
    scale = _scale(V, [n * a for a, n in rows] + [m * b for b, m in cols], lcms)
    free_cells = [(i, j) for i in range(p - 1) for j in range(q - 1)]
    steps = 0

    # small coefficients first, so the simplest witness is the one reported
    coeffs = sorted(
        itertools.product(range(-bound, bound + 1), repeat=len(basis)),
        key=lambda z: (max(map(abs, z)), sum(map(abs, z))),
    )
    pool = [value_sum(Fraction(k, scale) * e for k, e in zip(z, basis)) for z in coeffs]

    def place(x, L, i, j, rowres, colres, plan):
        y = L * x
        if V.sign(y) is Order.LESS:
            return False
        if V.compare(y, rowres[i]) is Order.GREATER or V.compare(y, colres[j]) is Order.GREATER:
            return False
        plan[i][j] = x
        rowres[i] = rowres[i] - y
        colres[j] = colres[j] - y
        return True

    def finish(rowres, colres, plan):
        rowres, colres, plan = list(rowres), list(colres), [list(r) for r in plan]
        for i in range(p - 1):
            x = rowres[i] / lcms[i][q - 1]
            if not V.member(x) or not place(x, lcms[i][q - 1], i, q - 1, rowres, colres, plan):
                return None
        for j in range(q):
            x = colres[j] / lcms[p - 1][j]
            if not V.member(x) or not place(x, lcms[p - 1][j], p - 1, j, rowres, colres, plan):
                return None
        return plan if verify_witness(V, rows, cols, plan) else None

    def dfs(k, rowres, colres, plan):
        nonlocal steps
        if k == len(free_cells):
            return finish(rowres, colres, plan)
        i, j = free_cells[k]
        for x in pool:
            steps += 1
            if steps > step_budget:
                raise _BudgetExhausted
            r2, c2, pl2 = list(rowres), list(colres), [list(r) for r in plan]
            if not place(x, lcms[i][j], i, j, r2, c2, pl2):
                continue
            found = dfs(k + 1, r2, c2, pl2)
            if found is not None:
                return found
        return None

    rowres = [n * a for a, n in rows]
    colres = [m * b for b, m in cols]
    plan = [[ZERO] * q for _ in range(p)]
    try:
        found = dfs(0, rowres, colres, plan)
    except _BudgetExhausted:
        return JepResult(UNKNOWN, None, "search", f"step budget {step_budget} exhausted")
    if found is not None:
        return JepResult(SAT, found, "search")
    return JepResult(UNKNOWN, None, "search", f"no witness with coefficients in [-{bound}, {bound}]")


# ----- cycles


@dataclass
class JointCycle:
    """An ``lcm(n, m)``-cycle on equal atoms with the ``n``- and ``m``-cycles inside.

    ``embed_a[i]`` is the union of atoms identified with the ``i``-th atom of
    the ``n``-cycle, likewise ``embed_b``.
    """

    atoms: list[tuple[str, Value]]
    perm: dict[str, str]
    embed_a: dict[int, list[str]]
    embed_b: dict[int, list[str]]


def build_joint_cycle(n: int, m: int, total: Value, V: ValueGroup, prefix: str = "C") -> JointCycle:
    N = lcm(n, m)
    piece = total / N
    if not V.member(piece):
        raise MeasureNotDivisible(f"{total} / {N} is not in V")
    labels = [f"{prefix}{k}" for k in range(N)]
    perm = {labels[k]: labels[(k + 1) % N] for k in range(N)}
    r, s = N // n, N // m
    embed_a = {i: [labels[n * k + i] for k in range(r)] for i in range(n)}
    embed_b = {j: [labels[m * k + j] for k in range(s)] for j in range(m)}
    return JointCycle([(lab, piece) for lab in labels], perm, embed_a, embed_b)


@dataclass
class JointEmbedding:
    status: str
    jep: JepResult
    algebra: MeasuredAlgebra | None = None
    gamma: Automorphism | None = None
    embed_a: dict[str, list[str]] = field(default_factory=dict)
    embed_b: dict[str, list[str]] = field(default_factory=dict)


def cycle_data(alpha: Automorphism):
    cycles = alpha.cycles()
    return cycles, [(alpha.algebra.measure(c[0]), len(c)) for c in cycles]


def joint_embed_automorphisms(
    alpha: Automorphism,
    beta: Automorphism,
    bound: int = DEFAULT_BOUND,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> JointEmbedding:
    """Embed ``(A, alpha)`` and ``(B, beta)`` equivariantly into a common ``(C, gamma)``."""
    V = alpha.algebra.V
    if beta.algebra.V != V:
        raise InvalidInstance("automorphisms live over different value groups")
    a_cycles, rows = cycle_data(alpha)
    b_cycles, cols = cycle_data(beta)
    res = jep_instance(V, rows, cols, bound, step_budget)
    if res.status != SAT:
        return JointEmbedding(res.status, res)

    atoms, perm = [], {}
    embed_a = {a: [] for a in alpha.algebra.labels}
    embed_b = {b: [] for b in beta.algebra.labels}
    for i, acyc in enumerate(a_cycles):
        for j, bcyc in enumerate(b_cycles):
            c = res.witness[i][j]
            if c.is_zero():
                continue
            n, m = len(acyc), len(bcyc)
            jc = build_joint_cycle(n, m, lcm(n, m) * c, V, prefix=f"c{i}_{j}.")
            atoms += jc.atoms
            perm.update(jc.perm)
            for t, label in enumerate(acyc):
                embed_a[label] += jc.embed_a[t]
            for t, label in enumerate(bcyc):
                embed_b[label] += jc.embed_b[t]
    C = MeasuredAlgebra(V, tuple(atoms))
    gamma = Automorphism(C, perm)
    for src, emb, aut in ((alpha.algebra, embed_a, alpha), (beta.algebra, embed_b, beta)):
        check = validate_embedding(src, C, emb, aut, gamma)
        if not check:
            raise AssertionError(f"joint embedding failed its own check: {check}")
    return JointEmbedding(SAT, res, C, gamma, embed_a, embed_b)


# ----- dense conjugacy class hint


@dataclass
class DenseHint:
    status: str  # "YES" | "NO" | "UNKNOWN"
    reason: str
    rows: list[tuple[Value, int]] | None = None
    cols: list[tuple[Value, int]] | None = None


def dense_class_hint(V: ValueGroup, max_n: int = 12) -> DenseHint:
    """Semi-decision for the existence of a dense conjugacy class.

    NO comes with an explicit failing instance: an ``n``-cycle of atoms of
    measure ``1/n`` against a fixed clopen of measure ``r`` with ``r/n`` outside V.
    """
    if not V.is_group_like():
        raise NotGroupLike("value set is not group-like")
    if V.is_q_like():
        return DenseHint("YES", "V + Z is a QQ-vector space")
    if V.declared_ring:
        return DenseHint("YES", "V + Z is a ring")
    gens = sorted(V.generators, key=lambda g: g.is_rational())
    for n in range(2, max_n + 1):
        unit = Value(Fraction(1, n))
        if not V.member(unit):
            continue
        for r in gens:
            if r == ONE or V.member(r / n):
                continue
            rows, cols = [(unit, n)], [(r, 1), (ONE - r, 1)]
            if jep_instance(V, rows, cols).status == UNSAT:
                return DenseHint("NO", f"1/{n} is in V but {r}/{n} is not", rows, cols)
    return DenseHint("UNKNOWN", "no failing instance of the simple schema found")
