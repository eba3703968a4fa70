"""Extending a measure-preserving block pairing to an automorphism of a refinement.

Input: blocks ``U_0..U_{n-1}`` and ``W_0..W_{n-1}`` of a finite measured
algebra with ``mu(U_i) == mu(W_i)``.  Output: a refinement together with a
permutation ``h`` of its atoms such that every piece of an atom inside ``U_i``
is sent to a piece of an atom inside ``W_i``.

Each round builds a finite tree of pieces ``C[sigma]``.  The first level takes
everything still free in ``W_0``.  A node inside ``U_i`` with ``i != 0`` gets
children carved greedily, in atom order, from the free part of ``W_i``; nodes
inside ``U_0`` are leaves.  The pieces are then re-split bottom-up so that each
node's partition mirrors its children's, giving a permutation which walks
down the tree and returns from each leaf to the top level.  Anything not
consumed is handled by the next round with the next nonempty block as ``U_0``.

Pieces are abstract: only their atom and their measure are tracked, which is
all the algebra needs (any atom may be split into positive parts with values
in V).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import InvalidInput, InvariantViolation
from ..valueset import ZERO, Order, Value, value_sum
from .algebra import Automorphism, BlockPartition, MeasuredAlgebra, Refinement

MAX_LEVELS = 10_000


@dataclass
class _Node:
    atom: str
    measure: Value
    children: list[tuple[int, ...]]


def _pairs(alg: MeasuredAlgebra, U: BlockPartition, W: BlockPartition, pairing: Mapping[str, str]):
    V = alg.V
    if U.algebra != alg or W.algebra != alg:
        raise InvalidInput("block partitions must live on the given algebra")
    if len(set(pairing.values())) != len(pairing):
        raise InvalidInput("pairing is not injective")
    pairs = []
    for u, w in pairing.items():
        if u not in U.blocks or w not in W.blocks:
            raise InvalidInput(f"pairing {u} -> {w} names an unknown block")
        if V.compare(U.measure(u), W.measure(w)) is not Order.EQUAL:
            raise InvalidInput(f"blocks {u} and {w} have different measures")
        pairs.append((set(U.blocks[u]), set(W.blocks[w])))
    rest_u = set(alg.labels) - {a for p, _ in pairs for a in p}
    rest_w = set(alg.labels) - {a for _, q in pairs for a in q}
    if rest_u or rest_w:
        if not rest_u or not rest_w:
            raise InvalidInput("pairing leaves only one side partially uncovered")
        pairs.append((rest_u, rest_w))
    return pairs


def extend_partial(
    alg: MeasuredAlgebra,
    U: BlockPartition,
    W: BlockPartition,
    pairing: Mapping[str, str],
) -> tuple[Refinement, Automorphism]:
    """Refine ``alg`` and find ``h`` with ``h(piece of U_i) inside W_i``.

    Blocks of ``U`` absent from ``pairing`` are lumped together and paired with
    the remaining blocks of ``W``.
    """
    V = alg.V
    pairs = _pairs(alg, U, W, dict(pairing))
    order = alg.labels
    u_of = {a: i for i, (us, _) in enumerate(pairs) for a in us}
    w_of = {a: i for i, (_, ws) in enumerate(pairs) for a in ws}
    free = {a: alg.measure(a) for a in order}

    pieces: dict[str, list[tuple[str, Value]]] = {a: [] for a in order}
    perm: dict[str, str] = {}

    def new_piece(atom: str, m: Value) -> str:
        label = f"{atom}.{len(pieces[atom])}"
        pieces[atom].append((label, m))
        return label

    for _ in range(len(pairs) + 1):
        active = [i for i in range(len(pairs)) if any(not free[a].is_zero() for a in pairs[i][0])]
        if not active:
            break
        _round(V, order, active[0], u_of, w_of, free, new_piece, perm)
    else:
        raise InvariantViolation("extension did not exhaust the algebra")

    refinement = Refinement(alg, pieces)
    return refinement, Automorphism(refinement.algebra(), perm)


def _round(V, order, root_block, u_of, w_of, free, new_piece, perm):
    used = {a: ZERO for a in order}
    nodes: dict[tuple[int, ...], _Node] = {}
    index = {a: j for j, a in enumerate(order)}

    level = []
    for a in order:
        if w_of[a] == root_block and not free[a].is_zero():
            sigma = (index[a],)
            nodes[sigma] = _Node(a, free[a], [])
            used[a] = free[a]
            level.append(sigma)

    for _ in range(MAX_LEVELS):
        nxt = []
        by_block: dict[int, list[tuple[int, ...]]] = {}
        for sigma in level:
            i = u_of[nodes[sigma].atom]
            if i != root_block:
                by_block.setdefault(i, []).append(sigma)
        for i, E in sorted(by_block.items()):
            # greedy fill of the free part of W_i in atom order: an initial fragment
            need = value_sum(nodes[s].measure for s in E)
            fill = []
            for a in order:
                if w_of[a] != i or V.compare(need, ZERO) is not Order.GREATER:
                    continue
                avail = free[a] - used[a]
                if V.sign(avail) is not Order.GREATER:
                    continue
                take = V.min(avail, need)
                fill.append([a, take])
                used[a] = used[a] + take
                need = need - take
            if not need.is_zero():
                raise InvariantViolation("not enough free measure in a target block")
            # cut the fill into consecutive segments of the node measures
            k = 0
            for sigma in E:
                rest = nodes[sigma].measure
                while not rest.is_zero():
                    a, amount = fill[k]
                    take = V.min(amount, rest)
                    child = sigma + (index[a],)
                    if child in nodes:
                        nodes[child].measure = nodes[child].measure + take
                    else:
                        nodes[child] = _Node(a, take, [])
                        nodes[sigma].children.append(child)
                        nxt.append(child)
                    rest = rest - take
                    fill[k][1] = amount - take
                    if fill[k][1].is_zero():
                        k += 1
        if not nxt:
            break
        level = nxt
    else:
        raise InvariantViolation("tree construction did not terminate")

    _assign(V, nodes, new_piece, perm)
    for a in order:
        free[a] = free[a] - used[a]


def _assign(V, nodes, new_piece, perm):
    rank: dict[tuple[int, ...], int] = {}
    for sigma in sorted(nodes, key=len, reverse=True):
        kids = nodes[sigma].children
        rank[sigma] = 0 if not kids else 1 + max(rank[c] for c in kids)

    # parts[sigma]: list of (piece label, measure, leaf it leads to)
    parts: dict[tuple[int, ...], list[tuple[str, Value, tuple[int, ...]]]] = {}
    for sigma in sorted(nodes, key=lambda s: (rank[s], s)):
        node = nodes[sigma]
        if not node.children:
            parts[sigma] = [(new_piece(node.atom, node.measure), node.measure, sigma)]
            continue
        if value_sum(nodes[c].measure for c in node.children) != node.measure:
            raise InvariantViolation(f"children of node {sigma} do not match its measure")
        out = []
        for c in node.children:
            for q_label, q_measure, leaf in parts[c]:
                p_label = new_piece(node.atom, q_measure)
                perm[p_label] = q_label
                out.append((p_label, q_measure, leaf))
        parts[sigma] = out

    top = {leaf: label for sigma in nodes if len(sigma) == 1 for label, _, leaf in parts[sigma]}
    for sigma, node in nodes.items():
        if not node.children:
            perm[parts[sigma][0][0]] = top[sigma]
