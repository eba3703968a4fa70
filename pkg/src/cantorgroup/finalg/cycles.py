"""Permuting the blocks of a p-cycle: ``sigma -> g_sigma`` is a homomorphism S_p -> Aut."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import NotACycle
from .algebra import Automorphism


def cycle_blocks(g: Automorphism, base: Iterable[str], p: int) -> list[set[str]]:
    """``[base, g(base), ..., g^(p-1)(base)]`` after checking that ``g`` is a
    p-cycle on their union and the identity elsewhere."""
    blocks = [set(base)]
    if not blocks[0]:
        raise NotACycle("base block is empty")
    for _ in range(p - 1):
        blocks.append(g.image(blocks[-1]))
    support = set().union(*blocks)
    if sum(map(len, blocks)) != len(support):
        raise NotACycle("blocks g^i(A) are not pairwise disjoint")
    gp = g ** p
    if any(gp(a) != a for a in support):
        raise NotACycle("g^p is not the identity on the support")
    if any(g(a) != a for a in g.algebra.labels if a not in support):
        raise NotACycle("g moves an atom outside A + g(A) + ... + g^(p-1)(A)")
    return blocks


def cycle_action(g: Automorphism, base: Iterable[str], sigma: Sequence[int]) -> Automorphism:
    """``g_sigma``: equal to ``g^(sigma(i) - i)`` on ``g^i(base)``, identity off the support."""
    p = len(sigma)
    if sorted(sigma) != list(range(p)):
        raise NotACycle(f"{list(sigma)} is not a permutation of range({p})")
    blocks = cycle_blocks(g, base, p)
    powers = {k: g ** k for k in set(sigma[i] - i for i in range(p))}
    perm = {}
    for i, block in enumerate(blocks):
        step = powers[sigma[i] - i]
        for a in block:
            perm[a] = step(a)
    return Automorphism(g.algebra, perm)


def compose_perms(sigma: Sequence[int], tau: Sequence[int]) -> list[int]:
    """``sigma o tau`` as a list."""
    return [sigma[t] for t in tau]
