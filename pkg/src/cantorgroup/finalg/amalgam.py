"""Amalgamation of automorphisms of finite measured algebras over QQ-like V."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import InvalidEmbedding, NotQLike
from ..valueset import Value
from .algebra import Automorphism, MeasuredAlgebra, validate_embedding
from .transport import northwest_corner


@dataclass
class OrbitTransport:
    """Transportation data under one representative atom ``a`` of an A-orbit.

    ``row_orbits[k]`` lists the B-atoms of the k-th psi-orbit lying below ``a``
    (so ``n_k = len(row_orbits[k])``); columns likewise for C and theta.
    ``y[k][l]`` solves the orbit-level system and ``x[k][l] = y[k][l] / (n_k m_l)``.
    """

    atom: str
    row_orbits: list[list[str]]
    col_orbits: list[list[str]]
    y: list[list[Value]]
    x: list[list[Value]]


@dataclass
class Amalgam:
    algebra: MeasuredAlgebra
    automorphism: Automorphism
    embed_b: dict[str, list[str]]
    embed_c: dict[str, list[str]]
    transports: list[OrbitTransport]


def _orbit_ids(aut: Automorphism) -> dict[str, int]:
    return {a: k for k, cyc in enumerate(aut.cycles()) for a in cyc}


def amalgamate(
    phi: Automorphism,
    psi: Automorphism,
    f: Mapping[str, Sequence[str]],
    theta: Automorphism,
    g: Mapping[str, Sequence[str]],
) -> Amalgam:
    """Amalgamate ``f: (A, phi) -> (B, psi)`` and ``g: (A, phi) -> (C, theta)``.

    Atoms of the result are the products ``b*c`` of atoms lying below a common
    A-atom; their measure depends only on the psi-orbit of ``b`` and theta-orbit
    of ``c`` and is read off a northwest-corner plan.  Null products are dropped.
    """
    A, B, C = phi.algebra, psi.algebra, theta.algebra
    V = A.V
    if not (V == B.V == C.V):
        raise InvalidEmbedding("algebras live over different value groups")
    if not V.is_q_like():
        raise NotQLike("amalgamation is only implemented for QQ-like value groups")
    for name, emb, aut, tgt in (("f", f, psi, B), ("g", g, theta, C)):
        check = validate_embedding(A, tgt, emb, phi, aut)
        if not check:
            raise InvalidEmbedding(f"{name}: {check.reason}: {check.detail}")

    b_orbit, c_orbit = _orbit_ids(psi), _orbit_ids(theta)
    weight: dict[tuple[int, int, int], Value] = {}  # (A-orbit, psi-orbit, theta-orbit)
    a_orbit = _orbit_ids(phi)
    transports = []
    for cyc in phi.cycles():
        a = cyc[0]
        rows = _group(f[a], b_orbit, B)
        cols = _group(g[a], c_orbit, C)
        supply = [len(o) * B.measure(o[0]) for o in rows]
        demand = [len(o) * C.measure(o[0]) for o in cols]
        y = northwest_corner(V, supply, demand)
        x = [[y[k][l] / (len(rows[k]) * len(cols[l])) for l in range(len(cols))] for k in range(len(rows))]
        for k, ro in enumerate(rows):
            for l, co in enumerate(cols):
                weight[a_orbit[a], b_orbit[ro[0]], c_orbit[co[0]]] = x[k][l]
        transports.append(OrbitTransport(a, rows, cols, y, x))

    atoms = []
    embed_b = {b: [] for b in B.labels}
    embed_c = {c: [] for c in C.labels}
    for a in A.labels:
        for b in f[a]:
            for c in g[a]:
                x = weight[a_orbit[a], b_orbit[b], c_orbit[c]]
                if x.is_zero():
                    continue
                label = f"{b}*{c}"
                atoms.append((label, x))
                embed_b[b].append(label)
                embed_c[c].append(label)
    D = MeasuredAlgebra(V, tuple(atoms))
    perm = {}
    for label, _ in atoms:
        b, c = label.split("*", 1)
        perm[label] = f"{psi(b)}*{theta(c)}"
    return Amalgam(D, Automorphism(D, perm), embed_b, embed_c, transports)


def _group(atoms, orbit_of, alg):
    groups: dict[int, list[str]] = {}
    for b in sorted(atoms, key=alg.labels.index):
        groups.setdefault(orbit_of[b], []).append(b)
    return [groups[k] for k in sorted(groups)]
