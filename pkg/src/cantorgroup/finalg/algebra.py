"""Finite measured Boolean algebras and maps between them.

An algebra is given by its atoms, each labelled and weighted by a positive
member of a :class:`~cantorgroup.valueset.ValueGroup`; elements of the algebra
are sets of atom labels.  Embeddings send each atom to a set of atoms of the
target, automorphisms permute atoms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Mapping, Sequence

from ..errors import InvalidInput, InvariantViolation
from ..valueset import ONE, Order, Value, ValueGroup, value_sum


@dataclass(frozen=True, eq=False)
class MeasuredAlgebra:
    V: ValueGroup
    atoms: tuple[tuple[str, Value], ...]

    def __post_init__(self):
        atoms = tuple((str(label), m) for label, m in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "_measure", dict(atoms))
        if len(self._measure) != len(atoms):
            raise InvariantViolation("atom labels must be unique")
        for label, m in atoms:
            if not self.V.member(m):
                raise InvariantViolation(f"measure of atom {label} is not in V")
            if self.V.sign(m) is not Order.GREATER:
                raise InvariantViolation(f"measure of atom {label} is not positive")
        if value_sum(m for _, m in atoms) != ONE:
            raise InvariantViolation("atom measures do not sum to 1")

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.atoms]

    def measure(self, label: str) -> Value:
        return self._measure[label]

    def measure_of(self, labels: Iterable[str]) -> Value:
        return value_sum(self._measure[label] for label in labels)

    def __contains__(self, label):
        return label in self._measure

    def __len__(self):
        return len(self.atoms)

    def __eq__(self, other):
        return isinstance(other, MeasuredAlgebra) and self.V == other.V and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)


@dataclass(frozen=True, eq=False)
class BlockPartition:
    algebra: MeasuredAlgebra
    blocks: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        blocks = {str(name): tuple(atoms) for name, atoms in dict(self.blocks).items()}
        object.__setattr__(self, "blocks", blocks)
        seen: dict[str, str] = {}
        for name, atoms in blocks.items():
            if not atoms:
                raise InvariantViolation(f"block {name} is empty")
            for a in atoms:
                if a not in self.algebra:
                    raise InvariantViolation(f"block {name}: unknown atom {a}")
                if a in seen:
                    raise InvariantViolation(f"atom {a} lies in blocks {seen[a]} and {name}")
                seen[a] = name
        if len(seen) != len(self.algebra):
            raise InvariantViolation("blocks do not cover every atom")
        object.__setattr__(self, "_block_of", seen)

    def block_of(self, atom: str) -> str:
        return self._block_of[atom]

    def measure(self, name: str) -> Value:
        return self.algebra.measure_of(self.blocks[name])


@dataclass(frozen=True, eq=False)
class PartialAutomorphism:
    """A measure-preserving bijection between some blocks of ``dom`` and ``ran``."""

    dom: BlockPartition
    ran: BlockPartition
    pairing: Mapping[str, str]

    def __post_init__(self):
        pairing = dict(self.pairing)
        object.__setattr__(self, "pairing", pairing)
        if self.dom.algebra is not self.ran.algebra and self.dom.algebra != self.ran.algebra:
            raise InvalidInput("domain and range partitions live on different algebras")
        if len(set(pairing.values())) != len(pairing):
            raise InvalidInput("pairing is not injective")
        for u, w in pairing.items():
            if u not in self.dom.blocks or w not in self.ran.blocks:
                raise InvalidInput(f"pairing {u} -> {w} names an unknown block")
            if self.dom.measure(u) != self.ran.measure(w):
                raise InvalidInput(f"blocks {u} and {w} have different measures")


@dataclass(frozen=True, eq=False)
class Automorphism:
    algebra: MeasuredAlgebra
    perm: Mapping[str, str]

    def __post_init__(self):
        perm = {str(k): str(v) for k, v in dict(self.perm).items()}
        labels = set(self.algebra.labels)
        # atoms missing from the map are fixed
        for a in labels:
            perm.setdefault(a, a)
        object.__setattr__(self, "perm", perm)
        if set(perm) != labels or set(perm.values()) != labels:
            raise InvariantViolation("perm is not a permutation of the atoms")
        for a, b in perm.items():
            if self.algebra.measure(a) != self.algebra.measure(b):
                raise InvariantViolation(f"perm sends {a} to {b} of different measure")

    @classmethod
    def identity(cls, algebra: MeasuredAlgebra) -> Automorphism:
        return cls(algebra, {})

    def __call__(self, label: str) -> str:
        return self.perm[label]

    def image(self, labels: Iterable[str]) -> set[str]:
        return {self.perm[a] for a in labels}

    def __mul__(self, other: Automorphism) -> Automorphism:
        """``self o other``."""
        return Automorphism(self.algebra, {a: self.perm[other.perm[a]] for a in self.algebra.labels})

    def inverse(self) -> Automorphism:
        return Automorphism(self.algebra, {b: a for a, b in self.perm.items()})

    def __pow__(self, k: int) -> Automorphism:
        base = self if k >= 0 else self.inverse()
        out = {a: a for a in self.algebra.labels}
        for _ in range(abs(k)):
            out = {a: base.perm[b] for a, b in out.items()}
        return Automorphism(self.algebra, out)

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.perm.items())

    def support(self) -> set[str]:
        return {a for a, b in self.perm.items() if a != b}

    def cycles(self) -> list[list[str]]:
        """Cycle decomposition, each cycle listed from its first atom in declared
        order and following the permutation."""
        seen, out = set(), []
        for a in self.algebra.labels:
            if a in seen:
                continue
            cyc = [a]
            seen.add(a)
            b = self.perm[a]
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = self.perm[b]
            out.append(cyc)
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if len(self.algebra) else 1

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.perm == other.perm

    def __hash__(self):
        return hash(frozenset(self.perm.items()))


@dataclass(frozen=True, eq=False)
class Refinement:
    """Each parent atom split into finitely many children of positive measure."""

    parent: MeasuredAlgebra
    children: Mapping[str, Sequence[tuple[str, Value]]]

    def __post_init__(self):
        children = {str(a): tuple((str(c), m) for c, m in kids) for a, kids in dict(self.children).items()}
        object.__setattr__(self, "children", children)
        V = self.parent.V
        if set(children) != set(self.parent.labels):
            raise InvariantViolation("refinement must list children for every parent atom")
        for a, kids in children.items():
            if not kids:
                raise InvariantViolation(f"atom {a} has no children")
            for c, m in kids:
                if not V.member(m) or V.sign(m) is not Order.GREATER:
                    raise InvariantViolation(f"child {c} has a measure outside V or not positive")
            if value_sum(m for _, m in kids) != self.parent.measure(a):
                raise InvariantViolation(f"children of {a} do not add up to its measure")

    def algebra(self) -> MeasuredAlgebra:
        return MeasuredAlgebra(
            self.parent.V, tuple(kid for a in self.parent.labels for kid in self.children[a])
        )

    def embedding(self) -> dict[str, list[str]]:
        return {a: [c for c, _ in kids] for a, kids in self.children.items()}

    def parent_of(self) -> dict[str, str]:
        return {c: a for a, kids in self.children.items() for c, _ in kids}


@dataclass(frozen=True)
class EmbeddingCheck:
    ok: bool
    reason: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def validate_embedding(
    source: MeasuredAlgebra,
    target: MeasuredAlgebra,
    emb: Mapping[str, Iterable[str]],
    phi: Automorphism | PartialAutomorphism | None = None,
    psi: Automorphism | None = None,
) -> EmbeddingCheck:
    """Check that ``emb`` is a measure-preserving Boolean embedding.

    With ``phi`` and ``psi`` given, also check equivariance: ``psi(emb(a)) ==
    emb(phi(a))`` for every atom, or blockwise when ``phi`` is partial.
    """
    emb = {a: set(bs) for a, bs in emb.items()}
    if set(emb) != set(source.labels):
        return EmbeddingCheck(False, "DOMAIN", "embedding must list every source atom")
    used: dict[str, str] = {}
    for a, bs in emb.items():
        if not bs:
            return EmbeddingCheck(False, "EMPTY", f"atom {a} has an empty image")
        for b in bs:
            if b not in target:
                return EmbeddingCheck(False, "UNKNOWN_LABEL", f"{b} is not a target atom")
            if b in used:
                return EmbeddingCheck(False, "DISJOINT", f"{b} is in the images of {used[b]} and {a}")
            used[b] = a
        if target.measure_of(bs) != source.measure(a):
            return EmbeddingCheck(False, "MEASURE", f"image of {a} has the wrong measure")
    if len(used) != len(target):
        return EmbeddingCheck(False, "COVER", "images do not cover the target")
    if phi is None:
        return EmbeddingCheck(True)
    if psi is None:
        return EmbeddingCheck(False, "EQUIVARIANCE", "target automorphism missing")
    if isinstance(phi, PartialAutomorphism):
        pairs = [
            (phi.dom.blocks[u], phi.ran.blocks[w]) for u, w in phi.pairing.items()
        ]
    else:
        pairs = [([a], [phi(a)]) for a in source.labels]
    for dom_atoms, ran_atoms in pairs:
        left = psi.image(b for a in dom_atoms for b in emb[a])
        right = {b for a in ran_atoms for b in emb[a]}
        if left != right:
            return EmbeddingCheck(False, "EQUIVARIANCE", f"psi o emb != emb o phi on {sorted(dom_atoms)}")
    return EmbeddingCheck(True)
