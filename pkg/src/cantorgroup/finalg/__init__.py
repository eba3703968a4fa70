"""Finite measured Boolean algebras over a value group."""

from .algebra import (
    Automorphism,
    BlockPartition,
    EmbeddingCheck,
    MeasuredAlgebra,
    PartialAutomorphism,
    Refinement,
    validate_embedding,
)
from .amalgam import Amalgam, OrbitTransport, amalgamate
from .cycles import cycle_action, cycle_blocks
from .extension import extend_partial
from .jep import (
    SAT,
    UNKNOWN,
    UNSAT,
    DenseHint,
    JepResult,
    JointCycle,
    JointEmbedding,
    build_joint_cycle,
    dense_class_hint,
    jep_instance,
    joint_embed_automorphisms,
    verify_witness,
)
from .transport import northwest_corner

__all__ = [
    "Amalgam", "Automorphism", "BlockPartition", "DenseHint", "EmbeddingCheck", "JepResult",
    "JointCycle", "JointEmbedding", "MeasuredAlgebra", "OrbitTransport", "PartialAutomorphism",
    "Refinement", "SAT", "UNKNOWN", "UNSAT", "amalgamate", "build_joint_cycle", "cycle_action",
    "cycle_blocks", "dense_class_hint", "extend_partial", "jep_instance",
    "joint_embed_automorphisms", "northwest_corner", "validate_embedding", "verify_witness",
]
