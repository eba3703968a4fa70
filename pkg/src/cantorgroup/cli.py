"""Command-line front end: one verb per library operation, JSON in and out.

Exit codes: 0 success, 1 I/O or parse failure, 2 contract violation
(``{"error": code, "detail": ...}`` on stdout), 3 undetermined outcome.
Input arguments are file paths; ``-`` reads stdin.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import cantor, odometer
from . import serialize as ser
from .errors import ContractError, ParseError
from .finalg import (
    BlockPartition,
    amalgamate,
    dense_class_hint,
    extend_partial,
    jep_instance,
    joint_embed_automorphisms,
    validate_embedding,
)
from .finalg.cycles import cycle_action
from .finalg.jep import DEFAULT_BOUND, DEFAULT_STEP_BUDGET, UNKNOWN
from . import generators as gen
from .valueset import ValueGroup

EXIT_OK, EXIT_IO, EXIT_CONTRACT, EXIT_UNKNOWN = 0, 1, 2, 3


class Undetermined(Exception):
    """Carries a JSON payload for an exit-3 outcome."""

    def __init__(self, payload):
        super().__init__()
        self.payload = payload


def _load(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _fraction_arg(s: str) -> Fraction:
    return ser.parse_fraction(s)


def _value_arg(s: str):
    """A value given inline as ``p/q`` or as a JSON file."""
    if s == "-" or os.path.exists(s):
        return ser.value_from_json(_load(s))
    return ser.value_from_json(s)


def _automorphism(obj):
    A = ser.algebra_from_json(obj["algebra"])
    return ser.automorphism_from_json(obj, A)


# ----- valueset


def cmd_value_member(args):
    V = ser.value_group_from_json(_load(args.V))
    v = _value_arg(args.value)
    return {"member": V.member(v), "value": ser.value_to_json(v)}


def cmd_value_classify(args):
    V = ser.value_group_from_json(_load(args.V))
    return {
        "group_like": V.is_group_like(),
        "q_like": V.is_q_like(),
        "declared_ring": V.declared_ring,
        "ring": V.ring.value,
    }


# ----- cantor


_BINARY = {"union": cantor.union, "intersection": cantor.intersection, "difference": cantor.difference}


def cmd_clopen_op(args):
    a = ser.clopen_from_json(_load(args.a))
    if args.op in _BINARY or args.op in ("subset", "disjoint"):
        if not args.b:
            raise ParseError(f"--b is required for {args.op}")
        b = ser.clopen_from_json(_load(args.b))
    if args.op in _BINARY:
        return {"result": ser.clopen_to_json(_BINARY[args.op](a, b))}
    if args.op == "complement":
        return {"result": ser.clopen_to_json(cantor.complement(a))}
    if args.op == "measure":
        return {"result": ser.format_fraction(a.measure())}
    if args.op == "diameter":
        return {"result": ser.format_fraction(cantor.diameter(a))}
    if args.op == "subset":
        return {"result": a.issubset(b)}
    return {"result": a.isdisjoint(b)}


# ----- odometer


def cmd_odo_apply(args):
    g = ser.map_from_json(_load(args.map))
    if bool(args.point) == bool(args.set):
        raise ParseError("give exactly one of --point and --set")
    if args.point:
        x = ser.point_from_json(_load(args.point))
        return {"result": ser.point_to_json(odometer.eval_point(g, x))}
    a = ser.clopen_from_json(_load(args.set))
    return {"result": ser.clopen_to_json(g.apply_set(a))}


def cmd_odo_compose(args):
    g = ser.map_from_json(_load(args.lhs))
    h = ser.map_from_json(_load(args.rhs))
    return ser.map_to_json(odometer.compose(g, h))


def cmd_odo_order(args):
    g = ser.map_from_json(_load(args.map))
    k = odometer.order(g, args.max)
    if k is None:
        raise Undetermined({"result": "NOT_FOUND_WITHIN", "max": args.max})
    return {"order": k}


def cmd_odo_rank(args):
    g = ser.map_from_json(_load(args.map))
    return {"tree_rank": odometer.tree_rank(g), "cocycle_bound": g.cocycle_bound()}


def cmd_odo_kr(args):
    return ser.kr_to_json(odometer.kr_partition(args.depth))


def cmd_odo_gw(args):
    a = ser.clopen_from_json(_load(args.a))
    b = ser.clopen_from_json(_load(args.b))
    op = odometer.gw_equivalence if args.equal else odometer.gw_transport
    return ser.map_to_json(op(a, b))


def cmd_odo_approx(args):
    gamma = ser.map_from_json(_load(args.gamma))
    return ser.map_to_json(odometer.gm_finite_order_approx(gamma, _fraction_arg(args.delta)))


def cmd_odo_dist(args):
    g = ser.map_from_json(_load(args.lhs))
    h = ser.map_from_json(_load(args.rhs))
    return {"distance": ser.format_fraction(odometer.sup_distance(g, h))}


# ----- finite algebras


def _algebra_and_map(obj):
    """Accept a bare algebra or ``{"algebra": ..., "perm": ...}``."""
    if isinstance(obj, dict) and "algebra" in obj:
        A = ser.algebra_from_json(obj["algebra"])
        return A, (ser.automorphism_from_json(obj, A) if "perm" in obj else None)
    return ser.algebra_from_json(obj), None


def cmd_alg_validate(args):
    A, phi = _algebra_and_map(_load(args.algebra))
    out = {"valid": True, "atoms": len(A)}
    if phi is not None:
        out["order"] = phi.order()
    if args.target:
        if not args.embedding:
            raise ser.ParseError("--target requires --embedding")
        B, psi = _algebra_and_map(_load(args.target))
        emb = ser.embedding_from_json(_load(args.embedding))
        check = validate_embedding(A, B, emb, phi, psi)
        out["embedding"] = {"ok": check.ok, "reason": check.reason, "detail": check.detail}
    return out


def cmd_alg_extend(args):
    obj = _load(args.instance)
    A = ser.algebra_from_json(obj["algebra"])
    U = BlockPartition(A, obj["U"])
    W = BlockPartition(A, obj["W"])
    refinement, h = extend_partial(A, U, W, obj["pairing"])
    return {
        "algebra": ser.algebra_to_json(refinement.algebra()),
        "embedding": ser.embedding_to_json(refinement.embedding()),
        "perm": dict(h.perm),
    }


def cmd_alg_jep(args):
    V, rows, cols = ser.instance_from_json(_load(args.instance))
    res = jep_instance(V, rows, cols, args.bound, args.step_budget)
    out = {"result": res.status, "method": res.method, "reason": res.reason}
    if res.witness is not None:
        out["witness"] = ser.matrix_to_json(res.witness)
    if res.status == UNKNOWN:
        raise Undetermined(out)
    return out


def cmd_alg_joint(args):
    alpha = _automorphism(_load(args.alpha))
    beta = _automorphism(_load(args.beta))
    res = joint_embed_automorphisms(alpha, beta, args.bound, args.step_budget)
    out = {"result": res.status, "reason": res.jep.reason}
    if res.algebra is not None:
        out.update(
            algebra=ser.algebra_to_json(res.algebra),
            perm=dict(res.gamma.perm),
            embed_a=ser.embedding_to_json(res.embed_a),
            embed_b=ser.embedding_to_json(res.embed_b),
        )
    if res.status == UNKNOWN:
        raise Undetermined(out)
    return out


def cmd_alg_amalgamate(args):
    obj = _load(args.instance)
    phi, psi, theta = (_automorphism(obj[k]) for k in ("A", "B", "C"))
    f = ser.embedding_from_json(obj["f"])
    g = ser.embedding_from_json(obj["g"])
    am = amalgamate(phi, psi, f, theta, g)
    return {
        "algebra": ser.algebra_to_json(am.algebra),
        "perm": dict(am.automorphism.perm),
        "embed_b": ser.embedding_to_json(am.embed_b),
        "embed_c": ser.embedding_to_json(am.embed_c),
    }


def cmd_alg_cycle(args):
    obj = _load(args.instance)
    g = _automorphism(obj)
    sigma = [int(s) for s in args.sigma.split(",")] if args.sigma else obj["sigma"]
    return {"perm": dict(cycle_action(g, obj["base"], sigma).perm)}


def cmd_alg_dense_hint(args):
    V = ser.value_group_from_json(_load(args.V))
    hint = dense_class_hint(V)
    out = {"result": hint.status, "reason": hint.reason}
    if hint.rows is not None:
        out["instance"] = ser.instance_to_json(None, hint.rows, hint.cols)
    if hint.status == UNKNOWN:
        raise Undetermined(out)
    return out


# ----- generators


_PRESETS = {
    "dyadic": ValueGroup.dyadic,
    "rationals": ValueGroup.rationals,
    "half-inv-pi": ValueGroup.half_and_inverse_pi,
}


def cmd_gen(args):
    rng = random.Random(args.seed)
    if args.kind == "map":
        return ser.map_to_json(gen.random_map(rng, args.depth, args.cocycle_bound))
    if args.kind == "algebra":
        return ser.algebra_to_json(gen.random_algebra(rng, _PRESETS[args.V](), args.atoms))
    if args.counterexample:
        V, rows, cols = gen.counterexample_instance()
    elif args.ring_case:
        V, rows, cols = gen.ring_case_instance(rng)
    else:
        V, rows, cols = gen.q_like_instance(rng)
    return ser.instance_to_json(V, rows, cols)


# ----- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cantorgroup", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    def verb(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    p = verb("value-member", cmd_value_member, "membership of a value in V")
    p.add_argument("--V", required=True)
    p.add_argument("--value", required=True, help="'p/q' or a Value JSON file")
    p = verb("value-classify", cmd_value_classify, "group-like / QQ-like classification")
    p.add_argument("--V", required=True)

    p = verb("clopen-op", cmd_clopen_op, "Boolean operations, measure and diameter")
    p.add_argument("--op", required=True, choices=[*_BINARY, "complement", "measure", "diameter", "subset", "disjoint"])
    p.add_argument("--a", required=True)
    p.add_argument("--b")

    p = verb("odo-apply", cmd_odo_apply, "apply a map to a point or clopen set")
    p.add_argument("--map", required=True)
    p.add_argument("--point")
    p.add_argument("--set")
    p = verb("odo-compose", cmd_odo_compose, "lhs o rhs")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p = verb("odo-order", cmd_odo_order, "order of a map, searched up to --max")
    p.add_argument("--map", required=True)
    p.add_argument("--max", type=int, default=1 << 16)
    p = verb("odo-rank", cmd_odo_rank, "tree rank and cocycle bound")
    p.add_argument("--map", required=True)
    p = verb("odo-kr", cmd_odo_kr, "Kakutani-Rokhlin tower of the given depth")
    p.add_argument("--depth", type=int, required=True)
    p = verb("odo-gw", cmd_odo_gw, "involution moving A into B (or onto B with --equal)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--equal", action="store_true")
    p = verb("odo-approx", cmd_odo_approx, "finite-order approximation within --delta")
    p.add_argument("--gamma", required=True)
    p.add_argument("--delta", required=True, help="a power of two written 'p/q', e.g. 1/8")
    p = verb("odo-dist", cmd_odo_dist, "uniform distance between two maps")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)

    p = verb("alg-validate", cmd_alg_validate, "validate an algebra, automorphism or embedding")
    p.add_argument("--algebra", required=True)
    p.add_argument("--target")
    p.add_argument("--embedding")
    p = verb("alg-extend", cmd_alg_extend, "extend a partial automorphism")
    p.add_argument("--instance", required=True)
    for name, func, help_ in (
        ("alg-jep", cmd_alg_jep, "decide a joint-embedding marginal system"),
        ("alg-joint", cmd_alg_joint, "jointly embed two automorphisms"),
    ):
        p = verb(name, func, help_)
        if name == "alg-jep":
            p.add_argument("--instance", required=True)
        else:
            p.add_argument("--alpha", required=True)
            p.add_argument("--beta", required=True)
        p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
        p.add_argument("--step-budget", type=int, default=DEFAULT_STEP_BUDGET)
    p = verb("alg-amalgamate", cmd_alg_amalgamate, "amalgamate two equivariant embeddings")
    p.add_argument("--instance", required=True)
    p = verb("alg-cycle", cmd_alg_cycle, "permute the blocks of a p-cycle")
    p.add_argument("--instance", required=True)
    p.add_argument("--sigma", help="comma-separated permutation of 0..p-1")
    p = verb("alg-dense-hint", cmd_alg_dense_hint, "dense conjugacy class semi-decision")
    p.add_argument("--V", required=True)

    p = verb("gen", cmd_gen, "seeded random artifacts")
    p.add_argument("kind", choices=["map", "algebra", "instance"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--cocycle-bound", type=int, default=2)
    p.add_argument("--atoms", type=int, default=4)
    p.add_argument("--V", choices=sorted(_PRESETS), default="dyadic")
    p.add_argument("--ring-case", action="store_true")
    p.add_argument("--counterexample", action="store_true")
    return parser


def _emit(payload):
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code else EXIT_OK
    try:
        result = args.func(args)
    except Undetermined as exc:
        _emit(exc.payload)
        return EXIT_UNKNOWN
    except (OSError, json.JSONDecodeError, ParseError, KeyError, TypeError, AttributeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IO
    except ContractError as exc:
        _emit({"error": exc.code, "detail": str(exc.detail)})
        return EXIT_CONTRACT
    _emit(result)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
