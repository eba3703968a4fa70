import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cantorgroup.cantor import CantorPoint, ClopenSet
from cantorgroup.errors import InvalidDelta, InvariantViolation, MeasureMismatch, MeasureNotDominated
from cantorgroup.generators import random_clopen, random_map
from cantorgroup.odometer import (
    IDENTITY,
    PHI,
    PiecewiseMap,
    cocycle_bound,
    compose,
    eval_point,
    gm_finite_order_approx,
    gw_equivalence,
    gw_transport,
    image_set,
    inverse,
    kr_partition,
    order,
    sup_distance,
    tree_rank,
)
from oracles import chain_search_rank, cylinders, pointwise_power, sample_points, sampled_sup_distance

C = ClopenSet.cylinder
SWAP = PiecewiseMap([(C("0"), 1), (C("1"), -1)])
seeds = st.integers(0, 10**6)


def rmap(seed, depth=None, bound=None):
    rng = random.Random(seed)
    return random_map(rng, depth if depth is not None else rng.randint(0, 5), bound if bound is not None else rng.randint(0, 4))


def add_point(x: CantorPoint, k: int) -> CantorPoint:
    """``phi**k`` by schoolbook little-endian addition on the bit string.

    Bits of the constant tail are consumed until the carry is stable: carry 0
    keeps the tail, carry -1 on a 0-tail or +1 on a 1-tail flips it forever.
    """
    t = x.tail
    bits = [int(b) for b in x.head]
    stable = (0, -1) if t == 0 else (0, 1)
    carry, out, i = k, [], 0
    while i < len(bits) or carry not in stable:
        b = bits[i] if i < len(bits) else t
        s = b + carry
        out.append(s % 2)
        carry = s // 2
        i += 1
    tail = t if carry == 0 else 1 - t
    return CantorPoint.from_head("".join(map(str, out)), tail)


def test_image_set_examples():
    assert image_set(C("11"), 1) == C("00")
    assert image_set(C("00"), 3) == C("11")
    a = ClopenSet.from_leaves(3, ["010", "111"])
    assert image_set(a, 0) == a


@given(st.integers(0, 5), st.integers(0, 2**32 - 1), st.integers(-20, 20))
def test_image_set_pointwise(depth, mask, k):
    a = ClopenSet(depth, mask & ((1 << (1 << depth)) - 1))
    img = image_set(a, k)
    for x in sample_points(depth + 2):
        assert img.contains(x.shift(k)) == a.contains(x)
    assert img.measure() == a.measure()


def test_eval_examples():
    x = CantorPoint.from_head("0110")
    assert eval_point(IDENTITY, x) == x
    assert eval_point(PHI, CantorPoint.from_head("", 1)) == CantorPoint.from_head("")
    assert eval_point(PHI, CantorPoint.from_head("011")) == CantorPoint.from_head("111")


@given(st.text(alphabet="01", max_size=10), st.integers(0, 1), st.integers(-40, 40))
def test_shift_matches_schoolbook_addition(head, tail, k):
    x = CantorPoint.from_head(head, tail)
    assert x.shift(k) == add_point(x, k)


def test_compose_examples():
    assert compose(PHI, PHI) == PiecewiseMap.power(2)
    assert compose(SWAP, SWAP).is_identity()
    for x in sample_points(4):
        assert SWAP(SWAP(x)) == x


@settings(max_examples=60)
@given(seeds, seeds, seeds)
def test_group_axioms(s1, s2, s3):
    g, h, k = rmap(s1), rmap(s2), rmap(s3)
    assert compose(g, inverse(g)).is_identity()
    assert compose(inverse(g), g).is_identity()
    assert compose(g, IDENTITY) == g == compose(IDENTITY, g)
    assert compose(compose(g, h), k) == compose(g, compose(h, k))
    gh = compose(g, h)
    for x in sample_points(max(g.depth, h.depth) + 1):
        assert gh(x) == g(h(x))


@settings(max_examples=60)
@given(seeds, st.integers(0, 6), st.integers(0, 2**64 - 1))
def test_maps_preserve_measure(seed, depth, mask):
    g = rmap(seed)
    a = ClopenSet(depth, mask & ((1 << (1 << depth)) - 1))
    assert g.apply_set(a).measure() == a.measure()


@settings(max_examples=60)
@given(seeds)
def test_random_maps_are_valid(seed):
    g = rmap(seed)
    g.validate()
    for x in sample_points(g.depth + 1):
        assert g(x) == x.shift(pointwise_power(g, x))


def test_invalid_maps_are_rejected():
    with pytest.raises(InvariantViolation):
        PiecewiseMap([(C("0"), 1), (C("1"), 0)])
    with pytest.raises(InvariantViolation):
        PiecewiseMap([(C("0"), 0)])


def test_cocycle_bound_examples():
    assert cocycle_bound(IDENTITY) == 0
    assert IDENTITY.level_sets() == {0: ClopenSet.full()}
    assert cocycle_bound(PiecewiseMap.power(2)) == 2
    # exhaustive search for valid depth-2 maps with three distinct powers in [-2, 2]
    found = []
    for powers in itertools.product(range(-2, 3), repeat=4):
        if len(set(powers)) == 3 and len({(u + k) % 4 for u, k in enumerate(powers)}) == 4:
            g = PiecewiseMap([(ClopenSet.cylinder_int(2, u), k) for u, k in enumerate(powers)])
            found.append((g, max(abs(k) for k in powers)))
    assert found
    for g, bound in found:
        assert cocycle_bound(g) == bound


def test_tree_rank_examples():
    assert tree_rank(IDENTITY) == 0 == chain_search_rank(IDENTITY)
    assert tree_rank(PHI) == 2 == chain_search_rank(PHI)


@settings(max_examples=80)
@given(seeds)
def test_tree_rank_matches_chain_search(seed):
    rng = random.Random(seed)
    g = random_map(rng, rng.randint(0, 4), rng.randint(0, 5))
    assert tree_rank(g) == chain_search_rank(g)


@settings(max_examples=80)
@given(seeds, seeds)
def test_rank_stability(s1, s2):
    g, h = rmap(s1), rmap(s2)
    for prod in (compose(h, g), compose(g, h)):
        if g.is_identity() or prod.is_identity():
            continue
        assert abs(tree_rank(prod) - tree_rank(g)) <= cocycle_bound(h)


def test_rank_stability_at_the_identity_is_off_by_one():
    # the empty tree convention puts the identity one step below rank 1
    g, h = PHI, inverse(PHI)
    assert compose(h, g).is_identity()
    assert abs(tree_rank(compose(h, g)) - tree_rank(g)) == cocycle_bound(h) + 1


def test_kr_partition_examples():
    kr = kr_partition(1)
    assert kr.levels == (C("0"), C("1")) and image_set(kr.top, 1) == kr.base
    kr = kr_partition(2)
    assert kr.levels == (C("00"), C("10"), C("01"), C("11"))
    kr = kr_partition(3)
    assert kr.height == 8 and all(level.diameter() == F(1, 8) for level in kr.levels)
    assert ClopenSet.empty().is_empty()
    union = ClopenSet.empty()
    for level in kr.levels:
        assert union.isdisjoint(level)
        union = union | level
    assert union.is_full()


def _is_involution(g):
    return compose(g, g).is_identity()


def test_gw_examples():
    assert gw_transport(ClopenSet.empty(), C("1")).is_identity()
    g = gw_transport(C("00"), C("1"))
    assert g.apply_set(C("00")) == C("10") and _is_involution(g)
    assert g.apply_set(C("01")) == C("01")
    assert gw_equivalence(C("1"), C("1")).is_identity()
    g = gw_equivalence(C("0"), C("1"))
    assert g == SWAP
    with pytest.raises(MeasureNotDominated):
        gw_transport(C("0"), C("1"))
    with pytest.raises(MeasureMismatch):
        gw_equivalence(C("0"), C("11"))


@settings(max_examples=80)
@given(seeds)
def test_gw_property(seed):
    rng = random.Random(seed)
    a, b = random_clopen(rng, rng.randint(0, 5)), random_clopen(rng, rng.randint(0, 5))
    if a.measure() < b.measure():
        g = gw_transport(a, b)
        assert g.apply_set(a).issubset(b) and _is_involution(g)
    elif a.measure() == b.measure():
        g = gw_equivalence(a, b)
        assert g.apply_set(a) == b and _is_involution(g)


def test_gm_of_phi():
    p = gm_finite_order_approx(PHI, F(1, 8))
    n = p.depth
    assert 2**-n < F(1, 8)
    assert p.level_sets() == {1: ClopenSet.cylinder_int(n, (1 << n) - 1).complement(), 1 - 2**n: ClopenSet.cylinder_int(n, (1 << n) - 1)}
    assert order(p, 2**n) == 2**n
    assert sup_distance(p, PHI) <= F(1, 8)
    assert sup_distance(inverse(p), inverse(PHI)) <= F(1, 8)


def test_gm_of_identity_and_bad_delta():
    assert gm_finite_order_approx(IDENTITY, F(1, 4)).is_identity()
    for bad in (F(1, 3), F(0), F(3, 2), F(3, 8)):
        with pytest.raises(InvalidDelta):
            gm_finite_order_approx(PHI, bad)


@settings(max_examples=40)
@given(seeds, st.sampled_from([F(1, 8), F(1, 16)]))
def test_gm_property(seed, delta):
    rng = random.Random(seed)
    gamma = random_map(rng, rng.randint(0, 5), rng.randint(0, 3))
    p = gm_finite_order_approx(gamma, delta)
    assert order(p, 2 ** (2 * max(p.depth, 1))) is not None
    assert sup_distance(p, gamma) <= delta
    assert sup_distance(inverse(p), inverse(gamma)) <= delta
    for c in cylinders(5):
        assert p.apply_set(c).measure() == F(1, 32)


def test_sup_distance_examples():
    assert sup_distance(SWAP, SWAP) == 0
    assert sup_distance(IDENTITY, PHI) == 1
    assert sup_distance(PHI, PiecewiseMap.power(2)) == 1
    assert sampled_sup_distance(PHI, PiecewiseMap.power(2), 8) == 1


@settings(max_examples=60)
@given(seeds, seeds)
def test_sup_distance_matches_sampling(s1, s2):
    g, h = rmap(s1), rmap(s2)
    assert sup_distance(g, h) == sampled_sup_distance(g, h, max(g.depth, h.depth) + 1)


def test_order_examples():
    assert order(IDENTITY, 1) == 1
    assert order(SWAP, 10) == 2
    assert order(PHI, 1000) is None
