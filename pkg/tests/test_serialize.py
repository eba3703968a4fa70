import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cantorgroup import serialize as ser
from cantorgroup.cantor import CantorPoint, ClopenSet
from cantorgroup.errors import ParseError
from cantorgroup.generators import amalgam_triple, q_like_instance, random_map
from cantorgroup.valueset import Value, ValueGroup

seeds = st.integers(0, 10**6)


def through_json(obj):
    return json.loads(json.dumps(obj))


@given(st.fractions(max_denominator=10**6), st.fractions(max_denominator=1000))
def test_value_round_trip(p, q):
    v = Value(p) + q * Value.symbol("inv_pi")
    assert ser.value_from_json(through_json(ser.value_to_json(v))) == v


@pytest.mark.parametrize("V", [ValueGroup.dyadic(), ValueGroup.rationals(), ValueGroup.half_and_inverse_pi()])
def test_value_group_round_trip(V):
    assert ser.value_group_from_json(through_json(ser.value_group_to_json(V))) == V


def test_value_group_format():
    obj = ser.value_group_to_json(ValueGroup.dyadic())
    assert obj["ring"] == "Z[1/m]" and obj["m"] == 2 and obj["declared_ring"] is True
    assert obj["generators"] == [{"rational": "1/1", "symbols": {}}]


@given(st.integers(0, 6), st.integers(0, 2**64 - 1))
def test_clopen_round_trip(depth, mask):
    c = ClopenSet(depth, mask & ((1 << (1 << depth)) - 1))
    assert ser.clopen_from_json(through_json(ser.clopen_to_json(c))) == c


@given(st.text(alphabet="01", max_size=12), st.integers(0, 1))
def test_point_round_trip(head, tail):
    x = CantorPoint.from_head(head, tail)
    assert ser.point_from_json(through_json(ser.point_to_json(x))) == x


def test_formats():
    assert ser.clopen_to_json(ClopenSet.cylinder("01")) == {"depth": 2, "leaves": ["01"]}
    assert ser.point_to_json(CantorPoint.from_head("0110")) == {"head": "011", "tail": 0}


@settings(max_examples=40)
@given(seeds)
def test_map_round_trip(seed):
    rng = random.Random(seed)
    g = random_map(rng, rng.randint(0, 5), rng.randint(0, 4))
    assert ser.map_from_json(through_json(ser.map_to_json(g))) == g


@settings(max_examples=20)
@given(seeds)
def test_algebra_and_automorphism_round_trip(seed):
    phi, psi, f, _, _ = amalgam_triple(random.Random(seed))
    B = ser.algebra_from_json(through_json(ser.algebra_to_json(psi.algebra)))
    assert B == psi.algebra
    assert ser.automorphism_from_json(through_json(ser.automorphism_to_json(psi)), B) == psi
    assert ser.embedding_from_json(through_json(ser.embedding_to_json(f))) == f


@settings(max_examples=20)
@given(seeds)
def test_instance_round_trip(seed):
    V, rows, cols = q_like_instance(random.Random(seed))
    assert ser.instance_from_json(through_json(ser.instance_to_json(V, rows, cols))) == (V, rows, cols)


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", "1/0", None, [1]])
def test_rationals_reject_non_fraction_input(bad):
    with pytest.raises(ParseError):
        ser.parse_fraction(bad)


def test_parse_errors():
    with pytest.raises(ParseError):
        ser.clopen_from_json({"depth": 2, "leaves": ["0"]})
    with pytest.raises(ParseError):
        ser.clopen_from_json({"leaves": []})
    with pytest.raises(ParseError):
        ser.value_group_from_json({"ring": "R"})
    with pytest.raises(ParseError):
        ser.point_from_json({"head": "012"})
    assert ser.parse_fraction("3/6") == F(1, 2)
