import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sparsesep.exact import ExactComplex
from sparsesep.state import (
    PureState,
    QubitSubset,
    StateInvariantError,
    StateParseError,
    complement_label,
    compose_permutations,
    compress,
    deposit,
    flip_all,
    load_state,
    parse_state,
    permute_qubits,
    serialize_state,
    state_from_dict,
    state_from_strings,
    state_to_dict,
    tensor_product,
)

from conftest import EX1_TEXT, as_strings, brute_product, nonzero_complex, pure_states

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# parsing


def test_parse_worked_example():
    s = parse_state(EX1_TEXT)
    assert (s.n, s.m) == (3, 4)
    assert all(c == HALF for c in s.coefficients)
    assert s.labels == (0b000, 0b010, 0b101, 0b111)


def test_parse_smallest_state():
    s = parse_state("0 1")
    assert (s.n, s.m) == (1, 1)
    assert s.terms == ((0, ExactComplex(1)),)


def test_parse_rejects_duplicate_label():
    with pytest.raises(StateInvariantError, match="duplicate"):
        parse_state("00 1/2\n00 1/2")


def test_parse_rejects_zero_coefficient():
    with pytest.raises(StateInvariantError, match="zero"):
        parse_state("00 0\n11 1")
    with pytest.raises(StateInvariantError):
        parse_state("00 0 0")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "# only a comment\n",
        "01\n",
        "01 1 2 3\n",
        "012 1\n",
        "01 1\n011 1\n",
        "01 abc\n",
        "01 1/0\n",
        "01 nan\n",
        "01 inf\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(StateParseError):
        parse_state(text)


def test_parse_rejects_too_many_qubits():
    with pytest.raises(StateInvariantError):
        parse_state("0" * 64 + " 1")
    assert parse_state("1" * 63 + " 1").n == 63


def test_parse_comments_decimals_and_imaginary_parts():
    s = parse_state("# header\n\n01 0.25 -1/3   # trailing\n10 -2\n")
    assert s.as_dict() == {1: ExactComplex(Fraction(1, 4), Fraction(-1, 3)), 2: ExactComplex(-2)}


def test_terms_are_sorted():
    s = parse_state("11 1\n00 2\n10 3")
    assert s.labels == (0, 2, 3)


def test_structured_object_carries_same_content():
    s = parse_state("01 1/2 3\n10 -1\n")
    obj = state_to_dict(s)
    assert obj == {
        "n": 2,
        "terms": [
            {"basis": "01", "re": "1/2", "im": "3"},
            {"basis": "10", "re": "-1", "im": "0"},
        ],
    }
    assert state_from_dict(obj) == s
    assert load_state(json.dumps(obj)) == s


@pytest.mark.parametrize(
    "obj",
    [{"terms": []}, {"n": 2, "terms": [{"basis": "012", "re": "1"}]}, {"n": 2, "terms": [{"re": 1}]}],
)
def test_structured_object_errors(obj):
    with pytest.raises(StateParseError):
        state_from_dict(obj)


def test_load_state_bad_json():
    with pytest.raises(StateParseError):
        load_state("{not json")


@given(pure_states(max_n=8, max_m=12))
def test_text_round_trip(s):
    assert parse_state(serialize_state(s)) == s
    assert state_from_dict(state_to_dict(s)) == s


def test_state_from_strings():
    assert state_from_strings({"00": 1, "11": "-1/2"}) == PureState(2, [(0, 1), (3, Fraction(-1, 2))])


# ---------------------------------------------------------------------------
# subsets and bit helpers


def test_subset_qubits_and_complement():
    s = QubitSubset.from_qubits([1, 3], 3)
    assert s.mask == 0b101
    assert s.qubits == (1, 3)
    assert s.complement().qubits == (2,)
    assert str(s) == "{1,3}"
    assert 3 in s and 2 not in s


def test_subset_validation():
    with pytest.raises(ValueError):
        QubitSubset.from_qubits([4], 3)
    with pytest.raises(ValueError):
        QubitSubset(8, 3)


@given(st.integers(0, 2**12 - 1), st.integers(1, 2**12 - 1))
def test_compress_deposit_inverse(label, mask):
    pos = QubitSubset(mask, 12).positions
    packed = compress(label, pos)
    assert deposit(packed, pos) == label & mask


# ---------------------------------------------------------------------------
# tensor product


def test_tensor_product_reconstruction(ex1):
    a = PureState(1, [(0, 1), (1, 1)])
    b = PureState(2, [(0b00, 1), (0b11, 1)])
    out = tensor_product(a, b, QubitSubset.from_qubits([2], 3))
    assert out == PureState(3, [(b, 1) for b in (0b000, 0b010, 0b101, 0b111)])
    assert out.is_proportional_to(ex1)


def test_tensor_product_identity_like_factor():
    a = PureState(1, [(0, 1)])
    b = parse_state("01 2\n10 -3\n11 1/2")
    out = tensor_product(a, b, QubitSubset.from_qubits([2], 3))
    assert out.m == b.m
    assert all(not (label >> 1) & 1 for label in out.labels)


def test_tensor_product_full_support():
    a = PureState(1, [(0, 1), (1, 1)])
    out = tensor_product(a, a, QubitSubset.from_qubits([1], 2))
    assert out.labels == (0, 1, 2, 3)


def test_tensor_product_size_mismatch():
    a = PureState(2, [(0, 1), (3, 1)])
    with pytest.raises(ValueError):
        tensor_product(a, a, QubitSubset.from_qubits([1], 3))


@given(
    pure_states(max_n=3, max_m=4),
    pure_states(max_n=3, max_m=4),
    st.randoms(use_true_random=False),
)
def test_tensor_product_matches_character_brute_force(a, b, rnd):
    n = a.n + b.n
    qubits = sorted(rnd.sample(range(1, n + 1), a.n))
    out = tensor_product(a, b, QubitSubset.from_qubits(qubits, n))
    assert as_strings(out) == brute_product(a, b, qubits, n)
    assert out.m == a.m * b.m


@given(pure_states(max_n=3, max_m=4), pure_states(max_n=3, max_m=4), nonzero_complex)
def test_tensor_product_is_scale_bilinear(a, b, c):
    place = QubitSubset((1 << (a.n + b.n)) - (1 << b.n), a.n + b.n)
    assert tensor_product(a.scale(c), b, place) == tensor_product(a, b, place).scale(c)
    assert tensor_product(a, b.scale(c), place) == tensor_product(a, b, place).scale(c)


# ---------------------------------------------------------------------------
# permutations and complements


def test_permute_single_term():
    assert permute_qubits(parse_state("01 1"), [2, 1]) == parse_state("10 1")


def test_permute_column_exchange(ex1):
    out = permute_qubits(ex1, [2, 1, 3])
    assert out == parse_state("000 1/2\n100 1/2\n011 1/2\n111 1/2")


@given(st.integers(2, 8).flatmap(lambda n: st.permutations(list(range(1, n + 1)))))
def test_permute_ghz_is_invariant(perm):
    n = len(perm)
    ghz = PureState(n, [(0, 1), ((1 << n) - 1, 1)])
    assert permute_qubits(ghz, perm) == ghz


def test_permute_rejects_non_bijection():
    with pytest.raises(ValueError):
        permute_qubits(parse_state("01 1"), [1, 1])


@given(pure_states(min_n=2, max_n=6), st.data())
def test_permute_composes(s, data):
    p = data.draw(st.permutations(list(range(1, s.n + 1))))
    q = data.draw(st.permutations(list(range(1, s.n + 1))))
    assert permute_qubits(permute_qubits(s, p), q) == permute_qubits(s, compose_permutations(q, p))


def test_complement_examples():
    assert complement_label(0b0101, 4) == 0b1010
    assert complement_label(0, 5) == 0b11111


def test_complement_involution_random():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(1, 63)
        x = rng.getrandbits(n)
        assert complement_label(complement_label(x, n), n) == x


@given(pure_states(max_n=6))
def test_complement_maps_support_to_flipped_support(s):
    flipped = flip_all(s)
    assert {complement_label(b, s.n) for b in s.labels} == set(flipped.labels)


def test_state_invariants():
    with pytest.raises(StateInvariantError):
        PureState(2, [])
    with pytest.raises(StateInvariantError):
        PureState(0, [(0, 1)])
    with pytest.raises(StateInvariantError):
        PureState(2, [(4, 1)])
    with pytest.raises(StateInvariantError):
        PureState(2, [("0", 1)])
