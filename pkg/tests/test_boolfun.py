from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pbfbox.boolfun import BooleanFunction, HexParseError, anf, degree, mobius, parse_hex, support
from pbfbox.gf2n import FieldSpec

S4, S6 = FieldSpec(4), FieldSpec(6)


def tables(spec):
    return st.lists(st.integers(0, 1), min_size=spec.order, max_size=spec.order)


def naive_anf(tt, n):
    # a_u = sum of f(x) over x <= u (bitwise)
    return [sum(tt[x] for x in range(1 << n) if x & u == x) % 2 for u in range(1 << n)]


@given(tables(S4))
def test_anf_matches_subset_sum(tt):
    assert anf(BooleanFunction(S4, tt)).tolist() == naive_anf(tt, 4)


@given(tables(S6))
def test_mobius_involution(tt):
    assert mobius(mobius(np.array(tt))).tolist() == tt


def test_mobius_batches_rows():
    rng = np.random.default_rng(0)
    rows = rng.integers(0, 2, (5, 64))
    assert np.array_equal(mobius(rows), np.array([mobius(r) for r in rows]))


def test_degree_examples():
    assert degree(BooleanFunction.zero(S6)) == -1
    assert degree(BooleanFunction.one(S6)) == 0
    assert degree(BooleanFunction.indicator(S6, [9])) == 6
    # x -> bit 2 of x is linear
    assert degree(BooleanFunction(S6, (np.arange(64) >> 2) & 1)) == 1


@pytest.mark.parametrize("beta", [6, 0x14, 0x2a])
def test_pair_indicator_is_power_sum(beta):
    # (x+b)^(2^n-1) + (x+b+1)^(2^n-1), evaluated with field powers
    q = S6.order
    tt = [S6.pow(x ^ beta, q - 1) ^ S6.pow(x ^ beta ^ 1, q - 1) for x in range(q)]
    f = BooleanFunction(S6, tt)
    assert f == BooleanFunction.indicator(S6, [beta, beta ^ 1])
    assert f.degree() == 5


def test_support_weight_add():
    f = BooleanFunction.indicator(S6, [1, 5, 9])
    g = BooleanFunction.indicator(S6, [5, 7])
    assert f.weight == 3
    assert {int(e) for e in support(f)} == {1, 5, 9}
    assert (f + g).support_ints() == [1, 7, 9]
    assert (~f).weight == 61
    with pytest.raises(ValueError):
        f + BooleanFunction.zero(S4)


def test_value_and_hash():
    f = BooleanFunction.indicator(S6, [3])
    assert f(3) == 1 and f(S6(4)) == 0
    assert hash(f) == hash(BooleanFunction.indicator(S6, [3]))
    with pytest.raises(ValueError):
        f.tt[0] = 1


def test_rejects_bad_tables():
    with pytest.raises(ValueError):
        BooleanFunction(S6, [0] * 63)
    with pytest.raises(ValueError):
        BooleanFunction(S6, [2] * 64)


@given(tables(S6))
def test_hex_round_trip(tt):
    f = BooleanFunction(S6, tt)
    h = f.to_hex()
    assert len(h) == 16
    assert BooleanFunction.from_hex(S6, h) == f
    assert int(h, 16) == sum(b << i for i, b in enumerate(tt))


def test_hex_small_field_padding():
    f = BooleanFunction.indicator(S4, [0])
    assert f.to_hex() == "0001"


@pytest.mark.parametrize("text, offset", [("12g4", 2), ("  x", 2), ("", 0), ("0x", 2), ("12 34", 2)])
def test_hex_errors_report_offset(text, offset):
    with pytest.raises(HexParseError) as e:
        parse_hex(text, 64)
    assert e.value.offset == offset
    assert f"byte offset {offset}" in str(e.value)


def test_hex_too_wide():
    with pytest.raises(HexParseError):
        BooleanFunction.from_hex(S4, "1ffff")


def test_exhaustive_degree_distribution_n4():
    # the number of functions of degree <= d on 4 variables is 2^(sum_{i<=d} C(4,i))
    counts = [0] * 6
    for bits in product((0, 1), repeat=16):
        counts[degree(BooleanFunction(S4, bits)) + 1] += 1
    cum = np.cumsum(counts)
    assert cum.tolist() == [1, 2, 2**5, 2**11, 2**15, 2**16]
