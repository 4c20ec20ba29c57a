import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbfbox.gf2n import (FieldElement, FieldSpec, add, default_poly, inv, is_irreducible,
                         is_primitive, mul, omega, solve_artin_schreier, trace)

EVEN_N = [4, 6, 8, 10, 12, 14]


def naive_mul(a, b, poly, n):
    # shift-and-add with reduction after every shift
    r = 0
    for i in range(n):
        if b >> i & 1:
            r ^= a
        a <<= 1
        if a >> n & 1:
            a ^= poly
    return r


def naive_trace(spec, a):
    t, x = 0, a
    for _ in range(spec.n):
        t ^= x
        x = naive_mul(x, x, spec.poly, spec.n)
    assert t in (0, 1)
    return t


@st.composite
def field_and_elems(draw, k=2, ns=EVEN_N):
    n = draw(st.sampled_from(ns))
    spec = FieldSpec(n)
    return (spec, *[draw(st.integers(0, spec.order - 1)) for _ in range(k)])


def test_default_polynomials():
    assert {n: default_poly(n) for n in (6, 8, 10, 12, 14)} == {
        6: 0x43, 8: 0x11D, 10: 0x409, 12: 0x1053, 14: 0x4443}
    for n in range(4, 31, 2):
        p = default_poly(n)
        assert p.bit_length() == n + 1 and is_primitive(p)


@pytest.mark.parametrize("n, poly", [(7, 0), (2, 0), (32, 0), (8, 0x11F), (8, 0x103), (6, 0x11D)])
def test_fieldspec_rejects(n, poly):
    with pytest.raises(ValueError):
        FieldSpec(n, poly)


def test_irreducible_but_not_primitive_is_accepted():
    assert is_irreducible(0x11B) and not is_primitive(0x11B)
    s = FieldSpec(8, 0x11B)
    assert s.mul(s.generator, s.inv(s.generator)) == 1


def test_basic_examples():
    s = FieldSpec(6)
    x = s(2)
    assert x + s(3) == s(1)
    assert x * x == s(4)
    assert (x + x).bits == 0
    assert x * s(1) == x
    g = s(s.generator)
    assert g ** (s.order - 1) == s(1)
    assert inv(s(0)) == s(0) and inv(s(1)) == s(1)
    assert trace(s(0)) == 0 and trace(s(1)) == 0


def test_mismatched_fields_raise():
    a, b = FieldSpec(6)(3), FieldSpec(8)(3)
    with pytest.raises(ValueError):
        add(a, b)
    with pytest.raises(ValueError):
        mul(a, b)


def test_element_range():
    with pytest.raises(ValueError):
        FieldElement(FieldSpec(6), 64)


@pytest.mark.parametrize("n", [6, 8])
def test_mul_table_matches_shift_and_add(n):
    s = FieldSpec(n)
    a = np.arange(s.order)
    for b in range(s.order):
        want = [naive_mul(int(x), b, s.poly, n) for x in a]
        assert s.mul_arr(a, np.full(s.order, b)).tolist() == want


@given(field_and_elems(k=2, ns=[16, 22, 26, 30]))
def test_scalar_mul_large_fields(t):
    s, a, b = t
    assert s.mul(a, b) == naive_mul(a, b, s.poly, s.n)


@given(field_and_elems(k=1, ns=EVEN_N + [20, 24, 30]))
def test_inverse(t):
    s, a = t
    if a:
        assert s.mul(a, s.inv(a)) == 1
    assert s.inv(s.inv(a)) == a


@pytest.mark.parametrize("n", [6, 8, 10])
def test_inverse_table(n):
    s = FieldSpec(n)
    a = np.arange(1, s.order)
    assert np.all(s.mul_arr(a, s.inv_arr(a)) == 1)
    assert s.inv_table[0] == 0


@given(field_and_elems(k=2, ns=EVEN_N + [18, 28]))
def test_trace_linear_and_frobenius(t):
    s, a, b = t
    assert s.trace(a ^ b) == s.trace(a) ^ s.trace(b)
    assert s.trace(s.mul(a, a)) == s.trace(a)


@pytest.mark.parametrize("n", [6, 8])
def test_trace_against_definition(n):
    s = FieldSpec(n)
    assert s.trace_table.tolist() == [naive_trace(s, a) for a in range(s.order)]


@pytest.mark.parametrize("n", EVEN_N)
def test_trace_balanced(n):
    s = FieldSpec(n)
    assert int((s.trace_table == 0).sum()) == s.order // 2
    assert s.trace(s.trace_one) == 1


@pytest.mark.parametrize("n", EVEN_N + [16, 20, 30])
def test_omega(n):
    s = FieldSpec(n)
    w = omega(s)
    assert w != s(1) and w ** 3 == s(1)
    assert (w * w + w + s(1)).bits == 0
    assert omega(FieldSpec(n)) == w
    assert w.bits == s.pow(s.generator, (s.order - 1) // 3)


def test_generator_is_least():
    s = FieldSpec(8, 0x11B)
    q1 = s.order - 1
    def full(g):
        return all(s.pow(g, q1 // p) != 1 for p in (3, 5, 17))
    assert full(s.generator)
    assert not any(full(g) for g in range(2, s.generator))


def test_omega_odd_n_rejected():
    with pytest.raises(ValueError):
        FieldSpec(7)


def test_artin_schreier_exhaustive_n6():
    s = FieldSpec(6)
    for c in range(s.order):
        roots = solve_artin_schreier(s(c))
        if s.trace(c):
            assert roots is None
        else:
            z0, z1 = roots
            assert {z0.bits, z1.bits} == {z0.bits, z0.bits ^ 1}
            for z in roots:
                assert (z * z + z).bits == c
    assert {r.bits for r in solve_artin_schreier(s(0))} == {0, 1}


@settings(max_examples=40)
@given(field_and_elems(k=1, ns=[10, 22, 24, 30]))
def test_artin_schreier_solve_paths(t):
    s, c = t
    roots = solve_artin_schreier(s(c))
    assert (roots is None) == bool(s.trace(c))
    if roots:
        z = roots[0].bits
        assert s.mul(z, z) ^ z == c


def test_serialisation():
    s = FieldSpec(10)
    assert s.to_json() == {"n": 10, "poly": "409"}
    assert FieldSpec.from_json(s.to_json()) == s
    assert s.hex(5) == "005"
    assert FieldSpec(6).hex(5) == "05"
