import itertools

import pytest

from bchchain.binpoly import BinPolynomial
from bchchain.gf2m import (
    DEFAULT_PRIMITIVE_POLYNOMIALS,
    NotPrimitiveError,
    build_field,
    cyclotomic_cosets,
    evaluate,
    is_primitive,
    minimal_polynomial,
    mul,
)
from oracles import field_mul_schoolbook, multiplicative_order

P = BinPolynomial.parse


def test_gf4_elements_and_zeta_squared():
    t = build_field(2, P("1+x+x^2"))
    zeta = 0b10
    nonzero = {t.power(e) for e in range(t.order)}
    assert nonzero == {1, zeta, 1 ^ zeta}
    assert mul(zeta, zeta, t) == 1 ^ zeta


def test_s1_rejected():
    with pytest.raises(ValueError):
        build_field(1, P("1+x"))


def test_gf16_order_of_zeta():
    p = P("1+x+x^4")
    assert multiplicative_order(p.value, 4) == 15
    t = build_field(4, p)
    assert [k for k in range(1, 16) if t.power(k) == 1] == [15]


@pytest.mark.parametrize("bad", ["1+x^2+x^4", "1+x+x^2+x^3+x^4", "x+x^4"])
def test_non_primitive_rejected(bad):
    # x^4+x^2+1 is reducible, the all-ones quartic is irreducible but of order 5
    with pytest.raises(NotPrimitiveError):
        build_field(4, P(bad))


def test_wrong_degree_rejected():
    with pytest.raises(ValueError):
        build_field(3, P("1+x+x^4"))


@pytest.mark.parametrize("s", sorted(DEFAULT_PRIMITIVE_POLYNOMIALS))
def test_default_polynomials_are_primitive(s):
    p = DEFAULT_PRIMITIVE_POLYNOMIALS[s]
    assert p.bit_length() - 1 == s
    assert is_primitive(p, s)
    t = build_field(s)
    assert all(t.power(t.log[a]) == a for a in range(1, t.size, max(1, t.size // 4096)))


def test_log_antilog_inverse():
    t = build_field(6)
    assert all(t.exp[t.log[a]] == a for a in range(1, t.size))
    assert all(t.log[t.exp[e]] == e for e in range(t.order))


@pytest.mark.parametrize("s", [2, 3, 4, 5, 6, 7, 8])
def test_table_mul_matches_schoolbook(s):
    t = build_field(s)
    p = t.prim_poly.value
    step = 1 if s <= 6 else 7
    for a in range(0, t.size, step):
        for b in range(t.size):
            assert mul(a, b, t) == field_mul_schoolbook(a, b, p, s)


def test_mul_identities_and_exponents():
    t = build_field(4, P("1+x+x^4"))
    for a in range(16):
        assert mul(a, 1, t) == a
        assert mul(a, 0, t) == 0
    assert mul(t.power(7), t.power(9), t) == t.power(1)


def test_minimal_polynomials_gf4():
    t = build_field(2, P("1+x+x^2"))
    assert minimal_polynomial(1, t) == P("1+x+x^2")
    assert minimal_polynomial(0, t) == P("1+x")


def test_m1_gf16_against_root_search():
    t = build_field(4, P("1+x+x^4"))
    m1 = minimal_polynomial(1, t)
    zeta = t.power(1)
    # oracle: lowest-degree nonzero binary polynomial vanishing at zeta, by search
    found = None
    for v in range(2, 1 << 6):
        if evaluate(BinPolynomial(v), zeta, t) == 0:
            found = BinPolynomial(v)
            break
    assert m1 == found
    assert m1.degree == 4
    assert (BinPolynomial((1 << 15) | 1) % m1).is_zero()


@pytest.mark.parametrize("s", [2, 3, 4, 5, 6])
def test_minimal_polynomial_properties(s):
    t = build_field(s)
    n = t.order
    product = BinPolynomial(1)
    for coset in cyclotomic_cosets(n):
        m = minimal_polynomial(coset[0], t)
        assert m.degree == len(coset)
        for e in coset:
            assert evaluate(m, t.power(e), t) == 0
        # irreducible: no factor of degree 1..deg/2
        for d in range(1, m.degree // 2 + 1):
            for v in range(1 << d, 1 << (d + 1)):
                assert not (m % BinPolynomial(v)).is_zero() or BinPolynomial(v) == m
        product = product * m
    assert product == BinPolynomial((1 << n) | 1)


def test_cyclotomic_cosets_gf16():
    cosets = cyclotomic_cosets(15)
    assert [1, 2, 4, 8] in cosets and [3, 6, 12, 9] in cosets
    assert sorted(itertools.chain(*cosets)) == list(range(15))
