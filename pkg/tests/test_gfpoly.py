import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polylat.gfpoly import (
    NEG_INF,
    FieldMismatchError,
    FieldSpec,
    Poly,
    add,
    decode_poly,
    divrem,
    encode_poly,
    from_dense_hex,
    from_sparse,
    inv_mod,
    mul,
    sample_sparse,
    to_dense_hex,
    to_sparse,
    weight,
    xgcd,
)

F2 = FieldSpec(2)
F3 = FieldSpec(3)
x = F2.x()
one2 = F2.one()


def polys(q=2, max_deg=40):
    return st.lists(st.integers(0, q - 1), max_size=max_deg + 1).map(lambda c: Poly(c, q))


fields = st.sampled_from([2, 3, 5])


def poly_pairs(n=2, max_deg=30):
    return fields.flatmap(lambda q: st.tuples(*[polys(q, max_deg)] * n))


# -- degree ------------------------------------------------------------------


def test_neg_inf_semantics():
    assert Poly.zero().degree is NEG_INF
    assert NEG_INF < 0 < 5
    assert not (NEG_INF > -(10**9))
    assert NEG_INF + 7 is NEG_INF
    assert 7 + NEG_INF is NEG_INF
    assert max(NEG_INF, 3) == 3
    assert max(3, NEG_INF) == 3
    assert sum([NEG_INF, 2]) is NEG_INF
    assert sorted([4, NEG_INF, 0]) == [NEG_INF, 0, 4]
    with pytest.raises(ArithmeticError):
        3 - NEG_INF


def test_field_spec_rejects_composite():
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        Poly([1], q=1)


# -- add / mul / divrem --------------------------------------------------------


def test_add_examples():
    assert add(Poly([1, 0, 1]), Poly([0, 1, 1])) == Poly([1, 1])
    f = Poly([1, 1, 0, 1])
    assert f + F2.zero() == f
    assert Poly([1, 2], 3) + Poly([2, 1], 3) == F3.zero()


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        Poly([1], 2) + Poly([1], 3)
    with pytest.raises(FieldMismatchError):
        Poly([1], 2) * Poly([1], 3)


# F_4 = F_2[y]/(y^2 + y + 1) with elements 0..3 as bit pairs
def _f4_mul(a, b):
    p = 0
    for i in range(2):
        if (b >> i) & 1:
            p ^= a << i
    if p & 4:
        p ^= 0b111
    return p


def _f4_eval(f, pt):
    acc = 0
    for c in reversed(f.coeffs):
        acc = _f4_mul(acc, pt) ^ c
    return acc


def test_mul_examples():
    f = Poly([1, 0, 1, 1])
    assert mul(f, one2) == f
    assert (f * F2.zero()).degree is NEG_INF
    a, b = Poly([1, 1]), Poly([0, 1, 1])
    prod = a * b
    # schoolbook convolution
    conv = [0] * 4
    for i, ca in enumerate(a.coeffs):
        for j, cb in enumerate(b.coeffs):
            conv[i + j] ^= ca & cb
    assert prod == Poly(conv)
    # degree-3 polynomials are pinned down by their values on F_4
    for pt in range(4):
        assert _f4_eval(prod, pt) == _f4_mul(_f4_eval(a, pt), _f4_eval(b, pt))
    assert prod == Poly([0, 1, 0, 1])  # x^3 + x


def test_divrem_examples():
    f, g = Poly([1, 1, 0, 1]), Poly([1, 1])
    quo, rem = divrem(f, g)
    assert quo * g + rem == f
    assert (quo, rem) == (Poly([0, 1, 1]), Poly([1]))
    assert divrem(f, one2) == (f, F2.zero())
    assert divrem(g, g) == (one2, F2.zero())
    with pytest.raises(ZeroDivisionError):
        divrem(f, F2.zero())


def test_large_binary_mul_matches_generic_path():
    rng = random.Random(3)
    for _ in range(20):
        a = [rng.randrange(2) for _ in range(rng.randrange(1, 300))]
        b = [rng.randrange(2) for _ in range(rng.randrange(1, 300))]
        expected = [0] * (len(a) + len(b))
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    expected[i + j] ^= cb
        assert Poly(a) * Poly(b) == Poly(expected)


def test_generic_division_long_quotient():
    rng = random.Random(5)
    for q in (3, 5, 7):
        for _ in range(10):
            g = Poly([rng.randrange(q) for _ in range(20)] + [rng.randrange(1, q)], q)
            f = Poly([rng.randrange(q) for _ in range(200)], q)
            quo, rem = divmod(f, g)
            assert quo * g + rem == f
            assert rem.degree < g.degree


# -- gcd / inverse -------------------------------------------------------------


def test_xgcd_examples():
    f = Poly([1, 0, 1, 1])
    d, s, t = xgcd(f, F2.zero())
    assert (d, s, t) == (f.monic(), Poly.one(), F2.zero())
    f3 = Poly([1, 0, 2], 3)
    d, s, t = xgcd(f3, F3.zero())
    assert d == f3.monic() and s == Poly([pow(2, -1, 3)], 3) and not t
    assert xgcd(Poly([1, 0, 1]), Poly([1, 1])) == (Poly([1, 1]), F2.zero(), one2)
    with pytest.raises(ValueError):
        xgcd(F2.zero(), F2.zero())


def test_inv_mod_examples():
    m = Poly([1, 0, 0, 1])
    inv = inv_mod(x, m)
    assert inv == Poly([0, 0, 1])
    assert (x * inv) % m == one2
    assert inv_mod(one2, m) == one2
    assert inv_mod(Poly([1, 1]), m) is None


def test_weight_examples():
    assert weight(F2.zero()) == 0
    assert weight(Poly.from_exponents([0, 11])) == 2
    assert weight(Poly.from_exponents([0, 2, 5])) == 3
    assert weight(Poly([0, 2, 0, 1], 3)) == 2


# -- properties ------------------------------------------------------------------


@given(poly_pairs())
def test_degree_is_ultrametric(pair):
    f, g = pair
    s = f + g
    assert s.degree <= max(f.degree, g.degree)
    if f.degree != g.degree:
        assert s.degree == max(f.degree, g.degree)


@given(poly_pairs(3, 20))
def test_ring_axioms(triple):
    f, g, h = triple
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert (f - g) + g == f
    prod_deg = (f * g).degree
    assert prod_deg == f.degree + g.degree


@given(poly_pairs())
def test_divrem_identity(pair):
    f, g = pair
    if not g:
        return
    quo, rem = divmod(f, g)
    assert quo * g + rem == f
    assert rem.degree < g.degree


@given(poly_pairs())
def test_xgcd_bezout(pair):
    f, g = pair
    if not f and not g:
        return
    d, s, t = xgcd(f, g)
    assert s * f + t * g == d
    assert d.lc == 1
    assert not f % d and not g % d


@settings(max_examples=200)
@given(poly_pairs())
def test_inv_mod_iff_coprime(pair):
    f, m = pair
    if m.degree < 1:
        return
    inv = inv_mod(f, m)
    coprime = bool(f) and xgcd(f, m)[0].degree == 0
    assert (inv is not None) == coprime
    if inv is not None:
        assert (inv * f) % m == Poly.one(f.q)


# -- sampling ------------------------------------------------------------------


def test_sample_sparse_weight_and_degree():
    rng = random.Random(11)
    for _ in range(500):
        r = rng.randrange(1, 60)
        v = rng.randrange(1, r + 1)
        f = sample_sparse(r, v, rng)
        assert f.weight() == v and f.degree < r
    assert sample_sparse(13, 13, rng) == Poly.from_int((1 << 13) - 1)
    g = sample_sparse(30, 7, rng, q=5)
    assert g.weight() == 7 and g.q == 5
    with pytest.raises(ValueError):
        sample_sparse(5, 6, rng)
    with pytest.raises(ValueError):
        sample_sparse(5, 0, rng)


def test_sample_sparse_uniform_positions():
    rng = random.Random(12345)
    r, v, draws = 23, 5, 100_000
    counts = Counter()
    for _ in range(draws):
        bits = sample_sparse(r, v, rng).bits
        for i in range(r):
            if (bits >> i) & 1:
                counts[i] += 1
    p = v / r
    mean = draws * p
    sigma = math.sqrt(draws * p * (1 - p))
    for i in range(r):
        assert abs(counts[i] - mean) < 5 * sigma
    chi2 = sum((counts[i] - mean) ** 2 / mean for i in range(r))
    df = r - 1
    assert chi2 < df + 5 * math.sqrt(2 * df)


# -- encodings -------------------------------------------------------------------


def test_encodings():
    f = Poly.from_exponents([0, 2, 5])
    assert to_sparse(f) == "0,2,5"
    assert from_sparse("0,2,5") == f
    assert to_dense_hex(f) == "25"
    assert from_dense_hex("25") == f
    assert to_dense_hex(F2.zero()) == "0" and from_dense_hex("0") == F2.zero()
    assert to_sparse(F2.zero()) == "" and from_sparse("") == F2.zero()
    g = Poly([0, 2, 0, 1], 3)
    assert to_sparse(g) == "1:2,3:1"
    assert from_sparse("1:2,3:1", 3) == g
    with pytest.raises(ValueError):
        from_sparse("3,1")
    with pytest.raises(ValueError):
        decode_poly("ff", "dense", q=3)


@given(polys(2, 200), st.sampled_from(["dense", "sparse"]))
def test_encoding_round_trip(f, enc):
    assert decode_poly(encode_poly(f, enc), enc) == f
