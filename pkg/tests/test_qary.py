import itertools
import random

import pytest

from conftest import rand_poly, rand_poly_exact
from polylat.bike import bike_lattice, check_params, keygen, modulus
from polylat.gfpoly import Poly
from polylat.lattice import PolyBasis, contains, covol, identity
from polylat.qary import QaryInstance, covol_bound_check, is_member, qary_basis


def unit_block(k, n, q=2):
    return [[Poly.one(q) if i == j else Poly.zero(q) for j in range(n)] for i in range(k)]


def test_instance_validation():
    g = Poly([1, 1])
    with pytest.raises(ValueError):
        QaryInstance(unit_block(3, 2), g)
    with pytest.raises(ValueError):
        QaryInstance(unit_block(1, 2), Poly.one())
    with pytest.raises(ValueError):
        QaryInstance([], g)


@pytest.mark.parametrize("k,n", [(1, 1), (1, 2), (2, 3), (3, 3)])
def test_equality_case(k, n):
    g = Poly([1, 0, 1, 1])
    inst = QaryInstance(unit_block(k, n), g)
    B = qary_basis(inst)
    assert covol_bound_check(inst) == (g.degree * k, g.degree * k)
    # (g F[x]^k) x F[x]^(n-k)
    expected = PolyBasis([tuple(g if (i == j and i < k) else (Poly.one() if i == j else Poly.zero())
                                for j in range(n)) for i in range(n)])
    for row in B.rows:
        assert contains(expected, row) is not None
    for row in expected.rows:
        assert contains(B, row) is not None


def test_bike_lattice_as_qary():
    r = 13
    key = keygen(check_params(r, 3), random.Random(2))
    inst = QaryInstance([[Poly.one(), key.h]], modulus(r))  # -h = h over F_2
    B = qary_basis(inst)
    L = bike_lattice(key.h, r)
    assert all(contains(L, row) is not None for row in B.rows)
    assert all(contains(B, row) is not None for row in L.rows)
    assert covol_bound_check(inst) == (r, r)


def test_zero_matrix_gives_identity():
    inst = QaryInstance([[Poly.zero(3)] * 3], Poly([1, 0, 1], 3))
    B = qary_basis(inst)
    assert covol(B) == 0
    assert all(contains(B, row) is not None for row in identity(3, 3))


def test_soundness_and_bound_random():
    rng = random.Random(3)
    for q in (2, 3):
        for _ in range(40):
            n = rng.randint(1, 3)
            k = rng.randint(1, n)
            g = rand_poly_exact(rng, rng.randint(1, 5), q)
            A = [[rand_poly(rng, 5, q) for _ in range(n)] for _ in range(k)]
            inst = QaryInstance(A, g)
            B = qary_basis(inst)
            assert all(is_member(inst, row) for row in B.rows)
            c, bound = covol_bound_check(inst)
            assert c <= bound


def test_completeness_small():
    rng = random.Random(4)
    for _ in range(25):
        n = rng.randint(1, 3)
        k = rng.randint(1, n)
        g = rand_poly_exact(rng, rng.randint(1, 3))
        A = [[rand_poly(rng, 4) for _ in range(n)] for _ in range(k)]
        inst = QaryInstance(A, g)
        B = qary_basis(inst)
        d = g.degree
        members = 0
        for bits in itertools.product(range(1 << d), repeat=n):
            a = tuple(Poly.from_int(b) for b in bits)
            if is_member(inst, a):
                members += 1
                assert contains(B, a) is not None
        # g F[x]^n sits inside the lattice, so the box holds q^(n|g| - covol) points
        assert members == 2 ** (n * d - covol(B))
