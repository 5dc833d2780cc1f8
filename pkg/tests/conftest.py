import itertools
import random

import pytest

from polylat.gfpoly import Poly
from polylat.lattice import InvalidBasisError, PolyBasis

ACCEPTANCE_LINES = []


def record(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20261016)


def rand_poly(rng, deg, q=2):
    """Uniform polynomial of degree <= deg (may be lower, or zero)."""
    if deg < 0:
        return Poly.zero(q)
    return Poly([rng.randrange(q) for _ in range(deg + 1)], q)


def rand_poly_exact(rng, deg, q=2):
    c = [rng.randrange(q) for _ in range(deg)] + [rng.randrange(1, q)]
    return Poly(c, q)


def rand_basis(rng, n, q=2, max_deg=10):
    while True:
        rows = [[rand_poly(rng, rng.randrange(max_deg + 1), q) for _ in range(n)] for _ in range(n)]
        try:
            return PolyBasis(rows, q)
        except InvalidBasisError:
            continue


def rand_unimodular(rng, n, q=2, ops=6, shift=3):
    """Product of random elementary row operations."""
    one, zero = Poly.one(q), Poly.zero(q)
    U = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if kind == 0 and n > 1:
            c = rand_poly(rng, rng.randrange(shift + 1), q)
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        elif kind == 1 and n > 1:
            U[i], U[j] = U[j], U[i]
        else:
            u = rng.randrange(1, q)
            U[i] = [a.scale(u) for a in U[i]]
    return [tuple(r) for r in U]


def leibniz_det(rows, q):
    """Determinant by the permutation expansion (independent oracle)."""
    n = len(rows)
    total = Poly.zero(q)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Poly.one(q)
        for i, p in enumerate(perm):
            term = term * rows[i][p]
        total = total - term if inv % 2 else total + term
    return total


def coset_exponent(diag1, diag2, q, extra=1):
    """log_q [L1 : L2] for diagonal L2 within diagonal L1, by enumerating classes.

    Multiples of b_i are taken with ``extra`` more coefficients than needed, so
    distinct classes only emerge after reducing modulo a_i.
    """
    reps = set()
    per_coord = []
    for b, a in zip(diag1, diag2):
        alpha = a // b
        span = max(alpha.degree + 1, 0) + extra
        per_coord.append([Poly(c, q) * b for c in itertools.product(range(q), repeat=span)] or [Poly.zero(q)])
    for vec in itertools.product(*per_coord):
        reps.add(tuple(v % a for v, a in zip(vec, diag2)))
    count = len(reps)
    e = 0
    while q**e < count:
        e += 1
    assert q**e == count
    return e
