"""Basis reduction to orthogonality defect 0, and an exhaustive minima oracle.

Reduction works on leading-coefficient vectors. For a row b_i of norm d_i,
its leading vector collects the coefficients of x^{d_i} in each entry. If the
leading vectors are dependent over F_q, some row b_k is a combination
``LC_k = sum_j c_j LC_j`` of rows with d_j <= d_k, and

    b_k <- b_k - sum_j c_j x^{d_k - d_j} b_j

cancels its top coefficients, so |b_k| drops. Once the leading vectors are
independent the defect is 0. Each step lowers the sum of row norms by at
least one, hence ``steps <= initial_od``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .gfpoly import NEG_INF, Poly
from .lattice import PolyBasis, covol, identity, mat_det, od, vec_norm

DEFAULT_BUDGET = 2**24

# documented constant for steps <= n * (initial_od + 1) * STEP_CONSTANT
STEP_CONSTANT = 1


class BudgetExceededError(RuntimeError):
    pass


def enumeration_budget() -> int:
    return int(os.environ.get("POLYLAT_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class ReductionStats:
    steps: int
    initial_od: int
    arithmetic_ops: int | None = None


@dataclass(frozen=True)
class ReducedBasis:
    basis: PolyBasis
    transform: tuple
    source_covol: int

    @property
    def rows(self):
        return self.basis.rows

    def norms(self) -> list:
        return self.basis.row_norms()


def _leading_vector(row, d, q):
    return [e.coeff(d) for e in row]


def _find_dependency(lcv, norms, q):
    """Pick the row to reduce and its combination, or None if independent.

    Rows are scanned in (norm, index) order and eliminated against the
    independent rows already seen. Among the rows that fall into the span,
    the one of largest norm (lowest index on ties) is returned together with
    coefficients c_j such that LC_k = sum c_j LC_j.
    """
    n = len(lcv)
    order = sorted(range(n), key=lambda i: (norms[i], i))
    pivots = []  # (pivot column, reduced vector, expression as dict row->coef)
    best = None
    for k in order:
        vec = list(lcv[k])
        expr = {k: 1}
        for col, pv, pexpr in pivots:
            c = vec[col]
            if c:
                vec = [(a - c * b) % q for a, b in zip(vec, pv)]
                for j, e in pexpr.items():
                    expr[j] = (expr.get(j, 0) - c * e) % q
        lead = next((j for j, c in enumerate(vec) if c), None)
        if lead is None:
            if best is None or norms[k] > norms[best[0]]:
                best = (k, expr)
            continue
        inv = pow(vec[lead], -1, q)
        vec = [c * inv % q for c in vec]
        expr = {j: e * inv % q for j, e in expr.items()}
        pivots.append((lead, vec, expr))
    if best is None:
        return None
    k, expr = best
    # expr: LC_k + sum_{j != k} expr[j] LC_j = 0
    return k, {j: (-e) % q for j, e in expr.items() if j != k and e}


def _reduce2_binary(rows, U):
    """2x2 over F_2 on packed ints: the common BIKE case."""
    (a0, a1), (b0, b1) = rows
    (u00, u01), (u10, u11) = U
    steps = 0
    while True:
        da = max(a0.bit_length(), a1.bit_length()) - 1
        db = max(b0.bit_length(), b1.bit_length()) - 1
        la = ((a0 >> da) & 1, (a1 >> da) & 1)
        lb = ((b0 >> db) & 1, (b1 >> db) & 1)
        if la != lb:
            break
        # leading vectors equal; reduce the longer row, row 1 on ties
        if da > db:
            s = da - db
            a0 ^= b0 << s
            a1 ^= b1 << s
            u00 ^= u10 << s
            u01 ^= u11 << s
        else:
            s = db - da
            b0 ^= a0 << s
            b1 ^= a1 << s
            u10 ^= u00 << s
            u11 ^= u01 << s
        steps += 1
    return [[a0, a1], [b0, b1]], [[u00, u01], [u10, u11]], steps


def reduce(B: PolyBasis) -> tuple[ReducedBasis, ReductionStats]:
    """Transform B into a basis of the same lattice with OD = 0.

    Rows of the result are sorted by (norm, original index); ``transform``
    is the unimodular U with ``result = U * B``.
    """
    n, q = B.n, B.q
    initial_od = od(B)
    if n == 2 and q == 2:
        raw = [[e.bits for e in r] for r in B.rows]
        rows_i, U_i, steps = _reduce2_binary(raw, [[1, 0], [0, 1]])
        rows = [[Poly._raw(v, 2) for v in r] for r in rows_i]
        U = [[Poly._raw(v, 2) for v in r] for r in U_i]
        ops = steps * 4
    else:
        rows = [list(r) for r in B.rows]
        U = [list(r) for r in identity(n, q)]
        norms = [vec_norm(r) for r in rows]
        lcv = [_leading_vector(rows[i], norms[i], q) for i in range(n)]
        steps = ops = 0
        while True:
            dep = _find_dependency(lcv, norms, q)
            if dep is None:
                break
            k, combo = dep
            rk, uk = rows[k], U[k]
            for j, c in combo.items():
                s = norms[k] - norms[j]
                rk = [x - y.shift(s).scale(c) for x, y in zip(rk, rows[j])]
                uk = [x - y.shift(s).scale(c) for x, y in zip(uk, U[j])]
                ops += 2 * n
            rows[k], U[k] = rk, uk
            new = vec_norm(rk)
            assert new < norms[k], "reduction step must lower the row norm"
            norms[k] = new
            lcv[k] = _leading_vector(rk, new, q)
            steps += 1

    order = sorted(range(n), key=lambda i: (vec_norm(rows[i]), i))
    rows = [tuple(rows[i]) for i in order]
    U = tuple(tuple(U[i]) for i in order)
    basis = PolyBasis(rows, q)
    source_covol = covol(B)
    assert covol(basis) == source_covol
    assert od(basis) == 0
    if __debug__:
        _check_norm_formula(basis)
    return ReducedBasis(basis, U, source_covol), ReductionStats(steps, initial_od, ops)


def _check_norm_formula(basis: PolyBasis):
    # |sum b_i| = max |b_i| holds exactly when the leading vectors are independent
    rows = basis.rows
    total = rows[0]
    for r in rows[1:]:
        total = tuple(x + y for x, y in zip(total, r))
    assert vec_norm(total) == max(vec_norm(r) for r in rows), "norm formula violated"


def shortest_vector(B: PolyBasis):
    red, _ = reduce(B)
    return red.basis.rows[0]


# -- exhaustive oracle -------------------------------------------------------


def _coord_bounds(B: PolyBasis, bound: int):
    # Cramer: mu_i = det(B with row i := v) / det(B), so
    # deg mu_i <= |v| + sum_{j != i} |b_j| - covol = |v| - |b_i| + OD
    norms = B.row_norms()
    defect = od(B)
    return [bound - d + defect for d in norms]


def _rank(vectors, q) -> int:
    if not vectors:
        return 0
    from .lattice import echelon

    _, _, piv = echelon(vectors, q)
    return len(piv)


def _lattice_points(B: PolyBasis, bound: int, budget: int):
    """Every lattice vector of norm <= bound, by enumerating coordinates."""
    q, n = B.q, B.n
    dims = [max(c + 1, 0) for c in _coord_bounds(B, bound)]
    total = q ** sum(dims)
    if total > budget:
        raise BudgetExceededError(f"{total} combinations exceed budget {budget}")
    gens = []  # (row index, shift)
    for i, d in enumerate(dims):
        gens.extend((i, s) for s in range(d))
    if q == 2:
        # Gray code over packed (entry-concatenated) vectors
        width = max(max(vec_norm(r) for r in B.rows) + max(dims, default=0) + 1, 1)

        def pack(vec):
            out = 0
            for j, e in enumerate(vec):
                out |= e.bits << (j * width)
            return out

        packed_gens = [pack(B.rows[i]) << s for i, s in gens]
        mask = (1 << width) - 1
        cur = 0
        found = []
        for step in range(1, total):
            cur ^= packed_gens[(step & -step).bit_length() - 1]
            entries = [(cur >> (j * width)) & mask for j in range(n)]
            if max(entries).bit_length() - 1 <= bound:
                found.append(tuple(Poly._raw(e, 2) for e in entries))
        return found
    found = []
    for coeffs in itertools.product(range(q), repeat=len(gens)):
        if not any(coeffs):
            continue
        vec = [Poly.zero(q)] * n
        for (i, s), c in zip(gens, coeffs):
            if c:
                vec = [x + y.shift(s).scale(c) for x, y in zip(vec, B.rows[i])]
        if vec_norm(vec) <= bound:
            found.append(tuple(vec))
    return found


def brute_force_minima(B: PolyBasis, bound=None, budget: int | None = None) -> list:
    """Successive minima up to ``bound`` by exhaustive search.

    For each level d = 0..bound all lattice vectors of norm <= d are
    enumerated via their coordinates (bounded by Cramer's rule, which is
    valid for any basis), and vectors of norm exactly d are added greedily
    while they raise the rank. ``bound`` defaults to the largest row norm,
    which always dominates the last minimum. Fewer than n values are
    returned if ``bound`` is too small.
    """
    if budget is None:
        budget = enumeration_budget()
    if bound is None:
        bound = max(B.row_norms())
    if bound is NEG_INF or bound < 0:
        return []
    chosen, minima = [], []
    for level in range(bound + 1):
        for v in _lattice_points(B, level, budget):
            if vec_norm(v) != level:
                continue
            if _rank(chosen + [v], B.q) > len(chosen):
                chosen.append(v)
                minima.append(level)
                if len(chosen) == B.n:
                    return minima
    return minima


def is_unit_transform(U, q: int) -> bool:
    return mat_det(U, q).degree == 0
