"""Polynomial q-ary lattices {a in F_q[x]^n : A a = 0 mod g}."""

from __future__ import annotations

from dataclasses import dataclass

from .gfpoly import Poly
from .lattice import PolyBasis, covol, echelon
from .reduce import reduce


@dataclass(frozen=True)
class QaryInstance:
    A: tuple  # k rows of n Polys
    g: Poly

    def __post_init__(self):
        A = tuple(tuple(r) for r in self.A)
        object.__setattr__(self, "A", A)
        k = len(A)
        if k < 1 or any(len(r) != len(A[0]) for r in A):
            raise ValueError("A must be a nonempty rectangular matrix")
        if k > len(A[0]):
            raise ValueError(f"need k <= n, got k={k}, n={len(A[0])}")
        if self.g.degree < 1:
            raise ValueError("modulus g must have degree >= 1")
        if any(e.q != self.g.q for r in A for e in r):
            raise ValueError("A and g over different fields")

    @property
    def k(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def q(self) -> int:
        return self.g.q


def is_member(inst: QaryInstance, a) -> bool:
    """Direct check of A a = 0 mod g."""
    zero = Poly.zero(inst.q)
    for row in inst.A:
        acc = zero
        for x, y in zip(row, a):
            acc = acc + x * y
        if acc % inst.g:
            return False
    return True


def qary_basis(inst: QaryInstance) -> PolyBasis:
    """Reduced basis of the lattice of solutions of A a = 0 mod g.

    a is a solution iff A a = g y for some y, i.e. (a, y) lies in the kernel
    of [A | -g I_k]. The kernel is read off the unimodular transform that
    puts the transpose in echelon form; projecting onto the first n
    coordinates is injective because g y = g y' forces y = y'.
    """
    n, k, q, g = inst.n, inst.k, inst.q, inst.g
    zero = Poly.zero(q)
    # rows of M^T: column i of A, then -g e_j
    mt = [tuple(inst.A[j][i] for j in range(k)) for i in range(n)]
    mt += [tuple(-g if j == i else zero for j in range(k)) for i in range(k)]
    _, T, pivots = echelon(mt, q)
    rank = len(pivots)
    if rank != k:
        raise AssertionError(f"[A | -gI] must have rank {k}, got {rank}")
    rows = [tuple(T[i][:n]) for i in range(rank, n + k)]
    for row in rows:
        if not is_member(inst, row):
            raise AssertionError("kernel vector fails A a = 0 mod g")
    red, _ = reduce(PolyBasis(rows, q))
    return red.basis


def covol_bound_check(inst: QaryInstance) -> tuple[int, int]:
    """(covolume of the lattice, |g| * k); the first never exceeds the second."""
    c = covol(qary_basis(inst))
    bound = inst.g.degree * inst.k
    assert c <= bound, f"covolume {c} exceeds |g|*k = {bound}"
    return c, bound
