"""Thue's lemma via rank-2 integer lattice reduction.

Given 0 < a* < gamma < a* t*, find a, t with |a| < a*, 0 < |t| < t* and
a = b t (mod gamma). The solutions are the nonzero points of the lattice
{(a, t) : a - b t = 0 mod gamma} inside the open box |a| < a*, |t| < t*.
Scaling a by t* and t by a* turns the box into a square of half-side
S = a* t*; a Lagrange-Gauss reduced basis (b1, b2) of the scaled lattice
then contains a box point among c1 b1 + c2 b2 with |c1|, |c2| <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ThueInstance:
    gamma: int
    b: int
    a_star: int
    t_star: int

    def __post_init__(self):
        if not 0 < self.a_star < self.gamma < self.a_star * self.t_star:
            raise ValueError(
                f"need 0 < a* < gamma < a* t*, got a*={self.a_star}, "
                f"gamma={self.gamma}, t*={self.t_star}"
            )


@dataclass(frozen=True)
class ThueSolution:
    a: int
    t: int

    def is_valid(self, inst: ThueInstance) -> bool:
        return (
            abs(self.a) < inst.a_star
            and 0 < abs(self.t) < inst.t_star
            and (self.a - inst.b * self.t) % inst.gamma == 0
        )


def _dot(u, v, wa, wt):
    return u[0] * v[0] * wa + u[1] * v[1] * wt


def lagrange_reduce(u, v, wa: int = 1, wt: int = 1):
    """Lagrange-Gauss reduction under <u, v> = wa u0 v0 + wt u1 v1.

    Exact integer arithmetic; returns (b1, b2) with |b1| <= |b2| and
    |<b1, b2>| <= <b1, b1> / 2.
    """
    nu, nv = _dot(u, u, wa, wt), _dot(v, v, wa, wt)
    if nu > nv:
        u, v, nu, nv = v, u, nv, nu
    while True:
        num = _dot(u, v, wa, wt)
        # nearest integer to num / nu
        m = (2 * num + nu) // (2 * nu)
        v = (v[0] - m * u[0], v[1] - m * u[1])
        nv = _dot(v, v, wa, wt)
        if nv >= nu:
            return u, v
        u, v, nu, nv = v, u, nv, nu


def thue_solve(inst: ThueInstance) -> ThueSolution:
    """A solution of Thue's congruence, normalized to t > 0."""
    g, a_s, t_s = inst.gamma, inst.a_star, inst.t_star
    b = inst.b % g
    # weights squared: coordinate a scaled by t*, coordinate t by a*
    b1, b2 = lagrange_reduce((g, 0), (b, 1), t_s * t_s, a_s * a_s)
    for c1, c2 in ((1, 0), (0, 1), (1, 1), (1, -1)):
        a = c1 * b1[0] + c2 * b2[0]
        t = c1 * b1[1] + c2 * b2[1]
        if abs(a) < a_s and 0 < abs(t) < t_s:
            if t < 0:
                a, t = -a, -t
            sol = ThueSolution(a, t)
            assert sol.is_valid(inst)
            return sol
    raise AssertionError(f"no box point among small combinations for {inst}")


def int_qary_covol(b: int, gamma: int) -> tuple[int, int]:
    """(covolume of {(a, t) : a = b t mod gamma}, gamma^1)."""
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    # rows (gamma, 0), (b mod gamma, 1)
    cov = abs(gamma * 1 - 0 * (b % gamma))
    bound = gamma
    assert cov <= bound
    return cov, bound
