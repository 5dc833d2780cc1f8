"""Lattices over F_q[x].

A vector is a tuple of :class:`~polylat.gfpoly.Poly`; its norm is the largest
entry degree. A :class:`PolyBasis` is a square, nonsingular list of row
vectors. Determinants are reported monic, since they are only defined up to
a unit of F_q.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .gfpoly import NEG_INF, Poly, decode_poly, encode_poly, xgcd

PolyVec = tuple  # tuple[Poly, ...]


class InvalidBasisError(ValueError):
    pass


# -- vectors -----------------------------------------------------------------


def vec_norm(a: Sequence[Poly]):
    """Max entry degree; NEG_INF for the zero vector."""
    return max((e.degree for e in a), default=NEG_INF)


def vec_add(a, b) -> PolyVec:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(c: Poly, a) -> PolyVec:
    return tuple(c * x for x in a)


def lin_comb(mu, rows) -> PolyVec:
    """sum_i mu[i] * rows[i]."""
    q = rows[0][0].q
    out = [Poly.zero(q)] * len(rows[0])
    for m, row in zip(mu, rows):
        if m:
            out = [o + m * e for o, e in zip(out, row)]
    return tuple(out)


# -- matrices ----------------------------------------------------------------


def identity(n: int, q: int = 2) -> list[PolyVec]:
    one, zero = Poly.one(q), Poly.zero(q)
    return [tuple(one if i == j else zero for j in range(n)) for i in range(n)]


def mat_mul(A, B) -> list[PolyVec]:
    return [lin_comb(row, B) for row in A]


def mat_det(rows, q: int):
    """Determinant by Bareiss fraction-free elimination (not normalized)."""
    n = len(rows)
    M = [list(r) for r in rows]
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    sign = 1
    prev = Poly.one(q)
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(q)
        pkk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                num = M[i][j] * pkk - mik * M[k][j]
                quo, rem = divmod(num, prev)
                assert not rem, "Bareiss division must be exact"
                M[i][j] = quo
        prev = pkk
    d = M[n - 1][n - 1]
    return d if sign > 0 else -d


def echelon(rows, q: int):
    """Row echelon form by unimodular xgcd row operations.

    Returns ``(H, T, pivots)`` with ``T * rows = H``, ``T`` unimodular and
    H zero below each pivot. Rows past ``len(pivots)`` of H are zero.
    """
    m = len(rows)
    H = [list(r) for r in rows]
    T = [list(r) for r in identity(m, q)]
    ncols = len(H[0]) if m else 0
    pivots = []
    p = 0
    for col in range(ncols):
        if p == m:
            break
        for i in range(p + 1, m):
            b = H[i][col]
            if not b:
                continue
            a = H[p][col]
            d, s, t = xgcd(a, b)
            ad, bd = a // d, b // d
            for M in (H, T):
                rp, ri = M[p], M[i]
                M[p] = [s * x + t * y for x, y in zip(rp, ri)]
                M[i] = [bd * x - ad * y for x, y in zip(rp, ri)]
        if H[p][col]:
            pivots.append(col)
            p += 1
    return H, T, pivots


# -- bases -------------------------------------------------------------------


class PolyBasis:
    """Row basis of a full-rank lattice in F_q[x]^n."""

    def __init__(self, rows, q: int | None = None):
        rows = [tuple(r) for r in rows]
        if not rows:
            raise InvalidBasisError("empty basis")
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidBasisError("basis must be square")
        if q is None:
            q = rows[0][0].q
        if any(e.q != q for r in rows for e in r):
            raise InvalidBasisError("entries over different fields")
        if any(not any(r) for r in rows):
            raise InvalidBasisError("zero row")
        self.rows = tuple(rows)
        self.q = q
        self.n = n
        self._det = None
        self._ech = None
        if not self.det:
            raise InvalidBasisError("singular matrix")

    @property
    def det(self) -> Poly:
        if self._det is None:
            self._det = mat_det(self.rows, self.q).monic()
        return self._det

    def row_norms(self) -> list:
        return [vec_norm(r) for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, PolyBasis) and self.q == other.q and self.rows == other.rows

    def __hash__(self):
        return hash((self.q, self.rows))

    def __repr__(self):
        return f"PolyBasis(n={self.n}, q={self.q}, norms={self.row_norms()})"

    def _echelon(self):
        if self._ech is None:
            self._ech = echelon(self.rows, self.q)
        return self._ech

    # -- serialization --

    def to_dict(self, encoding: str | None = None) -> dict:
        if encoding is None:
            encoding = "dense" if self.q == 2 else "sparse"
        return {
            "q": self.q,
            "n": self.n,
            "rows": [[encode_poly(e, encoding) for e in r] for r in self.rows],
            "encoding": encoding,
        }

    @classmethod
    def from_dict(cls, d: dict) -> PolyBasis:
        q = int(d.get("q", 2))
        enc = d.get("encoding", "dense")
        rows = [[decode_poly(s, enc, q) for s in r] for r in d["rows"]]
        if "n" in d and int(d["n"]) != len(rows):
            raise InvalidBasisError(f"n={d['n']} but {len(rows)} rows given")
        return cls(rows, q)

    def to_json(self, encoding: str | None = None) -> str:
        return json.dumps(self.to_dict(encoding))

    @classmethod
    def from_json(cls, s: str) -> PolyBasis:
        return cls.from_dict(json.loads(s))


@dataclass(frozen=True)
class LatticeProfile:
    det: Poly
    covol: int
    od: int
    row_norms: tuple


def det(B: PolyBasis) -> Poly:
    return B.det


def covol(B: PolyBasis) -> int:
    return B.det.degree


def od(B: PolyBasis) -> int:
    """Orthogonality defect: sum of row norms minus covolume."""
    return sum(B.row_norms()) - covol(B)


def profile(B: PolyBasis) -> LatticeProfile:
    return LatticeProfile(B.det, covol(B), od(B), tuple(sorted(B.row_norms())))


def successive_minima(B) -> list:
    """Successive minima read off a reduced basis (OD must be 0).

    Accepts a :class:`PolyBasis` or anything with a ``basis`` attribute
    holding one (such as ``ReducedBasis``).
    """
    B = getattr(B, "basis", B)
    if od(B) != 0:
        raise ValueError("successive minima need a reduced basis (OD = 0)")
    return sorted(B.row_norms())


def contains(B: PolyBasis, v) -> PolyVec | None:
    """Coordinates mu with sum mu_i b_i = v, or None if v is not in the lattice."""
    v = tuple(v)
    if len(v) != B.n:
        raise ValueError("dimension mismatch")
    H, T, _ = B._echelon()
    n, q = B.n, B.q
    # solve nu * H = v, H upper triangular
    nu = []
    for j in range(n):
        rem = v[j]
        for i in range(j):
            if nu[i]:
                rem = rem - nu[i] * H[i][j]
        quo, r = divmod(rem, H[j][j])
        if r:
            return None
        nu.append(quo)
    return lin_comb(nu, T) if any(nu) else tuple(Poly.zero(q) for _ in range(n))


def index(L1: PolyBasis, L2: PolyBasis) -> int:
    """Exponent e with [L1 : L2] = q^e, for L2 a sublattice of L1."""
    if L1.q != L2.q or L1.n != L2.n:
        raise ValueError("lattices live in different ambient spaces")
    for row in L2.rows:
        if contains(L1, row) is None:
            raise ValueError("L2 is not a sublattice of L1")
    return covol(L2) - covol(L1)
