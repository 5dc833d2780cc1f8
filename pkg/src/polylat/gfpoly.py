"""Dense polynomials over prime fields F_q.

Binary polynomials (q = 2) are packed into a Python int, bit i holding the
coefficient of x^i, so addition is XOR and multiplication is carry-less.
Other primes store a tuple of residues; that path is functional, not tuned.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "NEG_INF",
    "FieldSpec",
    "FieldMismatchError",
    "Poly",
    "add",
    "mul",
    "divrem",
    "xgcd",
    "inv_mod",
    "weight",
    "sample_sparse",
    "to_dense_hex",
    "from_dense_hex",
    "to_sparse",
    "from_sparse",
    "encode_poly",
    "decode_poly",
]


class FieldMismatchError(ValueError):
    pass


class _NegInf:
    """Degree of the zero polynomial.

    Orders below every integer, absorbs integer addition, and is the identity
    for ``max``. It is a singleton; compare with ``is`` or ``==``.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __reduce__(self):
        return (_NegInf, ())

    def __lt__(self, other):
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __le__(self, other):
        if other is self or isinstance(other, int):
            return True
        return NotImplemented

    def __gt__(self, other):
        if other is self or isinstance(other, int):
            return False
        return NotImplemented

    def __ge__(self, other):
        if other is self:
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash(float("-inf"))

    def __add__(self, other):
        if other is self or isinstance(other, int):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        if other is self:
            raise ArithmeticError("NEG_INF - NEG_INF is undefined")
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            raise ArithmeticError("integer minus NEG_INF is unbounded")
        return NotImplemented


NEG_INF = _NegInf()


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    q: int = 2

    def __post_init__(self):
        if not _is_prime(self.q):
            raise ValueError(f"field size must be prime, got {self.q}")

    def zero(self) -> Poly:
        return Poly.zero(self.q)

    def one(self) -> Poly:
        return Poly.one(self.q)

    def x(self) -> Poly:
        return Poly.monomial(1, q=self.q)

    def __call__(self, coeffs) -> Poly:
        return Poly(coeffs, q=self.q)


# -- binary kernels on packed ints ------------------------------------------


def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    if b.bit_length() <= 24:
        res = 0
        while b:
            low = b & -b
            res ^= a << (low.bit_length() - 1)
            b ^= low
        return res
    # 4-bit windows
    t = [0] * 16
    t[1] = a
    for i in range(2, 16, 2):
        t[i] = t[i >> 1] << 1
        t[i + 1] = t[i] ^ a
    res = 0
    shift = 0
    while b:
        nib = b & 15
        if nib:
            res ^= t[nib] << shift
        b >>= 4
        shift += 4
    return res


def _divrem2(a: int, b: int) -> tuple[int, int]:
    db = b.bit_length()
    quo = 0
    while a.bit_length() >= db:
        s = a.bit_length() - db
        quo |= 1 << s
        a ^= b << s
    return quo, a


def _xgcd2(a: int, b: int) -> tuple[int, int, int]:
    r0, s0, t0, r1, s1, t1 = a, 1, 0, b, 0, 1
    while r1:
        d1 = r1.bit_length()
        while r0.bit_length() >= d1:
            sh = r0.bit_length() - d1
            r0 ^= r1 << sh
            s0 ^= s1 << sh
            t0 ^= t1 << sh
        r0, r1, s0, s1, t0, t1 = r1, r0, s1, s0, t1, t0
    return r0, s0, t0


# -- generic prime-field kernels on residue tuples --------------------------


def _trim(c) -> tuple:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _mulq(a: tuple, b: tuple, q: int) -> tuple:
    if not a or not b:
        return ()
    if (q - 1) ** 2 * min(len(a), len(b)) < 2**62:
        prod = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return _trim((prod % q).tolist())
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % q for c in out])


def _conv(a, b, q):
    return np.convolve(a, b) % q


def _series_inverse(g, k: int, q: int):
    """Inverse of g modulo x^k (g[0] != 0), by Newton doubling."""
    h = np.array([pow(int(g[0]), -1, q)], dtype=np.int64)
    m = 1
    while m < k:
        m = min(2 * m, k)
        gh = _conv(g[:m], h, q)[:m]
        gh = (-gh) % q
        gh[0] = (gh[0] + 2) % q
        h = _conv(h, gh, q)[:m]
    return h


def _divremq(a: tuple, b: tuple, q: int) -> tuple[tuple, tuple]:
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return (), a
    k = da - db + 1
    if k > 24 and (q - 1) ** 2 * (da + 1) < 2**62:
        ra = np.asarray(a[::-1], dtype=np.int64)
        rb = np.asarray(b[::-1], dtype=np.int64)
        rq = _conv(ra[:k], _series_inverse(rb, k, q), q)[:k]
        quo = _trim(rq[::-1].tolist())
        qb = _conv(np.asarray(quo, dtype=np.int64), np.asarray(b, dtype=np.int64), q)
        rem = (np.asarray(a[:db], dtype=np.int64) - qb[:db]) % q
        return quo, _trim(rem.tolist())
    inv = pow(b[-1], -1, q)
    rem = list(a)
    quo = [0] * k
    for i in range(k - 1, -1, -1):
        c = rem[i + db] * inv % q
        if c:
            quo[i] = c
            for j, y in enumerate(b):
                rem[i + j] = (rem[i + j] - c * y) % q
    return _trim(quo), _trim(rem[:db])


class Poly:
    """Immutable polynomial over F_q.

    ``Poly([1, 0, 1])`` is 1 + x^2 over F_2; coefficients run from the
    constant term upward and are reduced mod q.
    """

    __slots__ = ("q", "_v")

    def __init__(self, coeffs=(), q: int = 2):
        if not _is_prime(q):
            raise ValueError(f"field size must be prime, got {q}")
        self.q = q
        if q == 2:
            v = 0
            for i, c in enumerate(coeffs):
                if c % 2:
                    v |= 1 << i
            self._v = v
        else:
            self._v = _trim([c % q for c in coeffs])

    @classmethod
    def _raw(cls, v, q: int) -> Poly:
        p = object.__new__(cls)
        p.q = q
        p._v = v
        return p

    @classmethod
    def from_int(cls, bits: int) -> Poly:
        """Binary polynomial whose bit i is the coefficient of x^i."""
        if bits < 0:
            raise ValueError("bit pattern must be nonnegative")
        return cls._raw(bits, 2)

    @classmethod
    def zero(cls, q: int = 2) -> Poly:
        return cls._raw(0 if q == 2 else (), q)

    @classmethod
    def one(cls, q: int = 2) -> Poly:
        return cls.monomial(0, 1, q)

    @classmethod
    def monomial(cls, k: int, c: int = 1, q: int = 2) -> Poly:
        if k < 0:
            raise ValueError("negative exponent")
        c %= q
        if q == 2:
            return cls._raw(c << k, 2)
        return cls._raw((0,) * k + (c,) if c else (), q)

    @classmethod
    def from_exponents(cls, exps, q: int = 2) -> Poly:
        if q == 2:
            v = 0
            for e in exps:
                v ^= 1 << e
            return cls._raw(v, 2)
        top = max(exps, default=-1)
        c = [0] * (top + 1)
        for e in exps:
            c[e] += 1
        return cls(c, q)

    # -- inspection --

    @property
    def bits(self) -> int:
        if self.q != 2:
            raise TypeError("packed bits exist only for q = 2")
        return self._v

    @property
    def degree(self):
        if self.q == 2:
            return self._v.bit_length() - 1 if self._v else NEG_INF
        return len(self._v) - 1 if self._v else NEG_INF

    @property
    def coeffs(self) -> tuple:
        if self.q == 2:
            v = self._v
            return tuple((v >> i) & 1 for i in range(v.bit_length()))
        return self._v

    def coeff(self, i: int) -> int:
        if i < 0:
            return 0
        if self.q == 2:
            return (self._v >> i) & 1
        return self._v[i] if i < len(self._v) else 0

    @property
    def lc(self) -> int:
        if not self:
            return 0
        return 1 if self.q == 2 else self._v[-1]

    def __bool__(self):
        return bool(self._v)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.q == other.q and self._v == other._v

    def __hash__(self):
        return hash((self.q, self._v))

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r}, q={self.q})"

    def __str__(self):
        if not self:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c != 1:
                mono = str(c) if i == 0 else f"{c}*{mono}"
            terms.append(mono)
        return " + ".join(terms)

    def __reduce__(self):
        return (Poly._raw, (self._v, self.q))

    # -- arithmetic --

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.q != self.q:
            raise FieldMismatchError(f"F_{self.q} vs F_{other.q}")

    def __add__(self, other):
        self._check(other)
        q = self.q
        if q == 2:
            return Poly._raw(self._v ^ other._v, 2)
        a, b = self._v, other._v
        if len(a) < len(b):
            a, b = b, a
        out = [(x + y) % q for x, y in zip(a, b)]
        out.extend(a[len(b):])
        return Poly._raw(_trim(out), q)

    def __neg__(self):
        if self.q == 2:
            return self
        return Poly._raw(tuple((-c) % self.q for c in self._v), self.q)

    def __sub__(self, other):
        self._check(other)
        q = self.q
        if q == 2:
            return Poly._raw(self._v ^ other._v, 2)
        a, b = self._v, other._v
        out = [(x - y) % q for x, y in zip(a, b)]
        if len(a) > len(b):
            out.extend(a[len(b):])
        else:
            out.extend((-y) % q for y in b[len(a):])
        return Poly._raw(_trim(out), q)

    def __mul__(self, other):
        self._check(other)
        if self.q == 2:
            return Poly._raw(_clmul(self._v, other._v), 2)
        return Poly._raw(_mulq(self._v, other._v, self.q), self.q)

    def __divmod__(self, other):
        self._check(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.q == 2:
            quo, rem = _divrem2(self._v, other._v)
            return Poly._raw(quo, 2), Poly._raw(rem, 2)
        quo, rem = _divremq(self._v, other._v, self.q)
        return Poly._raw(quo, self.q), Poly._raw(rem, self.q)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def shift(self, k: int) -> Poly:
        """Multiply by x^k (k >= 0)."""
        if self.q == 2:
            return Poly._raw(self._v << k, 2)
        return Poly._raw((0,) * k + self._v if self._v else (), self.q)

    def scale(self, c: int) -> Poly:
        c %= self.q
        if self.q == 2:
            return self if c else Poly.zero(2)
        if not c:
            return Poly.zero(self.q)
        return Poly._raw(tuple(x * c % self.q for x in self._v), self.q)

    def monic(self) -> Poly:
        if not self or self.lc == 1:
            return self
        return self.scale(pow(self.lc, -1, self.q))

    def weight(self) -> int:
        if self.q == 2:
            return bin(self._v).count("1")
        return sum(1 for c in self._v if c)

    def __call__(self, x: int) -> int:
        """Evaluate at an element of the prime field."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.q
        return acc


def add(f: Poly, g: Poly) -> Poly:
    return f + g


def mul(f: Poly, g: Poly) -> Poly:
    return f * g


def divrem(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    return divmod(f, g)


def xgcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(d, s, t)`` with ``d = s*f + t*g`` and ``d`` the monic gcd."""
    f._check(g)
    if not f and not g:
        raise ValueError("xgcd of two zero polynomials")
    q = f.q
    if q == 2:
        d, s, t = _xgcd2(f._v, g._v)
        return Poly._raw(d, 2), Poly._raw(s, 2), Poly._raw(t, 2)
    r0, s0, t0 = f, Poly.one(q), Poly.zero(q)
    r1, s1, t1 = g, Poly.zero(q), Poly.one(q)
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    u = pow(r0.lc, -1, q)
    return r0.scale(u), s0.scale(u), t0.scale(u)


def inv_mod(f: Poly, m: Poly) -> Poly | None:
    """Inverse of f modulo m, or None when gcd(f, m) != 1."""
    if m.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    f = f % m
    if not f:
        return None
    d, s, _ = xgcd(f, m)
    if d.degree != 0:
        return None
    return s % m


def weight(f: Poly) -> int:
    return f.weight()


def sample_sparse(r: int, v: int, rng, q: int = 2) -> Poly:
    """Uniform polynomial of degree < r with exactly v nonzero coefficients.

    The support is the first v slots of a partial Fisher-Yates shuffle of
    range(r); ``rng`` needs ``randrange`` (``random.Random`` works).
    """
    if not 0 < v <= r:
        raise ValueError(f"need 0 < v <= r, got v={v}, r={r}")
    pool = list(range(r))
    for i in range(v):
        j = rng.randrange(i, r)
        pool[i], pool[j] = pool[j], pool[i]
    support = pool[:v]
    if q == 2:
        return Poly.from_exponents(support)
    c = [0] * r
    for e in support:
        c[e] = rng.randrange(1, q)
    return Poly(c, q)


# -- text encodings ----------------------------------------------------------


def to_dense_hex(f: Poly) -> str:
    """Hex of the packed coefficient int; bit 0 of each nibble is its lowest term."""
    return format(f.bits, "x")


def from_dense_hex(s: str) -> Poly:
    s = s.strip().lower()
    return Poly.from_int(int(s, 16) if s else 0)


def to_sparse(f: Poly) -> str:
    if f.q == 2:
        v = f.bits
        return ",".join(str(i) for i in range(v.bit_length()) if (v >> i) & 1)
    return ",".join(f"{i}:{c}" for i, c in enumerate(f.coeffs) if c)


def from_sparse(s: str, q: int = 2) -> Poly:
    s = s.strip()
    if not s:
        return Poly.zero(q)
    parts = [p.strip() for p in s.split(",")]
    if q == 2:
        exps = [int(p) for p in parts]
        if any(b <= a for a, b in zip(exps, exps[1:])) or (exps and exps[0] < 0):
            raise ValueError(f"exponents must be strictly increasing and >= 0: {s!r}")
        return Poly.from_exponents(exps)
    pairs = [tuple(int(x) for x in p.split(":")) for p in parts]
    exps = [e for e, _ in pairs]
    if any(b <= a for a, b in zip(exps, exps[1:])) or exps[0] < 0:
        raise ValueError(f"exponents must be strictly increasing and >= 0: {s!r}")
    c = [0] * (exps[-1] + 1)
    for e, k in pairs:
        c[e] = k
    return Poly(c, q)


def encode_poly(f: Poly, encoding: str) -> str:
    if encoding == "dense":
        return to_dense_hex(f)
    if encoding == "sparse":
        return to_sparse(f)
    raise ValueError(f"unknown encoding {encoding!r}")


def decode_poly(s: str, encoding: str, q: int = 2) -> Poly:
    if encoding == "dense":
        if q != 2:
            raise ValueError("dense hex encoding is defined for q = 2 only")
        return from_dense_hex(s)
    if encoding == "sparse":
        return from_sparse(s, q)
    raise ValueError(f"unknown encoding {encoding!r}")
