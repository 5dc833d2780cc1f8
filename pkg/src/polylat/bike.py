"""Toy BIKE keys and weak-key recovery through the public-key lattice.

For a public key h = h1/h2 in F_2[x]/(x^r - 1), every pair (f1, f2) with
f1 = h f2 mod x^r - 1 lies in the rank-2 lattice spanned by (x^r - 1, 0) and
(h, 1). Reducing that basis and trying small F_2[x]-combinations of the two
reduced rows recovers sparse pairs whenever the secret key has small degree.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .gfpoly import (
    NEG_INF,
    Poly,
    _is_prime,
    from_dense_hex,
    from_sparse,
    inv_mod,
    sample_sparse,
    to_dense_hex,
    to_sparse,
)
from .lattice import PolyBasis, contains
from .reduce import ReducedBasis, enumeration_budget, reduce


class ParamError(ValueError):
    pass


def _factor(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_primitive_two(r: int) -> bool:
    """True iff r is prime and 2 generates the multiplicative group mod r."""
    if r == 2 or not _is_prime(r):
        return False
    return all(pow(2, (r - 1) // p, r) != 1 for p in _factor(r - 1))


@dataclass(frozen=True)
class BikeParams:
    r: int
    v: int


def check_params(r: int, v: int) -> BikeParams:
    if not _is_prime(r):
        raise ParamError(f"r = {r} is not prime")
    if not is_primitive_two(r):
        raise ParamError(f"2 is not a primitive root mod {r}")
    if not 1 <= v <= r:
        raise ParamError(f"weight v = {v} out of range [1, {r}]")
    if v % 2 == 0:
        raise ParamError(f"weight v = {v} must be odd")
    return BikeParams(r, v)


def modulus(r: int) -> Poly:
    """x^r - 1 over F_2."""
    return Poly.from_int((1 << r) | 1)


def _fold(bits: int, r: int) -> int:
    mask = (1 << r) - 1
    while bits >> r:
        bits = (bits & mask) ^ (bits >> r)
    return bits


def reduce_mod(f: Poly, r: int) -> Poly:
    return Poly.from_int(_fold(f.bits, r))


@dataclass(frozen=True)
class BikeKeyPair:
    params: BikeParams
    h1: Poly
    h2: Poly
    h: Poly
    seed: str | None = None

    def to_dict(self, secret: bool = True) -> dict:
        d = {"r": self.params.r, "v": self.params.v, "h": to_dense_hex(self.h)}
        if secret:
            d["h1"] = to_sparse(self.h1)
            d["h2"] = to_sparse(self.h2)
        if self.seed is not None:
            d["seed"] = self.seed
        return d

    @classmethod
    def from_dict(cls, d: dict) -> BikeKeyPair:
        params = BikeParams(int(d["r"]), int(d["v"]))
        h1 = from_sparse(d["h1"]) if "h1" in d else None
        h2 = from_sparse(d["h2"]) if "h2" in d else None
        return cls(params, h1, h2, from_dense_hex(d["h"]), d.get("seed"))


def public_key(h1: Poly, h2: Poly, r: int) -> Poly | None:
    inv = inv_mod(h2, modulus(r))
    if inv is None:
        return None
    return reduce_mod(h1 * inv, r)


def keygen(params: BikeParams, rng, degree_cap=None, h2_one: bool = False,
           max_resample: int = 10_000, seed: str | None = None) -> BikeKeyPair:
    """Sample weight-v h1, h2 (h2 invertible) and h = h1/h2 mod x^r - 1.

    ``degree_cap`` restricts both halves to degree <= cap, which plants a
    weak key; ``h2_one`` forces h2 = 1 for debugging.
    """
    r, v = params.r, params.v
    span = r
    if degree_cap is not None:
        if degree_cap < v - 1:
            raise ParamError(f"degree cap {degree_cap} below minimum {v - 1} for weight {v}")
        span = min(r, degree_cap + 1)
    h1 = sample_sparse(span, v, rng)
    if h2_one:
        return BikeKeyPair(params, h1, Poly.one(), h1, seed)
    for _ in range(max_resample):
        h2 = sample_sparse(span, v, rng)
        h = public_key(h1, h2, r)
        if h is not None:
            return BikeKeyPair(params, h1, h2, h, seed)
    raise RuntimeError("resample budget exhausted: no invertible h2 found")


def bike_lattice(h: Poly, r: int) -> PolyBasis:
    """Basis rows (x^r - 1, 0) and (h, 1)."""
    if h.degree >= r:
        raise ValueError("public key must have degree < r")
    return PolyBasis([(modulus(r), Poly.zero()), (h, Poly.one())])


def verify(h: Poly, h1p: Poly, h2p: Poly, r: int, w_max: int) -> bool:
    m = modulus(r)
    if not h2p or h1p.weight() > w_max or h2p.weight() > w_max:
        return False
    if (h1p - h * h2p) % m:
        return False
    return inv_mod(h2p, m) is not None


@dataclass(frozen=True)
class AttackConfig:
    B: int = 1
    w_max: int | None = None  # None: use the key weight v where known
    budget: int | None = None

    def __post_init__(self):
        if self.B < 1:
            raise ValueError("brute-force bound B must be >= 1")
        if self.w_max is not None and self.w_max < 1:
            raise ValueError("w_max must be >= 1")


@dataclass
class AttackResult:
    found: tuple | None  # (h1', h2', mu1, mu2)
    pairs_tested: int
    reduced_norms: tuple
    budget_exhausted: bool = False
    reduced: ReducedBasis | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        d = {
            "found": self.found is not None,
            "pairs_tested": self.pairs_tested,
            "reduced_norms": list(self.reduced_norms),
            "budget_exhausted": self.budget_exhausted,
        }
        if self.found is not None:
            h1p, h2p, mu1, mu2 = self.found
            d.update(h1=to_sparse(h1p), h2=to_sparse(h2p), mu1=to_sparse(mu1), mu2=to_sparse(mu2))
        return d


def _multiples(a: int, B: int) -> list[int]:
    # table[mu] = mu * a for every mu of degree < B
    table = [0] * (1 << B)
    for mu in range(1, 1 << B):
        top = mu.bit_length() - 1
        table[mu] = table[mu ^ (1 << top)] ^ (a << top)
    return table


def candidate_order(B: int):
    """(mu1, mu2) as ints, graded by max degree, then by (mu2, mu1); (0, 0) skipped."""
    for m in range(B):
        hi = 1 << (m + 1)
        low = 1 << m
        for mu2 in range(hi):
            for mu1 in range(hi):
                if mu1 >= low or mu2 >= low:
                    yield mu1, mu2


def attack(h: Poly, r: int, cfg: AttackConfig, w_max: int | None = None) -> AttackResult:
    """Reduce the public-key lattice, then search small combinations of its rows."""
    w = cfg.w_max if cfg.w_max is not None else w_max
    if w is None:
        raise ValueError("no weight bound: set AttackConfig.w_max or pass w_max")
    budget = cfg.budget if cfg.budget is not None else enumeration_budget()
    red, _ = reduce(bike_lattice(h, r))
    (a1, a2), (b1, b2) = ((e.bits for e in row) for row in red.basis.rows)
    norms = tuple(red.norms())
    m = modulus(r)
    ta1, ta2 = _multiples(a1, cfg.B), _multiples(a2, cfg.B)
    tb1, tb2 = _multiples(b1, cfg.B), _multiples(b2, cfg.B)
    tested = 0
    for mu1, mu2 in candidate_order(cfg.B):
        if tested >= budget:
            return AttackResult(None, tested, norms, True, red)
        tested += 1
        f2 = _fold(ta2[mu1] ^ tb2[mu2], r)
        if not f2 or bin(f2).count("1") > w:
            continue
        f1 = _fold(ta1[mu1] ^ tb1[mu2], r)
        if bin(f1).count("1") > w:
            continue
        p2 = Poly.from_int(f2)
        if inv_mod(p2, m) is None:
            continue
        found = (Poly.from_int(f1), p2, Poly.from_int(mu1), Poly.from_int(mu2))
        return AttackResult(found, tested, norms, False, red)
    return AttackResult(None, tested, norms, False, red)


def key_coordinates(reduced: ReducedBasis, h1: Poly, h2: Poly):
    """Coordinates of the secret pair with respect to the reduced basis."""
    mu = contains(reduced.basis, (h1, h2))
    assert mu is not None, "secret pair must lie in the public-key lattice"
    return mu


def plant_weak_key(params: BikeParams, rng, mu_bound: int, degree_cap=None,
                   max_tries: int = 100_000) -> BikeKeyPair:
    """Rejection-sample a key whose reduced-basis coordinates have degree < mu_bound."""
    for _ in range(max_tries):
        key = keygen(params, rng, degree_cap)
        red, _ = reduce(bike_lattice(key.h, params.r))
        mu = key_coordinates(red, key.h1, key.h2)
        if all(x.degree < mu_bound for x in mu):
            return key
    raise RuntimeError(f"no key with coordinates of degree < {mu_bound} in {max_tries} draws")


# -- experiments -------------------------------------------------------------


def trial_rng(master_seed: int, index: int) -> random.Random:
    digest = hashlib.sha256(f"{master_seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _deg(p):
    d = p.degree
    return None if d is NEG_INF else d


@dataclass
class TrialRecord:
    trial: int
    success: bool
    verified: bool
    pairs_tested: int
    d1: int
    d2: int
    key_deg: int
    mu_deg1: int | None
    mu_deg2: int | None
    mu_fits: bool
    wall_ms: float | None = None


CSV_FIELDS = [f for f in TrialRecord.__dataclass_fields__]


@dataclass
class ExperimentReport:
    r: int
    v: int
    B: int
    w_max: int
    degree_cap: int | None
    plant_mu_bound: int | None
    master_seed: int
    records: list = field(default_factory=list)

    @property
    def trials(self) -> int:
        return len(self.records)

    def _frac(self, attr):
        if not self.records:
            return None
        return sum(1 for t in self.records if getattr(t, attr)) / len(self.records)

    @property
    def success_fraction(self):
        return self._frac("success")

    @property
    def fit_fraction(self):
        return self._frac("mu_fits")

    @property
    def mean_pairs_tested(self):
        if not self.records:
            return None
        return sum(t.pairs_tested for t in self.records) / len(self.records)

    @property
    def unsound(self) -> int:
        """Returned pairs that fail verification (should always be 0)."""
        return sum(1 for t in self.records if t.success and not t.verified)

    def summary(self) -> dict:
        return {
            "trials": self.trials,
            "success_fraction": self.success_fraction,
            "fit_fraction": self.fit_fraction,
            "mean_pairs_tested": self.mean_pairs_tested,
            "unsound": self.unsound,
        }

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in
             ("r", "v", "B", "w_max", "degree_cap", "plant_mu_bound", "master_seed")}
        d["summary"] = self.summary()
        d["records"] = [asdict(t) for t in self.records]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentReport:
        keys = ("r", "v", "B", "w_max", "degree_cap", "plant_mu_bound", "master_seed")
        rep = cls(**{k: d[k] for k in keys})
        rep.records = [TrialRecord(**t) for t in d["records"]]
        return rep

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for t in self.records:
            w.writerow(asdict(t))
        return buf.getvalue()


def run_trial(params: BikeParams, cfg: AttackConfig, degree_cap, plant_mu_bound,
              master_seed: int, index: int, timing: bool = False) -> TrialRecord:
    rng = trial_rng(master_seed, index)
    if plant_mu_bound is not None:
        key = plant_weak_key(params, rng, plant_mu_bound, degree_cap)
    else:
        key = keygen(params, rng, degree_cap)
    w = cfg.w_max if cfg.w_max is not None else params.v
    t0 = time.perf_counter()
    res = attack(key.h, params.r, cfg, w_max=w)
    wall = (time.perf_counter() - t0) * 1e3
    mu = key_coordinates(res.reduced, key.h1, key.h2)
    verified = res.found is not None and verify(key.h, res.found[0], res.found[1], params.r, w)
    return TrialRecord(
        trial=index,
        success=res.found is not None,
        verified=verified,
        pairs_tested=res.pairs_tested,
        d1=res.reduced_norms[0],
        d2=res.reduced_norms[1],
        key_deg=max(key.h1.degree, key.h2.degree),
        mu_deg1=_deg(mu[0]),
        mu_deg2=_deg(mu[1]),
        mu_fits=all(x.degree < cfg.B for x in mu),
        wall_ms=round(wall, 3) if timing else None,
    )


def _run_trial_args(args):
    return run_trial(*args)


def weak_key_experiment(params: BikeParams, trials: int, cfg: AttackConfig, degree_cap=None,
                        master_seed: int = 0, plant_mu_bound=None, workers: int = 1,
                        timing: bool = False) -> ExperimentReport:
    """Run keygen + attack per trial; each trial draws from its own seeded stream.

    The report depends only on the arguments, not on ``workers``; wall times
    are recorded only when ``timing`` is set.
    """
    w = cfg.w_max if cfg.w_max is not None else params.v
    rep = ExperimentReport(params.r, params.v, cfg.B, w, degree_cap, plant_mu_bound, master_seed)
    jobs = [(params, cfg, degree_cap, plant_mu_bound, master_seed, i, timing) for i in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rep.records = list(ex.map(_run_trial_args, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        rep.records = [run_trial(*j) for j in jobs]
    return rep
