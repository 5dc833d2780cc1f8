"""Command-line interface.

Exit codes: 0 success or found, 1 clean not-found, 2 invalid input,
3 internal contract violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import statistics
import sys
import time

from .bike import (
    AttackConfig,
    BikeKeyPair,
    attack,
    bike_lattice,
    check_params,
    keygen,
    trial_rng,
    verify,
    weak_key_experiment,
)
from .gfpoly import decode_poly, encode_poly, from_dense_hex
from .lattice import InvalidBasisError, PolyBasis, covol, od
from .qary import QaryInstance, covol_bound_check, qary_basis
from .reduce import BudgetExceededError, reduce
from .thue import ThueInstance, thue_solve

EXIT_OK, EXIT_NOT_FOUND, EXIT_INVALID, EXIT_CONTRACT = 0, 1, 2, 3


class _Usage(Exception):
    pass


def default_weight(r: int) -> int:
    """Odd weight near sqrt(r)."""
    v = max(1, math.isqrt(r))
    return v if v % 2 else v + 1


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


# -- subcommands -------------------------------------------------------------


def cmd_keygen(args) -> int:
    params = check_params(args.r, args.v)
    rng = random.Random(args.seed)
    key = keygen(params, rng, degree_cap=args.degree_cap, h2_one=args.h2_one, seed=str(args.seed))
    d = key.to_dict()
    if args.degree_cap is not None:
        d["degree_cap"] = args.degree_cap
    _emit(json.dumps(d, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_attack(args) -> int:
    if args.key:
        d = _load_json(args.key)
        r, v = int(d["r"]), int(d["v"])
        h = from_dense_hex(d["h"])
        seed = d.get("seed")
    elif args.pubkey and args.r:
        r, v, seed = args.r, args.v, None
        h = from_dense_hex(args.pubkey)
    else:
        raise _Usage("give --key FILE, or --pubkey HEX with --r")
    w_max = args.w_max if args.w_max is not None else v
    if w_max is None:
        raise _Usage("--w-max is required when the weight v is unknown")
    cfg = AttackConfig(B=args.B, w_max=w_max, budget=args.budget)
    res = attack(h, r, cfg)
    out = {"r": r, "v": v, "B": args.B, "w_max": w_max, "seed": seed}
    out.update(res.to_dict())
    if res.found is not None:
        h1p, h2p = res.found[0], res.found[1]
        if not verify(h, h1p, h2p, r, w_max):
            print("internal error: returned pair fails verification", file=sys.stderr)
            return EXIT_CONTRACT
        out["verified"] = True
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK if res.found is not None else EXIT_NOT_FOUND


def _load_basis(path: str) -> PolyBasis:
    return PolyBasis.from_dict(_load_json(path))


def cmd_reduce(args) -> int:
    B = _load_basis(args.basis)
    red, stats = reduce(B)
    enc = "dense" if B.q == 2 else "sparse"
    d = red.basis.to_dict(enc)
    d["transform"] = [[encode_poly(e, enc) for e in row] for row in red.transform]
    d["stats"] = {"steps": stats.steps, "initial_od": stats.initial_od,
                  "arithmetic_ops": stats.arithmetic_ops}
    d["minima"] = red.norms()
    d["covol"] = covol(red.basis)
    d["od"] = od(red.basis)
    _emit(json.dumps(d, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_shortest(args) -> int:
    B = _load_basis(args.basis)
    red, _ = reduce(B)
    vec = red.basis.rows[0]
    enc = "dense" if B.q == 2 else "sparse"
    out = {"q": B.q, "encoding": enc, "vector": [encode_poly(e, enc) for e in vec],
           "norm": red.norms()[0], "covol": covol(B)}
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_experiment(args) -> int:
    params = check_params(args.r, args.v)
    cfg = AttackConfig(B=args.B, w_max=args.w_max)
    rep = weak_key_experiment(params, args.trials, cfg, degree_cap=args.degree_cap,
                              master_seed=args.seed, plant_mu_bound=args.plant_mu_bound,
                              workers=args.workers, timing=args.timing)
    if args.json:
        _emit(rep.to_json() + "\n", args.json)
    if args.csv:
        _emit(rep.to_csv(), args.csv)
    print(json.dumps({"seed": args.seed, "r": args.r, "v": args.v, **rep.summary()}))
    return EXIT_CONTRACT if rep.unsound else EXIT_OK


BENCH_FIELDS = ["r", "v", "reps", "median_ms", "ratio"]


def run_bench(rs, reps: int = 5, seed: int = 0) -> list[dict]:
    """Median wall time of reduce on ``reps`` random public keys per r."""
    rows = []
    prev = None
    for r in rs:
        params = check_params(r, default_weight(r))
        times = []
        for i in range(reps):
            key = keygen(params, trial_rng(seed, r * 100_000 + i))
            B = bike_lattice(key.h, r)
            t0 = time.perf_counter()
            reduce(B)
            times.append((time.perf_counter() - t0) * 1e3)
        med = statistics.median(times)
        rows.append({"r": r, "v": params.v, "reps": reps, "median_ms": round(med, 4),
                     "ratio": round(med / prev, 3) if prev else None})
        prev = med
    return rows


def cmd_bench(args) -> int:
    rs = [int(x) for x in args.r.split(",")]
    rows = run_bench(rs, args.reps, args.seed)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_thue(args) -> int:
    inst = ThueInstance(args.gamma, args.b, args.a_star, args.t_star)
    sol = thue_solve(inst)
    out = {"gamma": inst.gamma, "b": inst.b, "a_star": inst.a_star, "t_star": inst.t_star,
           "a": sol.a, "t": sol.t}
    _emit(json.dumps(out) + "\n", args.out)
    return EXIT_OK


def cmd_qary_check(args) -> int:
    d = _load_json(args.matrix)
    q = int(d.get("q", 2))
    enc = d.get("encoding", "sparse")
    A = [[decode_poly(s, enc, q) for s in row] for row in d["rows"]]
    g = decode_poly(args.g, args.g_encoding, q)
    inst = QaryInstance(A, g)
    c, bound = covol_bound_check(inst)
    basis = qary_basis(inst)
    out = {"q": q, "k": inst.k, "n": inst.n, "covol": c, "bound": bound, "holds": c <= bound,
           "basis": basis.to_dict("sparse")}
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polylat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("keygen", help="generate a toy BIKE key pair")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--degree-cap", type=int)
    s.add_argument("--h2-one", action="store_true", help="debug: force h2 = 1")
    s.add_argument("--out")
    s.set_defaults(func=cmd_keygen)

    s = sub.add_parser("attack", help="weak-key recovery from a public key")
    s.add_argument("--key", help="key JSON file (only r, v, h are used)")
    s.add_argument("--pubkey", help="public key as dense hex")
    s.add_argument("--r", type=int)
    s.add_argument("--v", type=int)
    s.add_argument("--B", type=int, default=1)
    s.add_argument("--w-max", type=int)
    s.add_argument("--budget", type=int, help="max candidate pairs (default POLYLAT_BUDGET)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_attack)

    for name, fn, text in (("reduce", cmd_reduce, "reduce a basis file"),
                           ("shortest", cmd_shortest, "shortest vector of a basis file")):
        s = sub.add_parser(name, help=text)
        s.add_argument("--basis", required=True)
        s.add_argument("--out")
        s.set_defaults(func=fn)

    s = sub.add_parser("experiment", help="Monte Carlo weak-key experiment")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--B", type=int, default=1)
    s.add_argument("--w-max", type=int)
    s.add_argument("--degree-cap", type=int)
    s.add_argument("--plant-mu-bound", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--timing", action="store_true", help="record wall times (not reproducible)")
    s.add_argument("--json")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("bench", help="time reduce on public-key lattices")
    s.add_argument("--r", required=True, help="comma-separated list of primes")
    s.add_argument("--reps", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("thue", help="solve a = b t mod gamma with small a, t")
    s.add_argument("--gamma", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--a-star", type=int, required=True)
    s.add_argument("--t-star", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_thue)

    s = sub.add_parser("qary-check", help="covolume bound for {a : A a = 0 mod g}")
    s.add_argument("--matrix", required=True, help="JSON with q, rows, encoding")
    s.add_argument("--g", required=True)
    s.add_argument("--g-encoding", default="sparse", choices=["sparse", "dense"])
    s.add_argument("--out")
    s.set_defaults(func=cmd_qary_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, InvalidBasisError, _Usage, KeyError, OSError,
            json.JSONDecodeError, BudgetExceededError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except AssertionError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
