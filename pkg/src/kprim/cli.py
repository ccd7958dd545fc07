"""Command-line entry point: ``kprim <subcommand>``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .analytic import Precision, erdos_constant, named_constants, solve_tau1
from .errors import KPrimError
from .exponents import schedule, verify_lemma_primeineq, verify_strong_base
from .lab import run_all
from .primes import (check_log_sum_sandwich, check_rs_theta_bounds, chebyshev_theta, nth_prime,
                     sieve)
from .primitivity import CandidateSet, is_primitive_under
from .report import MarginReport, Variant, check
from .search import bracket_tau, cgs_construct, max_weighted_sum
from . import verify as V

FORMATS = ("json", "csv", "md")
CLAIMS = ("primeineq", "primeineq2", "claim1", "claim2", "ibound", "asymptotic", "goal2",
          "ysmall", "monotone")
CLAIMS_FOR = {
    Variant.MAIN: ("primeineq", "primeineq2", "claim1", "claim2", "ibound", "asymptotic",
                   "ysmall", "monotone"),
    Variant.LCM: ("primeineq", "primeineq2", "claim1", "claim2", "ibound", "asymptotic",
                  "ysmall", "monotone"),
    Variant.STRONG: ("primeineq", "primeineq2", "goal2", "ysmall", "monotone"),
}
# default k ranges per claim; None means variant-dependent start
DEFAULT_RANGE = {
    "claim1": (None, None),
    "claim2": (None, 1000),
    "ibound": (None, 199),
    "asymptotic": (200, 1000),
    "goal2": (39, 1000),
}
PER_K = {"claim2", "ibound", "asymptotic", "goal2"}


@dataclass
class Config:
    sieve_limit: int = 10**6
    precision: Precision = field(default_factory=Precision)
    search_budget: int = 10**7
    output_format: str = "json"
    seed: int = 0
    jobs: int = 1

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        cfg = cls()
        if "KPRIM_SIEVE_LIMIT" in os.environ:
            cfg.sieve_limit = int(float(os.environ["KPRIM_SIEVE_LIMIT"]))
        if "KPRIM_JOBS" in os.environ:
            cfg.jobs = int(os.environ["KPRIM_JOBS"])
        for key, val in overrides.items():
            if val is not None:
                setattr(cfg, key, val)
        return cfg


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- output

def _envelope(params: dict, **body) -> dict:
    return {"tool_version": __version__, "params": params, **body}


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str) + "\n"


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for key, val in d.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            out.update(_flatten(val, name + "."))
        else:
            out[name] = val
    return out


def _rows_csv(rows: list[dict]) -> str:
    flat = [_flatten(r) for r in rows]
    cols: list[str] = []
    for r in flat:
        for c in r:
            if c not in cols:
                cols.append(c)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    w.writerows(flat)
    return buf.getvalue()


def _rows_md(rows: list[dict], cols: list[str] | None = None) -> str:
    if not rows:
        return "(no rows)\n"
    if cols is None:
        cols = []
        for r in rows:
            cols += [c for c in r if c not in cols]

    def fmt(v):
        return f"{v:.6g}" if isinstance(v, float) else str(v)

    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    lines += ["| " + " | ".join(fmt(r.get(c, "")) for c in cols) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def emit_reports(reports: list[MarginReport], params: dict, fmt: str, out) -> None:
    rows = [r.to_dict() for r in reports]
    if fmt == "json":
        out.write(_dump_json(_envelope(params, reports=rows)))
    elif fmt == "csv":
        out.write(_rows_csv(rows))
    else:
        cols = ["k", "variant", "claim", "relation", "lhs", "rhs", "margin", "passed"]
        out.write(_rows_md(rows, cols))


def emit_rows(rows: list[dict], params: dict, fmt: str, out, key="rows") -> None:
    if fmt == "json":
        out.write(_dump_json(_envelope(params, **{key: rows})))
    elif fmt == "csv":
        out.write(_rows_csv(rows))
    else:
        out.write(_rows_md(rows))


# ---------------------------------------------------------------- verify

def _per_k_chunk(args):
    claim, variant, k_from, k_to, limit = args
    t = sieve(limit)
    return _run_per_k(claim, variant, t, k_from, k_to)


def _run_per_k(claim, variant, t, k_from, k_to):
    if claim == "claim2":
        return V.claim2_check(t, variant, k_from, k_to)
    if claim == "ibound":
        return V.i_bound_check(t, variant, k_from, k_to)
    if claim == "asymptotic":
        return V.asymptotic_leg_check(t, variant, k_from, k_to)
    return V.strong_goal_check(t, k_from, k_to)


def _suite_report(name: str, summary: dict) -> MarginReport:
    n = len(summary.get("violations", summary.get("counterexamples", [])))
    terms = {k: v for k, v in summary.items()
             if isinstance(v, (int, float, str, bool)) and k != "passed"}
    return check(f"{name}_violations", n, "<=", 0, terms=terms, claim_ref=name)


def run_verify(variant: Variant, claims, k_from, k_to, cfg: Config, j_max=None):
    t = sieve(cfg.sieve_limit)
    reports: list[MarginReport] = []
    for claim in claims:
        if claim not in CLAIMS_FOR[variant]:
            raise UsageError(f"claim {claim!r} does not apply to variant {variant.value}")
        lo, hi = DEFAULT_RANGE.get(claim, (None, None))
        first = V.FIRST_K.get(variant, 2)
        a = k_from if k_from is not None else (lo if lo is not None else first)
        b = k_to if k_to is not None else (hi if hi is not None else a)
        if claim in PER_K:
            if cfg.jobs > 1 and b - a > 10:
                step = -(-(b - a + 1) // cfg.jobs)
                chunks = [(claim, variant, s, min(s + step - 1, b), cfg.sieve_limit)
                          for s in range(a, b + 1, step)]
                with ProcessPoolExecutor(cfg.jobs) as ex:
                    for part in ex.map(_per_k_chunk, chunks):
                        reports.extend(part)
            else:
                reports.extend(_run_per_k(claim, variant, t, a, b))
        elif claim == "claim1":
            for k in range(a, b + 1):
                reports.extend(V.claim1_check(t, k, j_max or k + 50, variant))
        elif claim == "primeineq":
            if variant is Variant.STRONG:
                reports.extend(verify_strong_base(t))
            else:
                kmax = k_to if k_to is not None else t.count_le(min(10**5, t.limit))
                reports.extend(verify_lemma_primeineq(t, kmax))
        elif claim == "primeineq2":
            xs = [x for x in (41, 10**2, 10**3, 10**4, 10**5) if x <= t.limit]
            reports.extend(check_rs_theta_bounds(t, xs))
            reports.extend(check_log_sum_sandwich(t, xs, [i / 10 for i in range(1, 10)]))
        elif claim == "ysmall":
            from .lab import ysmall_exhaustive
            reports.append(_suite_report("ysmall", ysmall_exhaustive()))
        elif claim == "monotone":
            reports.append(_suite_report(
                "monotone_exponent", V.monotone_exponent_property(10_000, cfg.seed or 1)))
    return reports


# ---------------------------------------------------------------- input

def read_set(text: str) -> list[int]:
    """JSON array of integers, or one integer per line (sniffed by first byte)."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        vals = json.loads(stripped)
    else:
        vals = [line.strip() for line in stripped.splitlines() if line.strip()]
    return [int(v) for v in vals]


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kprim",
        description="Critical exponents for k-primitive sets: predicates, searches and "
                    "finite verification of the supporting inequalities.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--sieve-limit", type=lambda s: int(float(s)), default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=None)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("sieve", parents=[common],
                       help="sieve primes; report pi(x), p_k, theta(x)")
    s.add_argument("--nth", type=int, action="append", default=[], help="report p_k")
    s.add_argument("--theta", type=float, action="append", default=[],
                   help="report theta(x) = sum_{p<=x} log p")

    s = sub.add_parser("constants", parents=[common],
                       help="tau_1 (root of sum p^-t = 1 + sqrt(1 - sum p^-2t)), "
                            "sum 1/(p log p), e^gamma, tau_2 interval")
    s.add_argument("--tau1", action="store_true")
    s.add_argument("--erdos", action="store_true", help="sum over primes of 1/(p log p)")

    s = sub.add_parser("exponents", parents=[common],
                       help="exponent schedules lam_k, theta_k, nu_k with bound margins "
                            "(2.625 prod(1-1/p), 3 prod(1-1/p), 3 log k / k)")
    s.add_argument("--variant", choices=[v.value for v in Variant], default="main")
    s.add_argument("--k-from", type=int, default=1)
    s.add_argument("--k-to", type=int, default=50)

    s = sub.add_parser("check", parents=[common],
                       help="decide k-primitivity: no member divides a product (or lcm) of "
                            "up to k other members")
    s.add_argument("values", nargs="*", type=int)
    s.add_argument("--input", help="file with a JSON array or one integer per line; - for stdin")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--notion", choices=("k", "strong", "lcm"), default="k")
    s.add_argument("--exact-j", action="store_true",
                   help="forbid only products of exactly k members")
    s.add_argument("--mode", choices=("exact", "refute"), default="exact")
    s.add_argument("--cap", type=int, default=64)

    s = sub.add_parser("lemma-lab", parents=[common],
                       help="seeded property suites: block splits, derived maps, smooth "
                            "counts, small prime support, monotone exponents")
    s.add_argument("--trials", type=int, default=500)

    s = sub.add_parser("search", parents=[common],
                       help="exact max of sum n^-lam over primitive subsets of [2..N]")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--lam", type=float, default=1.2)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--variant", choices=[v.value for v in Variant], default="main")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--bracket", action="store_true",
                   help="bracket the finite-N critical exponent instead")
    s.add_argument("--tol", type=float, default=1e-3)

    s = sub.add_parser("construct-cgs", parents=[common],
                       help="primes above x^(1/(k+1)) plus products of k+1 small primes")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--lam", type=float, action="append", default=None)
    s.add_argument("--notion", choices=("k", "strong"), default="k")

    s = sub.add_parser("verify", parents=[common],
                       help="finite inequality checks; exit 0 iff all selected pass")
    s.add_argument("--variant", choices=[v.value for v in Variant], default="main")
    s.add_argument("--claims", action="append", default=None,
                   help="comma-separated subset of " + ",".join(CLAIMS))
    s.add_argument("--k-from", type=int, default=None)
    s.add_argument("--k-to", type=int, default=None)
    s.add_argument("--j-max", type=int, default=None, help="claim1: last j index")
    return p


def _cfg(args) -> Config:
    return Config.from_env(sieve_limit=args.sieve_limit, output_format=args.format,
                           seed=args.seed, jobs=args.jobs)


def _dispatch(args, out) -> int:
    cfg = _cfg(args)
    fmt = cfg.output_format
    if args.cmd == "sieve":
        t = sieve(cfg.sieve_limit)
        rows = [{"limit": t.limit, "count": len(t), "largest": int(t.primes[-1])}]
        rows += [{"k": k, "p_k": nth_prime(t, k)} for k in args.nth]
        rows += [{"x": x, "theta": chebyshev_theta(t, x)} for x in args.theta]
        emit_rows(rows, {"sieve_limit": cfg.sieve_limit}, fmt, out)
        return 0
    if args.cmd == "constants":
        res = dict(named_constants())
        both = not (args.tau1 or args.erdos)
        if args.tau1 or both:
            res["tau1"] = solve_tau1(cfg.precision)
        if args.erdos or both:
            res["erdos_constant"] = erdos_constant(cfg.precision)
        emit_rows([res], {}, fmt, out, key="constants") if fmt != "json" else \
            out.write(_dump_json(_envelope({}, constants=res)))
        return 0
    if args.cmd == "exponents":
        t = sieve(cfg.sieve_limit)
        v = Variant(args.variant)
        sched = schedule(v, t)
        rows = []
        for k in range(max(args.k_from, 2 if v is Variant.STRONG else 1), args.k_to + 1):
            row = sched.row(k)
            if v is not Variant.STRONG:
                import math
                lp = math.log(row["p_k"])
                hi, lo = (1.5, 1.45) if v is Variant.MAIN else (1.7, 1.65)
                row["upper_margin"] = hi / lp - row["lam"]
                row["lower_margin"] = row["lam"] - lo / lp
            rows.append(row)
        emit_rows(rows, {"variant": v.value, "k_from": args.k_from, "k_to": args.k_to},
                  fmt, out)
        return 0
    if args.cmd == "check":
        vals = list(args.values)
        if args.input:
            text = sys.stdin.read() if args.input == "-" else open(args.input).read()
            vals += read_set(text)
        if not vals:
            raise UsageError("no input set given")
        A = CandidateSet.of(vals)
        res = is_primitive_under(args.notion, A, args.k, cap=args.cap,
                                 mode=args.mode, seed=cfg.seed,
                                 **({"exact_j": True} if args.exact_j else {}))
        out.write(_dump_json(res.as_dict()))
        return 0 if res.result else 1
    if args.cmd == "lemma-lab":
        summary = run_all(cfg.seed, args.trials)
        out.write(_dump_json(_envelope({"seed": cfg.seed, "trials": args.trials}, **summary)))
        return 0 if summary["passed"] else 1
    if args.cmd == "search":
        budget = args.budget or cfg.search_budget
        params = {"N": args.N, "lam": args.lam, "k": args.k, "variant": args.variant,
                  "budget": budget}
        if args.bracket:
            lo, hi = bracket_tau(args.N, args.k, args.variant, args.tol, budget=budget)
            out.write(_dump_json(_envelope({**params, "tol": args.tol}, interval=[lo, hi])))
            return 0
        res = max_weighted_sum(args.N, args.lam, args.k, args.variant, budget)
        out.write(_dump_json(res.as_dict()))
        return 0
    if args.cmd == "construct-cgs":
        t = sieve(max(cfg.sieve_limit, args.x))
        lams = tuple(args.lam or [0.5])
        _, report = cgs_construct(args.x, args.k, t, lams, args.notion)
        out.write(_dump_json(_envelope({"x": args.x, "k": args.k, "lams": list(lams)},
                                       report=report)))
        return 0
    if args.cmd == "verify":
        v = Variant(args.variant)
        if args.claims:
            claims = [c for arg in args.claims for c in arg.split(",") if c]
        else:
            claims = list(CLAIMS_FOR[v])
        bad = [c for c in claims if c not in CLAIMS]
        if bad:
            raise UsageError(f"unknown claims {bad}; choose from {','.join(CLAIMS)}")
        reports = run_verify(v, claims, args.k_from, args.k_to, cfg, args.j_max)
        params = {"variant": v.value, "claims": claims, "k_from": args.k_from,
                  "k_to": args.k_to, "sieve_limit": cfg.sieve_limit}
        emit_reports(reports, params, fmt, out)
        return 0 if all(r.passed is not False for r in reports) else 1
    raise UsageError(f"unknown command {args.cmd}")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _dispatch(args, out)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"kprim: error: {e}", file=sys.stderr)
        return 2
    except KPrimError as e:
        print(f"kprim: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
