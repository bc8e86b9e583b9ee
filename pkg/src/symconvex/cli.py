"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 inequality violation beyond
tolerance, 3 solver non-convergence.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import flow as flow_mod
from .body import DEFAULT_N, InvalidBodyError, random_symmetric_body, validate
from .functionals import (area, cone_volume_density, curvature,
                          curvature_entropy, perimeter)
from .inequalities import (TOL_EQ, TOL_GAP, all_reports, entropy_corollary,
                           log_minkowski_entropy, uniqueness_witness)
from .solver import SolverOptions, solve_log_minkowski, uniqueness_probe
from .specio import (SpecError, body_from_spec, density_to_csv, dumps,
                     load_density, load_json)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_NONCONVERGED = 0, 1, 2, 3

# sum form of the Cauchy-Schwarz chain, tracked as its own row in sweeps
SUM_FORM = "cauchy_schwarz_sum"


@dataclass
class InequalityStats:
    min_gap: float = math.inf
    min_rel_gap: float = math.inf
    argmin_seed: int | None = None
    violations: int = 0
    equality_cases: int = 0

    def update(self, seed, gap, rel_gap, equality, tol_gap):
        if rel_gap < self.min_rel_gap:
            self.min_rel_gap = rel_gap
            self.argmin_seed = seed
        self.min_gap = min(self.min_gap, gap)
        self.violations += rel_gap < -tol_gap
        self.equality_cases += bool(equality)

    def to_dict(self) -> dict:
        return {
            "min_gap": self.min_gap,
            "min_rel_gap": self.min_rel_gap,
            "argmin_seed": self.argmin_seed,
            "violations": self.violations,
            "equality_cases": self.equality_cases,
        }


@dataclass
class BatchSummary:
    seeds: tuple[int, int]
    pairs: int
    stats: dict[str, InequalityStats] = field(default_factory=dict)

    @property
    def violations(self) -> int:
        return sum(s.violations for s in self.stats.values())

    def to_dict(self) -> dict:
        return {
            "seed_first": self.seeds[0],
            "seed_last": self.seeds[1],
            "pairs": self.pairs,
            "violations": self.violations,
            "inequalities": {k: v.to_dict() for k, v in self.stats.items()},
        }


def pair_for_seed(seed: int, k_max: int = 8, decay: float = 2.5, n: int = DEFAULT_N):
    """Random pair for one sweep seed; bodies use seeds ``2s - 1`` and ``2s``."""
    return (random_symmetric_body(2 * seed - 1, k_max, decay, n),
            random_symmetric_body(2 * seed, k_max, decay, n))


def _pair_rows(args):
    seed, k_max, decay, n, tol_eq = args
    K, L = pair_for_seed(seed, k_max, decay, n)
    rows = []
    for r in all_reports(K, L, tol_eq):
        rows.append((r.name, r.gap, r.rel_gap, r.equality))
        if r.name == "cauchy_schwarz_chain":
            d = r.details
            rows.append((SUM_FORM, d["sum_gap"], d["sum_rel_gap"], abs(d["sum_rel_gap"]) < tol_eq))
    return seed, rows


def search(first: int, last: int, k_max: int = 8, decay: float = 2.5, n: int = DEFAULT_N,
           tol_gap: float = TOL_GAP, tol_eq: float = TOL_EQ, jobs: int = 1) -> BatchSummary:
    """Run every verifier on the random pairs for seeds ``first..last``."""
    if last < first:
        raise ValueError(f"empty seed range {first}..{last}")
    tasks = [(s, k_max, decay, n, tol_eq) for s in range(first, last + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_pair_rows, tasks, chunksize=32))
    else:
        results = [_pair_rows(t) for t in tasks]
    summary = BatchSummary((first, last), len(tasks))
    for seed, rows in results:
        for name, gap, rel_gap, eq in rows:
            summary.stats.setdefault(name, InequalityStats()).update(seed, gap, rel_gap, eq, tol_gap)
    return summary


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_body(path, n):
    spec = load_json(path)
    if n is not None:
        return body_from_spec(spec, n)
    return body_from_spec(spec)


def cmd_describe(args) -> int:
    K = _load_body(args.body, args.n)
    kappa = curvature(K)
    report = {
        "n": K.n,
        "S": perimeter(K),
        "V": area(K),
        "kappa_min": float(np.min(kappa)),
        "kappa_max": float(np.max(kappa)),
        "validation": validate(K).to_dict(),
    }
    if args.density_out:
        Path(args.density_out).write_text(density_to_csv(cone_volume_density(K)))
    _write(dumps(report), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    K = _load_body(args.body, args.n)
    L = _load_body(args.reference, args.n)
    reports = all_reports(K, L, args.tol_eq)
    _write(dumps([r.to_dict() for r in reports]), args.out)
    ok = all(r.holds(args.tol_gap) for r in reports)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_entropy(args) -> int:
    K = _load_body(args.body, args.n)
    L = _load_body(args.reference, args.n)
    lm = log_minkowski_entropy(K, L, args.tol_eq)
    cor = entropy_corollary(K, args.tol_eq)
    report = {
        "curvature_entropy_KL": curvature_entropy(K, L),
        "curvature_entropy_LK": curvature_entropy(L, K),
        "log_minkowski_entropy": lm.to_dict(),
        "entropy_corollary": cor.to_dict(),
        "uniqueness_witness": uniqueness_witness(K, L, args.tol_eq).to_dict(),
    }
    _write(dumps(report), args.out)
    ok = lm.holds(args.tol_gap) and cor.holds(args.tol_gap)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_flow(args) -> int:
    K = _load_body(args.body, args.n)
    L = _load_body(args.reference, args.n)
    if not args.lambda_max > 0.01:
        raise ValueError("--lambda-max must exceed 0.01")
    lambdas = np.concatenate([[0.0], np.logspace(-2.0, math.log10(args.lambda_max),
                                                 args.points - 1)])
    tr = flow_mod.trace(K, L, lambdas)
    _write(tr.to_csv(), args.out)
    ok = tr.nonincreasing and tr.nonnegative and tr.derivative_nonpositive
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_solve(args) -> int:
    f = load_density(args.density)
    opts = SolverOptions(max_iters=args.max_iters)
    result = solve_log_minkowski(f, opts)
    report = result.to_dict()
    if args.starts > 1 and result.converged:
        report["uniqueness_probe"] = uniqueness_probe(f, args.starts, seed=args.seed,
                                                      opts=opts).to_dict()
    _write(dumps(report), args.out)
    return EXIT_OK if result.converged else EXIT_NONCONVERGED


def cmd_search(args) -> int:
    if args.count < 1:
        raise ValueError("--count must be at least 1")
    summary = search(args.seed, args.seed + args.count - 1, args.k_max, args.decay,
                     args.n or DEFAULT_N, args.tol_gap, args.tol_eq, args.jobs)
    _write(dumps(summary.to_dict()), args.out)
    return EXIT_OK if summary.violations == 0 else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="grid size (default: spec or 256)")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--tol-gap", type=float, default=TOL_GAP)
    common.add_argument("--tol-eq", type=float, default=TOL_EQ)

    parser = argparse.ArgumentParser(prog="symconvex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", parents=[common], help="perimeter, area, curvature range")
    p.add_argument("body", help="body spec JSON path, or - for stdin")
    p.add_argument("--density-out", default=None, help="write the cone-volume density CSV")
    p.set_defaults(func=cmd_describe)

    for name, func, help_ in (("verify", cmd_verify, "run every inequality verifier"),
                              ("entropy", cmd_entropy, "entropy functionals of a pair")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("body")
        p.add_argument("reference")
        p.set_defaults(func=func)

    p = sub.add_parser("flow", parents=[common], help="trace F along K + lambda L as CSV")
    p.add_argument("body")
    p.add_argument("reference")
    p.add_argument("--lambda-max", type=float, default=50.0)
    p.add_argument("--points", type=int, default=101)
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("solve", parents=[common], help="recover a body from its cone-volume density")
    p.add_argument("density", help="CSV (theta,value) or JSON {n, values}")
    p.add_argument("--max-iters", type=int, default=50)
    p.add_argument("--starts", type=int, default=1, help="run a uniqueness probe with this many starts")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("search", parents=[common], help="random sweep of all verifiers")
    p.add_argument("--seed", type=int, default=1, help="first seed")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--decay", type=float, default=2.5)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, InvalidBodyError, ValueError, OSError) as exc:
        print(f"symconvex {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
