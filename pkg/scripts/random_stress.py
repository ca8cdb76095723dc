#!/usr/bin/env python3
"""Stress the solver against the enumeration oracle on random instances.

Draws random instances (independent windows by default, or windows widened
around a hidden matrix with --feasible-bias), solves each, enumerates the
full feasible set, and checks that the verdicts and any produced matrix
agree.  Prints a running tally and per-verdict timing.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from pbm.core import NEG_INF, POS_INF, PbmInstance, fin
from pbm.feasibility import solve
from pbm import oracle


def random_instance(rng: random.Random, m: int, n: int, inf_rate: float) -> PbmInstance:
    def window():
        lo = NEG_INF if rng.random() < inf_rate else fin(rng.randint(-3, 3))
        base = lo.value if lo.is_finite else -3
        hi = POS_INF if rng.random() < inf_rate else fin(rng.randint(max(base, -3), 3))
        return lo, hi

    phi1, gamma1, phi2, gamma2, f, g = ([[None] * n for _ in range(m)] for _ in range(6))
    for i in range(m):
        for j in range(n):
            phi1[i][j], gamma1[i][j] = window()
            phi2[i][j], gamma2[i][j] = window()
            a = rng.randint(-2, 2)
            f[i][j], g[i][j] = fin(a), fin(rng.randint(a, 2))
    return PbmInstance.create(m, n, phi1, gamma1, phi2, gamma2, f, g)


def biased_instance(rng: random.Random, m: int, n: int, inf_rate: float) -> PbmInstance:
    hidden = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
    phi1, gamma1, phi2, gamma2, f, g = ([[None] * n for _ in range(m)] for _ in range(6))
    for i in range(m):
        for j in range(n):
            h = sum(hidden[i][: j + 1])
            v = sum(hidden[r][j] for r in range(i + 1))
            phi1[i][j] = NEG_INF if rng.random() < inf_rate else fin(h - rng.randint(0, 2))
            gamma1[i][j] = POS_INF if rng.random() < inf_rate else fin(h + rng.randint(0, 2))
            phi2[i][j] = NEG_INF if rng.random() < inf_rate else fin(v - rng.randint(0, 2))
            gamma2[i][j] = POS_INF if rng.random() < inf_rate else fin(v + rng.randint(0, 2))
            f[i][j] = fin(hidden[i][j] - rng.randint(0, 1))
            g[i][j] = fin(hidden[i][j] + rng.randint(0, 1))
    return PbmInstance.create(m, n, phi1, gamma1, phi2, gamma2, f, g)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=500, help="instances to test")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-dim", type=int, default=3, help="rows/cols drawn from 1..max-dim")
    parser.add_argument("--inf-rate", type=float, default=0.25, help="chance a window side is infinite")
    parser.add_argument(
        "--feasible-bias",
        action="store_true",
        help="widen windows around a hidden matrix instead of drawing them independently",
    )
    args = parser.parse_args()

    rng = random.Random(args.seed)
    feasible = infeasible = 0
    t_solve = t_oracle = 0.0
    for trial in range(args.count):
        m, n = rng.randint(1, args.max_dim), rng.randint(1, args.max_dim)
        make = biased_instance if args.feasible_bias else random_instance
        inst = make(rng, m, n, args.inf_rate)

        t0 = time.perf_counter()
        res = solve(inst)
        t_solve += time.perf_counter() - t0

        t0 = time.perf_counter()
        mats = oracle.enumerate_pbms(inst)
        t_oracle += time.perf_counter() - t0

        if res.is_feasible != bool(mats):
            print(f"DISAGREEMENT at trial {trial}: solver={res.is_feasible} oracle={len(mats)}")
            return 1
        if res.is_feasible:
            if res.matrix not in mats:
                print(f"DISAGREEMENT at trial {trial}: solver matrix not in oracle list")
                return 1
            feasible += 1
        else:
            cert = res.certificate
            if not cert.lhs > cert.rhs:
                print(f"BAD CERTIFICATE at trial {trial}: {cert.lhs} <= {cert.rhs}")
                return 1
            infeasible += 1
        if (trial + 1) % 100 == 0:
            print(f"  {trial + 1}/{args.count} checked...", file=sys.stderr)

    print(
        f"{args.count} instances agree: {feasible} feasible, {infeasible} infeasible\n"
        f"solver {t_solve:.2f}s total, oracle {t_oracle:.2f}s total"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
