#!/usr/bin/env python3
"""Census of the special matrix classes by exhaustive enumeration.

Counts feasible matrices of the asm/k-regular/pasm/higher-spin instances
for small orders, with wall times, and checks each matrix against the
class's direct definition.  The ASM column should read 1, 2, 7, 42, ...
"""

from __future__ import annotations

import argparse
import time

from pbm.asmkit import asm_instance, higher_spin_instance, k_regular_instance, pasm_instance
from pbm import oracle


def census(label: str, inst, predicate, budget) -> None:
    t0 = time.perf_counter()
    mats = oracle.enumerate_pbms(inst, budget)
    dt = time.perf_counter() - t0
    bad = sum(1 for mt in mats if not predicate(mt))
    flag = "" if bad == 0 else f"  <-- {bad} FAILED the direct definition"
    print(f"{label:24s} {len(mats):6d} matrices  {dt * 1000:8.1f} ms{flag}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=4, help="largest order to enumerate")
    args = parser.parse_args()

    budget = oracle.EnumerationBudget(max_cells=args.max_n * args.max_n, max_nodes=10**9)
    for n in range(1, args.max_n + 1):
        census(f"asm({n})", asm_instance(n), oracle.is_asm, budget)
    for n, k in [(2, 2), (3, 2), (3, 3)]:
        if n <= args.max_n:
            census(
                f"k_regular({n},{k})",
                k_regular_instance(n, k),
                lambda mt, k=k: oracle.is_k_regular_asm(mt, k),
                budget,
            )
    for m, n in [(2, 2), (2, 3)]:
        if max(m, n) <= args.max_n:
            census(f"pasm({m},{n})", pasm_instance(m, n), oracle.is_pasm, budget)
    for n, r in [(2, 2), (3, 2)]:
        if n <= args.max_n:
            census(
                f"higher_spin({n},{r})",
                higher_spin_instance(n, r),
                lambda mt, r=r: oracle.is_higher_spin(mt, r),
                budget,
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
