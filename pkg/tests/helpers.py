"""Shared random-instance generators for the test suite.

Three flavors:

* random_instance: independent windows, mostly infeasible (good for
  certificate coverage);
* feasible_random: windows widened around the prefix sums of a hidden
  matrix, feasible by construction;
* finite_random: like random_instance but every bound finite, so the
  per-orientation enumeration oracles apply.
"""

from __future__ import annotations

import random

from pbm.core import NEG_INF, POS_INF, PbmInstance, fin


def random_instance(rng: random.Random, m: int, n: int, inf_rate: float = 0.25) -> PbmInstance:
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
    alpha = NEG_INF if rng.random() < 0.6 else fin(rng.randint(-6, 6))
    hi_floor = alpha.value if alpha.is_finite else -6
    beta = POS_INF if rng.random() < 0.6 else fin(rng.randint(hi_floor, 8))
    return PbmInstance.create(m, n, phi1, gamma1, phi2, gamma2, f, g, alpha, beta)


def feasible_random(rng: random.Random, m: int, n: int, inf_rate: float = 0.3) -> PbmInstance:
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


def finite_random(rng: random.Random, m: int, n: int) -> PbmInstance:
    phi1, gamma1, phi2, gamma2, f, g = ([[None] * n for _ in range(m)] for _ in range(6))
    for i in range(m):
        for j in range(n):
            a = rng.randint(-3, 2)
            phi1[i][j], gamma1[i][j] = fin(a), fin(rng.randint(a, 3))
            a = rng.randint(-3, 2)
            phi2[i][j], gamma2[i][j] = fin(a), fin(rng.randint(a, 3))
            a = rng.randint(-2, 1)
            f[i][j], g[i][j] = fin(a), fin(rng.randint(a, 2))
    return PbmInstance.create(m, n, phi1, gamma1, phi2, gamma2, f, g)
