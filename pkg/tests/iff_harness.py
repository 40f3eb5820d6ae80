"""Shared generators for the cocycle / extension equivalence checks."""
import itertools
import random

from fquandle.core import validate
from fquandle.extensions import (
    DynamicalCocycle, ModuleData, build_extension, check_dynamical_cocycle, extension_structure_map,
)


def random_cocycle(rng: random.Random, n: int, k: int) -> DynamicalCocycle:
    """One of three shapes: arbitrary tables, fiberwise permutations, or affine maps mod k."""
    g = [rng.randrange(k) for _ in range(k)]
    kind = rng.randrange(3)
    if kind == 0:
        return DynamicalCocycle.build(n, k, lambda x, y, a, b: rng.randrange(k), g)
    if kind == 1:
        perms = {(x, y, b): rng.sample(range(k), k) for x in range(n) for y in range(n) for b in range(k)}
        if rng.random() < 0.5:
            g = list(range(k))
            for x in range(n):
                for a in range(k):
                    # force alpha_xx(a, a) = g(a) where possible
                    p = perms[(x, x, a)]
                    j = p.index(g[a])
                    p[a], p[j] = p[j], p[a]
        return DynamicalCocycle.build(n, k, lambda x, y, a, b: perms[(x, y, b)][a], g)
    units = [u for u in range(1, k + 1) if u % k and all((u * v) % k != 0 for v in range(1, k))] or [1]
    eta = [[rng.choice(units) for _ in range(n)] for _ in range(n)]
    tau = [[rng.randrange(k) for _ in range(n)] for _ in range(n)]
    kappa = [[rng.randrange(k) for _ in range(n)] for _ in range(n)]
    return ModuleData(n, k, tuple(map(tuple, eta)), tuple(map(tuple, tau)),
                      rng.randrange(k), tuple(map(tuple, kappa))).to_cocycle()


def module_cocycles(n: int, max_fiber: int = 3):
    """All scalar ModuleData (T unit, any S, any g) with kappa = 0, plus one constant kappa each."""
    for m in range(2, max_fiber + 1):
        for T in range(1, m):
            if any((T * v) % m == 1 for v in range(m)):
                for S, g in itertools.product(range(m), repeat=2):
                    yield ModuleData.scalar(n, m, T, S, g).to_cocycle()
                    yield ModuleData.scalar(n, m, T, S, g, kappa=[[1] * n] * n).to_cocycle()


def discrepancy(base, c, level):
    """None if (base passes and cocycle passes) agrees with the extension passing, else a description."""
    lhs = validate(base, level).passed and check_dynamical_cocycle(base, c, level).passed
    ext = build_extension(base, c)
    rhs = validate(ext, level, f=extension_structure_map(base, c)).passed
    return None if lhs == rhs else (level, base.rows(), c.to_json_obj(), lhs, rhs)
