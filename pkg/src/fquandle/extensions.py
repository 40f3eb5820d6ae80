"""Extensions of f-quandles by dynamical cocycles, constant cocycles and modules.

Fiber elements are indices 0..k-1.  The extension X x_alpha A is numbered
(x, a) -> x*k + a and carries the structure map (x, a) -> (f(x), g(a)).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .core import AxiomReport, FTable, LEVELS, make_conjugation
from .groups import GroupTable, check_endomorphism


class CocycleShapeError(ValueError):
    pass


def _tuplify(a):
    if isinstance(a, (list, tuple)):
        return tuple(_tuplify(v) for v in a)
    return int(a)


@dataclass(frozen=True)
class DynamicalCocycle:
    """alpha[x][y][a][b] = alpha_{x,y}(a, b) together with the fiber map g."""
    base_order: int
    fiber_order: int
    alpha: tuple
    g: tuple[int, ...]

    def __post_init__(self):
        n, k = self.base_order, self.fiber_order
        a = self.alpha
        if len(self.g) != k or any(not 0 <= v < k for v in self.g):
            raise CocycleShapeError("g must map the fiber into itself")
        if len(a) != n or any(len(r) != n for r in a):
            raise CocycleShapeError(f"alpha must be {n} x {n} over the base")
        for row in a:
            for blk in row:
                if len(blk) != k or any(len(r) != k for r in blk):
                    raise CocycleShapeError(f"each alpha_xy must be {k} x {k}")
                if any(not 0 <= v < k for r in blk for v in r):
                    raise CocycleShapeError("alpha entry outside the fiber")

    @classmethod
    def build(cls, n: int, k: int, fn, g: Sequence[int]) -> "DynamicalCocycle":
        """Tabulate ``fn(x, y, a, b)``."""
        alpha = tuple(tuple(tuple(tuple(fn(x, y, a, b) % k for b in range(k)) for a in range(k))
                            for y in range(n)) for x in range(n))
        return cls(n, k, alpha, tuple(int(v) for v in g))

    def __call__(self, x, y, a, b) -> int:
        return self.alpha[x][y][a][b]

    def to_json_obj(self) -> dict:
        return {"base_order": self.base_order, "fiber_order": self.fiber_order,
                "alpha": [[[list(r) for r in blk] for blk in row] for row in self.alpha],
                "g": list(self.g)}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "DynamicalCocycle":
        return cls(obj["base_order"], obj["fiber_order"], _tuplify(obj["alpha"]), _tuplify(obj["g"]))


@dataclass(frozen=True)
class ModuleData:
    """Z_m coefficients: alpha_{x,y}(a, b) = eta_xy a + tau_xy b + kappa_xy, g acting by multiplication."""
    base_order: int
    m: int
    eta: tuple
    tau: tuple
    g: int
    kappa: tuple | None = None

    def __post_init__(self):
        n, m = self.base_order, self.m
        for name in ("eta", "tau") + (("kappa",) if self.kappa is not None else ()):
            arr = getattr(self, name)
            if len(arr) != n or any(len(r) != n for r in arr):
                raise CocycleShapeError(f"{name} must be {n} x {n}")
        for x in range(n):
            for y in range(n):
                if math.gcd(self.eta[x][y], m) != 1:
                    raise CocycleShapeError(f"eta[{x}][{y}] = {self.eta[x][y]} is not a unit mod {m}")

    @classmethod
    def scalar(cls, n: int, m: int, T: int, S: int, g: int | None = None,
               kappa=None) -> "ModuleData":
        """Constant eta = T, tau = S; g defaults to T + S."""
        eta = tuple(tuple(T % m for _ in range(n)) for _ in range(n))
        tau = tuple(tuple(S % m for _ in range(n)) for _ in range(n))
        g = (T + S) % m if g is None else g % m
        return cls(n, m, eta, tau, g, None if kappa is None else _mod_table(kappa, m))

    def with_kappa(self, kappa) -> "ModuleData":
        return ModuleData(self.base_order, self.m, self.eta, self.tau, self.g, _mod_table(kappa, self.m))

    def kappa_at(self, x, y) -> int:
        return 0 if self.kappa is None else self.kappa[x][y]

    def to_cocycle(self) -> DynamicalCocycle:
        m = self.m
        return DynamicalCocycle.build(
            self.base_order, m,
            lambda x, y, a, b: self.eta[x][y] * a + self.tau[x][y] * b + self.kappa_at(x, y),
            [(self.g * a) % m for a in range(m)])

    def to_json_obj(self) -> dict:
        obj = {"base_order": self.base_order, "m": self.m, "eta": [list(r) for r in self.eta],
               "tau": [list(r) for r in self.tau], "g": self.g}
        if self.kappa is not None:
            obj["kappa"] = [list(r) for r in self.kappa]
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ModuleData":
        m = obj["m"]
        return cls(obj["base_order"], m, _mod_table(obj["eta"], m), _mod_table(obj["tau"], m),
                   int(obj["g"]) % m, None if obj.get("kappa") is None else _mod_table(obj["kappa"], m))


def _mod_table(arr, m):
    return tuple(tuple(int(v) % m for v in row) for row in arr)


def extension_structure_map(base: FTable, c: DynamicalCocycle) -> tuple[int, ...]:
    """(x, a) -> (f(x), g(a)) in the extension's numbering."""
    k = c.fiber_order
    return tuple(base.f[x] * k + c.g[a] for x in range(base.order) for a in range(k))


def build_extension(base: FTable, c: DynamicalCocycle) -> FTable:
    """(x, a) * (y, b) = (x * y, alpha_{x,y}(a, b)); no validity claim."""
    if c.base_order != base.order:
        raise CocycleShapeError("cocycle and base orders differ")
    n, k, T = base.order, c.fiber_order, base.table
    rows = []
    for x in range(n):
        for a in range(k):
            rows.append(tuple(T[x][y] * k + c.alpha[x][y][a][b] for y in range(n) for b in range(k)))
    return FTable(n * k, tuple(rows))


def check_dynamical_cocycle(base: FTable, c: DynamicalCocycle, level: str = "quandle",
                            exhaustive: bool = False) -> AxiomReport:
    """Check alpha against the extension conditions.

    Axiom ids: ``"1"`` alpha_xx(a, a) = g(a) (quandle and up); ``"2"``
    unique solvability of alpha_{z,y}(c, b) = g(a) where z * y = f(x), which is
    the exact fiber part of axiom II and coincides with bijectivity of
    alpha_{x,y}(-, b) whenever g is onto; ``"2-bijective"`` the literal
    bijectivity (quandle and up, where it is forced); ``"3"`` the cocycle
    identity; ``"crossed"`` alpha_{x,y}(a, b) = g(a) whenever y * x = f(y)
    and alpha_{y,x}(b, a) = g(b).
    """
    if level not in LEVELS or level == "shelf":
        if level == "shelf":
            level_axioms = ("3",)
        else:
            raise ValueError(f"unknown level {level!r}")
    else:
        level_axioms = {"rack": ("2", "3"), "quandle": ("1", "2", "2-bijective", "3"),
                        "crossed": ("1", "2", "2-bijective", "3", "crossed")}[level]
    if c.base_order != base.order:
        raise CocycleShapeError("cocycle and base orders differ")
    n, k, T, f, g, al = base.order, c.fiber_order, base.table, base.f, c.g, c.alpha
    X, A = range(n), range(k)
    violations = []

    def add(axiom, w):
        violations.append((axiom, w))
        return not exhaustive

    for axiom in level_axioms:
        if axiom == "1":
            for x, a in itertools.product(X, A):
                if al[x][x][a][a] != g[a] and add("1", (x, a)):
                    break
        elif axiom == "2":
            done = False
            for x, y in itertools.product(X, X):
                zs = [z for z in X if T[z][y] == f[x]]
                if len(zs) != 1:
                    continue  # base axiom II failure; not a fiber condition
                z = zs[0]
                for a, b in itertools.product(A, A):
                    if sum(1 for cc in A if al[z][y][cc][b] == g[a]) != 1 and add("2", (x, y, a, b)):
                        done = True
                        break
                if done:
                    break
        elif axiom == "2-bijective":
            done = False
            for x, y, b in itertools.product(X, X, A):
                if len({al[x][y][a][b] for a in A}) != k and add("2-bijective", (x, y, b)):
                    break
        elif axiom == "3":
            done = False
            for x, y, z in itertools.product(X, X, X):
                xy, xz, yz, fz = T[x][y], T[x][z], T[y][z], f[z]
                L, R1, R2, R3 = al[xy][fz], al[xz][yz], al[x][z], al[y][z]
                for a, b, cc in itertools.product(A, A, A):
                    if L[al[x][y][a][b]][g[cc]] != R1[R2[a][cc]][R3[b][cc]] and \
                            add("3", (x, y, z, a, b, cc)):
                        done = True
                        break
                if done:
                    break
        else:
            done = False
            for x, y in itertools.product(X, X):
                if T[y][x] != f[y]:
                    continue
                for a, b in itertools.product(A, A):
                    if al[y][x][b][a] == g[b] and al[x][y][a][b] != g[a] and \
                            add("crossed", (x, y, a, b)):
                        done = True
                        break
                if done:
                    break
    return AxiomReport(level, not violations, violations)


def _is_perm(p, k):
    return len(p) == k and sorted(p) == list(range(k))


def check_constant_cocycle(base: FTable, lam, level: str = "rack",
                           exhaustive: bool = False) -> AxiomReport:
    """lambda_{x*y, f(z)} lambda_{x,y} = lambda_{x*z, y*z} lambda_{x,z}; quandle adds lambda_xx = id.

    The crossed clause: lambda_{x,y} = id whenever y * x = f(y) and lambda_{y,x}
    fixes some point.
    """
    n = base.order
    lam = _tuplify(lam)
    if len(lam) != n or any(len(r) != n for r in lam):
        raise CocycleShapeError(f"lambda must be {n} x {n}")
    k = len(lam[0][0])
    for x, y in itertools.product(range(n), repeat=2):
        if not _is_perm(lam[x][y], k):
            raise CocycleShapeError(f"lambda[{x}][{y}] is not a permutation of the fiber")
    axioms = {"rack": ("rack",), "quandle": ("rack", "quandle"),
              "crossed": ("rack", "quandle", "crossed")}[level]
    T, f = base.table, base.f
    ident = tuple(range(k))
    violations = []

    def add(axiom, w):
        violations.append((axiom, w))
        return not exhaustive

    for axiom in axioms:
        if axiom == "rack":
            for x, y, z in itertools.product(range(n), repeat=3):
                L1, L2 = lam[T[x][y]][f[z]], lam[x][y]
                R1, R2 = lam[T[x][z]][T[y][z]], lam[x][z]
                if any(L1[L2[a]] != R1[R2[a]] for a in range(k)) and add("rack", (x, y, z)):
                    break
        elif axiom == "quandle":
            for x in range(n):
                if lam[x][x] != ident and add("quandle", (x,)):
                    break
        else:
            for x, y in itertools.product(range(n), repeat=2):
                if T[y][x] == f[y] and any(lam[y][x][b] == b for b in range(k)) \
                        and lam[x][y] != ident and add("crossed", (x, y)):
                    break
    return AxiomReport(level, not violations, violations)


def constant_cocycle_as_dynamical(n: int, lam) -> DynamicalCocycle:
    lam = _tuplify(lam)
    k = len(lam[0][0])
    return DynamicalCocycle.build(n, k, lambda x, y, a, b: lam[x][y][a], range(k))


def check_module(base: FTable, md: ModuleData, quandle: bool = False,
                 exhaustive: bool = False) -> AxiomReport:
    """Module equations over all triples, mod m.

    ``"4"``: eta_{x*y,f(z)} eta_{x,y} = eta_{x*z,y*z} eta_{x,z}
    ``"5"``: eta_{x*y,f(z)} tau_{x,y} = tau_{x*z,y*z} eta_{y,z}
    ``"6"``: tau_{x*y,f(z)} g = eta_{x*z,y*z} tau_{x,z} + tau_{x*z,y*z} tau_{y,z}
    ``"quandle"``: tau_{f(x),f(x)} g = (eta_{f(x),f(x)} + tau_{f(x),f(x)}) tau_{x,x}
    Witnesses carry the two sides, e.g. ("6", (x, y, z, lhs, rhs)).
    """
    if md.base_order != base.order:
        raise CocycleShapeError("module and base orders differ")
    n, m, T, f = base.order, md.m, base.table, base.f
    eta, tau, g = md.eta, md.tau, md.g
    violations = []
    stop = {"4": False, "5": False, "6": False}
    for x, y, z in itertools.product(range(n), repeat=3):
        xy, xz, yz, fz = T[x][y], T[x][z], T[y][z], f[z]
        sides = {
            "4": (eta[xy][fz] * eta[x][y], eta[xz][yz] * eta[x][z]),
            "5": (eta[xy][fz] * tau[x][y], tau[xz][yz] * eta[y][z]),
            "6": (tau[xy][fz] * g, eta[xz][yz] * tau[x][z] + tau[xz][yz] * tau[y][z]),
        }
        for eq, (lhs, rhs) in sides.items():
            if stop[eq]:
                continue
            if (lhs - rhs) % m:
                violations.append((eq, (x, y, z, lhs % m, rhs % m)))
                stop[eq] = not exhaustive
    if quandle:
        for x in range(n):
            fx = f[x]
            lhs = tau[fx][fx] * g
            rhs = (eta[fx][fx] + tau[fx][fx]) * tau[x][x]
            if (lhs - rhs) % m:
                violations.append(("quandle", (x, lhs % m, rhs % m)))
                if not exhaustive:
                    break
    return AxiomReport("quandle-module" if quandle else "module", not violations, violations)


def check_generalized_2cocycle(base: FTable, md: ModuleData,
                               exhaustive: bool = False) -> AxiomReport:
    """Twisted 2-cocycle equation for kappa over all triples.

    eta_{x*y,f(z)} k_{x,y} + k_{x*y,f(z)} = eta_{x*z,y*z} k_{x,z} + tau_{x*z,y*z} k_{y,z} + k_{x*z,y*z}

    ``flags["normalized"]`` records whether kappa_{z,z} = 0 for every z; it
    does not affect ``passed``.
    """
    n, m, T, f = base.order, md.m, base.table, base.f
    eta, tau = md.eta, md.tau
    k = md.kappa if md.kappa is not None else tuple((0,) * n for _ in range(n))
    violations = []
    for x, y, z in itertools.product(range(n), repeat=3):
        xy, xz, yz, fz = T[x][y], T[x][z], T[y][z], f[z]
        lhs = eta[xy][fz] * k[x][y] + k[xy][fz]
        rhs = eta[xz][yz] * k[x][z] + tau[xz][yz] * k[y][z] + k[xz][yz]
        if (lhs - rhs) % m:
            violations.append(("8", (x, y, z, lhs % m, rhs % m)))
            if not exhaustive:
                break
    normalized = all(k[z][z] % m == 0 for z in range(n))
    return AxiomReport("2-cocycle", not violations, violations, {"normalized": normalized})


@dataclass
class GroupCocycleImport:
    """Outcome of importing a group 2-cocycle into f-quandle module data."""
    base: FTable
    module: ModuleData
    extension: FTable
    decomposition_exact: bool
    closed_form_agreement: dict = field(default_factory=dict)
    substitutions: tuple[str, ...] = ()


class PreconditionError(ValueError):
    def __init__(self, message: str, witness: tuple):
        super().__init__(f"{message} (witness {witness})")
        self.witness = witness


def import_group_2cocycle(G: GroupTable, mA: int, action: Sequence[int], theta,
                          f: Sequence[int], g: int) -> GroupCocycleImport:
    """Read eta, tau, kappa off the f-quandle structure of E = A x_theta G.

    ``action[x]`` is the unit u with x . b = u b on A = Z_mA; ``g`` is the
    endomorphism b -> g b of A.  E carries (a, x)(b, y) = (a + x.b + theta(x, y), xy),
    F(a, x) = (g a, f(x)) and (a, x) * (b, y) = (b, y)^-1 (a, x) F(b, y).  The
    A-component of that product is decomposed as eta a + tau b + kappa, and the
    closed forms eta = y^-1, tau = y^-1 x g - y^-1,
    kappa = -theta(y^-1, y) + theta(y^-1, x) + theta(y^-1 x, f(y)) are compared.
    """
    n, m = G.order, mA
    u = tuple(int(v) % m for v in action)
    th = _mod_table(theta, m)
    f = tuple(int(v) for v in f)
    g = int(g) % m
    M, inv, e = G.mult, G.inv, G.identity
    if len(u) != n or len(th) != n:
        raise CocycleShapeError("action and theta must be indexed by G")
    for x in range(n):
        if math.gcd(u[x], m) != 1:
            raise PreconditionError("action is not by automorphisms", (x,))
    for x, y in itertools.product(range(n), repeat=2):
        if u[M[x][y]] != (u[x] * u[y]) % m:
            raise PreconditionError("action is not a homomorphism G -> Aut(A)", (x, y))
    for x, y, z in itertools.product(range(n), repeat=3):
        if (th[x][y] + th[M[x][y]][z] - u[x] * th[y][z] - th[x][M[y][z]]) % m:
            raise PreconditionError("theta is not a group 2-cocycle", (x, y, z))
    bad = check_endomorphism(G, f)
    if bad is not None:
        raise PreconditionError("f is not an endomorphism of G", bad)
    for x in range(n):
        if (g * u[x] - u[f[x]] * g) % m:
            raise PreconditionError("g(x.b) != f(x).g(b)", (x,))
    for x, y in itertools.product(range(n), repeat=2):
        if (g * th[x][y] - th[f[x]][f[y]]) % m:
            raise PreconditionError("g(theta(x, y)) != theta(f(x), f(y))", (x, y))

    # E as an explicit group; element (a, x) has index x*m + a
    N = n * m
    emult = [[0] * N for _ in range(N)]
    for x, a, y, b in itertools.product(range(n), range(m), range(n), range(m)):
        c = (a + u[x] * b + th[x][y]) % m
        emult[x * m + a][y * m + b] = M[x][y] * m + c
    E = GroupTable.from_mult(emult)
    F = [f[x] * m + (g * a) % m for x in range(n) for a in range(m)]
    if check_endomorphism(E, F) is not None:
        raise PreconditionError("F is not an endomorphism of E", check_endomorphism(E, F))
    ext = make_conjugation(E, F, "plain")
    base = make_conjugation(G, f, "plain")

    def alpha(x, y, a, b):
        v = ext.table[x * m + a][y * m + b]
        if v // m != base.table[x][y]:
            raise AssertionError("E-product does not project onto the base operation")
        return v % m

    eta = [[0] * n for _ in range(n)]
    tau = [[0] * n for _ in range(n)]
    kap = [[0] * n for _ in range(n)]
    exact = True
    for x, y in itertools.product(range(n), repeat=2):
        k0 = alpha(x, y, 0, 0)
        eta[x][y] = (alpha(x, y, 1 % m, 0) - k0) % m
        tau[x][y] = (alpha(x, y, 0, 1 % m) - k0) % m
        kap[x][y] = k0
        for a, b in itertools.product(range(m), repeat=2):
            if alpha(x, y, a, b) != (eta[x][y] * a + tau[x][y] * b + k0) % m:
                exact = False
    module = ModuleData(n, m, _mod_table(eta, m), _mod_table(tau, m), g, _mod_table(kap, m))

    agree = {"eta": True, "tau": True, "kappa": True}
    for x, y in itertools.product(range(n), repeat=2):
        yi = inv[y]
        if eta[x][y] != u[yi]:
            agree["eta"] = False
        if tau[x][y] != (u[M[yi][x]] * g - u[yi]) % m:
            agree["tau"] = False
        if kap[x][y] != (-th[yi][y] + th[yi][x] + th[M[yi][x]][f[y]]) % m:
            agree["kappa"] = False
    return GroupCocycleImport(
        base=base, module=module, extension=ext, decomposition_exact=exact,
        closed_form_agreement=agree,
        substitutions=("tau: f(b) evaluated as g(b)", "kappa: g(y) evaluated as f(y)"),
    )
