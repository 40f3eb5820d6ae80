"""Cochain complexes of f-quandles with Z_m coefficients.

Cochains of degree n are functions X^n -> Z_m, stored as coefficient vectors
over the lexicographically ordered tuples of X^n.  The coboundary is

    d phi(x_1..x_{n+1}) = sum_{i=2}^{n+1} (-1)^i eta_{[x_1..^x_i..x_{n+1}], f^{i-2}[x_i..x_{n+1}]} phi(x_1..^x_i..x_{n+1})
                        - sum_{i=2}^{n+1} (-1)^i phi(x_1*x_i, .., x_{i-1}*x_i, f(x_{i+1}), .., f(x_{n+1}))
                        + s_n tau_{[x_1, x_3..x_{n+1}], [x_2..x_{n+1}]} phi(x_2..x_{n+1})

with s_n = (-1)^(n+1) under the default ``"theorem"`` convention and s_n = +1
under ``"extension"`` (the sign that matches the extension 2-cocycle
equation).  ``"example"`` is ``"extension"`` except in degree 1, where it
uses the row T phi(x) - S phi(y) + phi(x*y).

Taken on all cochains, ``"theorem"`` squares to zero only when S = 0 mod m;
``"extension"`` squares to zero on cochains with phi(f x_1..f x_n) = g phi(x),
selected with ``cochains="compatible"``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .core import FTable

CONVENTIONS = ("theorem", "extension", "example")
COCHAINS = ("full", "compatible")
BRUTE_FORCE_CAP = 10 ** 7


class DegreeError(ValueError):
    pass


class SearchSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class ScalarModule:
    """eta = multiplication by T, tau = multiplication by S, g = T + S, over Z_m."""
    m: int
    T: int
    S: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus must be at least 2")
        if math.gcd(self.T, self.m) != 1:
            raise ValueError(f"T={self.T} is not a unit mod {self.m}")

    @property
    def g(self) -> int:
        return (self.T + self.S) % self.m

    def to_json_obj(self) -> dict:
        return {"m": self.m, "T": self.T % self.m, "S": self.S % self.m, "g": self.g}


@dataclass
class BoundaryMatrix:
    degree: int
    rows: list[tuple]
    cols: list[tuple]
    matrix: np.ndarray            # entries in 0..m-1 (or integers when modulus is None)
    modulus: int | None

    @property
    def shape(self):
        return self.matrix.shape


@dataclass
class CohomologyResult:
    degree: int
    modulus: int
    convention: str
    cochains: str
    divisors: list[int]
    basis: list[tuple[int, ...]]
    kernel_size: int
    is_complex: bool
    dimension: int | None = None
    rank_dimension: int | None = None
    notes: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "modulus": self.modulus,
            "convention": self.convention,
            "cochains": self.cochains,
            "dimension": self.dimension,
            "divisors": self.divisors,
            "kernel_size": self.kernel_size,
            "is_complex": self.is_complex,
            "basis": [list(v) for v in self.basis],
            "notes": dict(self.notes),
        }


def tuples(n_elems: int, length: int) -> list[tuple]:
    return list(itertools.product(range(n_elems), repeat=length))


def f_power(t: FTable, x: int, k: int) -> int:
    for _ in range(k):
        x = t.f[x]
    return x


def bracket(t: FTable, seq) -> int:
    """[x_1, ..., x_n] = ((x_1 * x_2) * f(x_3)) * ... * f^{n-2}(x_n)."""
    seq = tuple(seq)
    if not seq:
        raise ValueError("bracket of an empty sequence")
    v = seq[0]
    for k in range(1, len(seq)):
        v = t.table[v][f_power(t, seq[k], k - 1)]
    return v


def _tau_sign(n: int, convention: str) -> int:
    if convention == "theorem":
        return (-1) ** (n + 1)
    if convention in ("extension", "example"):
        return 1
    raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def boundary_matrix(t: FTable, mod: ScalarModule, n: int, convention: str = "theorem",
                    eta=None, tau=None) -> BoundaryMatrix:
    """Matrix of the degree-n coboundary C^n -> C^{n+1} over Z_m.

    ``eta``/``tau`` optionally give per-pair coefficient tables; their
    subscripts are the brackets of the formula.  By default both are constant
    (T and S), and the brackets are still evaluated.
    """
    if n not in (1, 2, 3):
        raise DegreeError(f"degree must be 1, 2 or 3, got {n}")
    m, N = mod.m, t.order
    sign = _tau_sign(n, convention)
    eta = eta if eta is not None else [[mod.T] * N for _ in range(N)]
    tau = tau if tau is not None else [[mod.S] * N for _ in range(N)]
    cols = tuples(N, n)
    rows = tuples(N, n + 1)
    col_index = {c: i for i, c in enumerate(cols)}
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    T, f = t.table, t.f
    for r, x in enumerate(rows):
        if convention == "example" and n == 1:
            x1, x2 = x
            M[r, col_index[(x1,)]] += mod.T
            M[r, col_index[(x2,)]] -= mod.S
            M[r, col_index[(T[x1][x2],)]] += 1
            continue
        for i in range(2, n + 2):           # 1-based position of the deleted entry
            s = (-1) ** i
            hat = x[:i - 1] + x[i:]
            e = eta[bracket(t, hat)][f_power(t, bracket(t, x[i - 1:]), i - 2)]
            M[r, col_index[hat]] += s * e
            xi = x[i - 1]
            moved = tuple(T[x[j]][xi] for j in range(i - 1)) + tuple(f[x[j]] for j in range(i, n + 1))
            M[r, col_index[moved]] -= s
        sub = tau[bracket(t, (x[0],) + x[2:])][bracket(t, x[1:])]
        M[r, col_index[x[1:]]] += sign * sub
    return BoundaryMatrix(n, rows, cols, M % m, m)


def compatibility_matrix(t: FTable, mod: ScalarModule, n: int) -> np.ndarray:
    """Matrix of phi -> phi(f x_1, .., f x_n) - g phi(x_1, .., x_n); its kernel is the compatible cochains."""
    cols = tuples(t.order, n)
    index = {c: i for i, c in enumerate(cols)}
    M = np.zeros((len(cols), len(cols)), dtype=np.int64)
    for r, x in enumerate(cols):
        M[r, index[tuple(t.f[v] for v in x)]] += 1
        M[r, index[x]] -= mod.g
    return M % mod.m


def _restricted(t, mod, n, convention, cochains):
    """(matrix of d^n, lattice basis of the domain or None)."""
    d = boundary_matrix(t, mod, n, convention).matrix
    if cochains == "full":
        return d, None
    if cochains != "compatible":
        raise ValueError(f"unknown cochain space {cochains!r}")
    comp = compatibility_matrix(t, mod, n)
    lat = linalg.kernel_lattice(comp, mod.m, comp.shape[1])
    return d, lat.basis


def composition_defect(t: FTable, mod: ScalarModule, n: int, convention: str = "theorem",
                       cochains: str = "full") -> int:
    """Number of nonzero entries of d^{n+1} d^n (restricted to compatible cochains if asked)."""
    d_n, basis = _restricted(t, mod, n, convention, cochains)
    d_next = boundary_matrix(t, mod, n + 1, convention).matrix
    prod = (d_next.astype(object) @ d_n.astype(object))
    if basis is not None:
        prod = prod @ np.array(basis, dtype=object)
    return int(np.count_nonzero(prod % mod.m))


def verify_complex(t: FTable, mod: ScalarModule, convention: str = "theorem",
                   cochains: str = "full") -> bool:
    """True iff d^2 d^1 and d^3 d^2 vanish mod m."""
    return all(composition_defect(t, mod, n, convention, cochains) == 0 for n in (1, 2))


def cohomology(t: FTable, mod: ScalarModule, n: int, convention: str = "theorem",
               cochains: str = "full") -> CohomologyResult:
    """H^n = ker d^n / (im d^{n-1} intersected with ker d^n), with C^0 = 0.

    Elementary divisors come from integer Smith normal forms; for prime m the
    dimension is also computed from ranks over GF(m) and the two must agree.
    When d^n d^{n-1} != 0 the intersection keeps the quotient defined and
    ``is_complex`` is False.
    """
    if n not in (1, 2):
        raise DegreeError(f"cohomology is computed in degrees 1 and 2, got {n}")
    m = mod.m
    d_n, basis_n = _restricted(t, mod, n, convention, cochains)
    N = d_n.shape[1]
    a_next = linalg.as_int_matrix(d_n)
    if basis_n is not None:
        # kernel inside the compatible cochains: stack the compatibility equations
        a_next = a_next + linalg.as_int_matrix(compatibility_matrix(t, mod, n))  # list + list stacks rows
    if n == 1:
        a_prev = None
        is_complex = True
    else:
        d_prev, basis_prev = _restricted(t, mod, n - 1, convention, cochains)
        a_prev = linalg.as_int_matrix(d_prev)
        if basis_prev is not None:
            a_prev = linalg.matmul(a_prev, basis_prev)
        comp = linalg.matmul(linalg.as_int_matrix(d_n), a_prev)
        is_complex = all(v % m == 0 for row in comp for v in row)
    q = linalg.kernel_mod_image(a_next, a_prev, m, N)
    ksize = linalg.kernel_size(a_next, m, N)
    result = CohomologyResult(
        degree=n, modulus=m, convention=convention, cochains=cochains,
        divisors=q.divisors, basis=[tuple(v) for v in q.generators],
        kernel_size=ksize, is_complex=is_complex,
    )
    for v in result.basis:
        if any(row[0] % m for row in linalg.matmul(a_next, [[c] for c in v])):
            raise AssertionError("basis vector is not a cocycle")
    if linalg.is_prime(m):
        result.dimension = len(q.divisors)
        nullity = N - linalg.rank_mod_p(a_next, m)
        if a_prev is None:
            bdim = 0
        else:
            # dim(im d^{n-1} cap ker d^n) = rank(d^{n-1}) - rank(d^n d^{n-1})
            bdim = linalg.rank_mod_p(a_prev, m) - linalg.rank_mod_p(
                linalg.matmul(a_next, a_prev), m)
        result.rank_dimension = nullity - bdim
        if result.rank_dimension != result.dimension or m ** nullity != ksize:
            raise AssertionError("Smith normal form and rank computations disagree")
    return result


def brute_force_kernel(t: FTable, mod: ScalarModule, n: int, convention: str = "theorem",
                       cap: int = BRUTE_FORCE_CAP) -> list[tuple[int, ...]]:
    """Every cochain of degree n with zero coboundary, by exhaustive enumeration."""
    M = boundary_matrix(t, mod, n, convention).matrix
    m, N = mod.m, M.shape[1]
    if m ** N > cap:
        raise SearchSpaceError(f"{m}^{N} candidates exceed the cap {cap}")
    out = []
    chunk = 1 << 16
    it = itertools.product(range(m), repeat=N)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            break
        V = np.array(block, dtype=np.int64)
        zero = ~np.any((V @ M.T) % m, axis=1)
        out.extend(tuple(int(c) for c in row) for row in V[zero])
    return out


def rack_homology_boundary(t: FTable, n: int) -> BoundaryMatrix:
    """Integer matrix of the homology boundary C_n -> C_{n-1} (eta = id, tau = 0); zero for n <= 1."""
    if n < 0:
        raise DegreeError("degree must be non-negative")
    N = t.order
    cols = tuples(N, n)
    rows = tuples(N, n - 1) if n >= 1 else []
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    if n >= 2:
        row_index = {r: i for i, r in enumerate(rows)}
        T, f = t.table, t.f
        for c, x in enumerate(cols):
            for i in range(2, n + 1):
                s = (-1) ** i
                M[row_index[x[:i - 1] + x[i:]], c] += s
                xi = x[i - 1]
                moved = tuple(T[x[j]][xi] for j in range(i - 1)) + tuple(f[x[j]] for j in range(i, n))
                M[row_index[moved], c] -= s
    return BoundaryMatrix(n, rows, cols, M, None)


def rack_homology(t: FTable, n: int) -> tuple[int, list[int]]:
    """(free rank, torsion coefficients) of H_n over Z."""
    dn = rack_homology_boundary(t, n).matrix
    dn1 = rack_homology_boundary(t, n + 1).matrix
    N = dn.shape[1]
    rank_n = linalg.smith_normal_form(dn.tolist(), N).rank if dn.shape[0] else 0
    snf1 = linalg.smith_normal_form(dn1.tolist(), dn1.shape[1]) if dn1.shape[1] else None
    rank_n1 = snf1.rank if snf1 else 0
    torsion = [abs(d) for d in snf1.diag if abs(d) > 1] if snf1 else []
    return N - rank_n - rank_n1, torsion
