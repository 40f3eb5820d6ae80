"""Exact integer and modular linear algebra on small dense matrices.

Matrices are lists of lists of Python ints (no overflow).  The Smith normal
form tracks both transforms and their inverses, which is what the kernel
lattice and quotient computations need.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


def as_int_matrix(a) -> list[list[int]]:
    if hasattr(a, "tolist"):
        a = a.tolist()
    return [[int(v) for v in row] for row in a]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b) -> list[list[int]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else []
    out = []
    for row in a:
        if len(row) != inner:
            raise ValueError("shape mismatch")
        out.append([sum(r * c for r, c in zip(row, col)) for col in bt] if inner else [0] * cols)
    return out


@dataclass
class SNF:
    """U @ A @ V == D with U, V unimodular; ``diag`` lists the invariant factors."""
    D: list[list[int]]
    U: list[list[int]]
    U_inv: list[list[int]]
    V: list[list[int]]
    V_inv: list[list[int]]

    @property
    def diag(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)


def smith_normal_form(a, ncols: int | None = None) -> SNF:
    A = as_int_matrix(a)
    r = len(A)
    c = len(A[0]) if r else (ncols or 0)
    U, Ui, V, Vi = identity(r), identity(r), identity(c), identity(c)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for M in (A, V):
                for row in M:
                    row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
            for row in Ui:
                row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q:
            for M in (A, V):
                for row in M:
                    row[dst] += q * row[src]
            Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    for t in range(min(r, c)):
        while True:
            piv = None
            for i in range(t, r):
                for j in range(t, c):
                    if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % p), None)
            if bad is not None:
                add_row(t, bad[0], 1)
                continue
            break
        if t < r and t < c and A[t][t] < 0:
            negate_row(t)
    return SNF(A, U, Ui, V, Vi)


def rank_mod_p(a, p: int) -> int:
    """Rank over GF(p); p must be prime."""
    M = [[v % p for v in row] for row in as_int_matrix(a)]
    rank = 0
    cols = len(M[0]) if M else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], -1, p)
        M[rank] = [(v * inv) % p for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                q = M[i][col]
                M[i] = [(x - q * y) % p for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


def is_prime(m: int) -> bool:
    return m >= 2 and all(m % q for q in range(2, math.isqrt(m) + 1))


def kernel_size(a, m: int, ncols: int) -> int:
    """Number of x in Z_m^ncols with a x = 0 (mod m)."""
    snf = smith_normal_form(a, ncols)
    d = snf.diag + [0] * (ncols - len(snf.diag))
    out = 1
    for v in d[:ncols]:
        out *= math.gcd(v, m)
    return out


@dataclass
class KernelLattice:
    """Basis B (columns) of {x in Z^N : a x = 0 mod m}; B = V diag(scale)."""
    V: list[list[int]]
    V_inv: list[list[int]]
    scale: list[int]

    @property
    def basis(self) -> list[list[int]]:
        return [[self.V[i][j] * self.scale[j] for j in range(len(self.scale))]
                for i in range(len(self.V))]

    def coordinates(self, g) -> list[list[int]]:
        """B^-1 g for a matrix g whose columns lie in the lattice."""
        y = matmul(self.V_inv, g)
        out = []
        for i, row in enumerate(y):
            s = self.scale[i]
            if any(v % s for v in row):
                raise ValueError("vector outside the kernel lattice")
            out.append([v // s for v in row])
        return out


def kernel_lattice(a, m: int, ncols: int) -> KernelLattice:
    snf = smith_normal_form(a, ncols)
    d = snf.diag + [0] * (ncols - len(snf.diag))
    scale = [m // math.gcd(v, m) for v in d[:ncols]]
    return KernelLattice(snf.V, snf.V_inv, scale)


@dataclass
class Quotient:
    divisors: list[int]           # invariant factors != 1, each dividing m
    generators: list[list[int]]   # one representative vector per divisor, reduced mod m


def kernel_mod_image(a_next, a_prev, m: int, n_cols: int) -> Quotient:
    """ker(a_next) / (im(a_prev) intersected with ker(a_next)) over Z_m.

    ``a_prev`` may be None (zero map into this degree).  When a_next a_prev = 0
    mod m this is ordinary cohomology.
    """
    N = n_cols
    ker = kernel_lattice(a_next, m, N)
    gens = [[m * int(i == j) for j in range(N)] for i in range(N)]   # columns m e_i
    if a_prev is not None:
        P = as_int_matrix(a_prev)
        Np = len(P[0]) if P else 0
        if Np:
            comp = matmul(as_int_matrix(a_next), P) if a_next else []
            inner = kernel_lattice(comp, m, Np) if comp else KernelLattice(identity(Np), identity(Np), [1] * Np)
            im = matmul(P, inner.basis)
            gens = [g + i for g, i in zip(gens, im)]
    C = ker.coordinates(gens)
    snf = smith_normal_form(C)
    d = snf.diag + [0] * (N - len(snf.diag))
    divisors, reps = [], []
    B = ker.basis
    for i in range(N):
        e = abs(d[i])
        if e == 1:
            continue
        if e == 0:
            raise AssertionError("quotient is infinite; m e_i must lie in the image lattice")
        col = [row[i] for row in snf.U_inv]
        vec = [sum(B[r][k] * col[k] for k in range(N)) % m for r in range(N)]
        divisors.append(e)
        reps.append(vec)
    return Quotient(divisors, reps)
