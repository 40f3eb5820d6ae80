"""Homomorphisms, automorphisms, twists and canonical forms of f-tables.

Searches backtrack over partial maps in increasing index order and try
targets in increasing order, so the first map found is the
lexicographically smallest one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import FTable

MAX_CANONICAL_ORDER = 8


class NotAnAutomorphismError(ValueError):
    def __init__(self, message: str, witness: tuple):
        super().__init__(f"{message} (witness {witness})")
        self.witness = witness


@dataclass(frozen=True)
class Morphism:
    source_order: int
    target_order: int
    map: tuple[int, ...]

    @classmethod
    def of(cls, mapping: Sequence[int], target_order: int | None = None) -> "Morphism":
        mapping = tuple(int(v) for v in mapping)
        return cls(len(mapping), len(mapping) if target_order is None else target_order, mapping)

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_bijective(self) -> bool:
        return self.source_order == self.target_order and len(set(self.map)) == self.source_order

    def inverse(self) -> "Morphism":
        if not self.is_bijective():
            raise ValueError("map is not bijective")
        inv = [0] * self.source_order
        for x, y in enumerate(self.map):
            inv[y] = x
        return Morphism(self.target_order, self.source_order, tuple(inv))

    def compose(self, other: "Morphism") -> "Morphism":
        """self after other."""
        return Morphism(other.source_order, self.target_order,
                        tuple(self.map[v] for v in other.map))

    def to_json_obj(self, is_automorphism: bool | None = None) -> dict:
        obj = {"map": list(self.map)}
        obj["is_automorphism"] = self.is_bijective() if is_automorphism is None else is_automorphism
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict, target_order: int | None = None) -> "Morphism":
        return cls.of(obj["map"], target_order)


def identity(n: int) -> Morphism:
    return Morphism(n, n, tuple(range(n)))


def homomorphism_violation(src: FTable, dst: FTable, mapping) -> tuple | None:
    """First pair breaking phi(x*y) = phi(x)*phi(y), or (x,) breaking phi(f(x)) = f(phi(x))."""
    phi = mapping.map if isinstance(mapping, Morphism) else tuple(mapping)
    if len(phi) != src.order:
        raise ValueError(f"map has length {len(phi)}, source order is {src.order}")
    if any(not 0 <= v < dst.order for v in phi):
        raise ValueError("map entry outside the target")
    A, B = src.table, dst.table
    for x in range(src.order):
        for y in range(src.order):
            if phi[A[x][y]] != B[phi[x]][phi[y]]:
                return (x, y)
    for x in range(src.order):
        if phi[src.f[x]] != dst.f[phi[x]]:
            return (x,)
    return None


def is_homomorphism(src: FTable, dst: FTable, mapping) -> bool:
    return homomorphism_violation(src, dst, mapping) is None


def element_signature(t: FTable, x: int) -> tuple:
    """Isomorphism-invariant data attached to an element, used for pruning."""
    n, T, f = t.order, t.table, t.f
    fixed = f[x] == x
    preimages = sum(1 for y in range(n) if f[y] == x)
    # length of the f-orbit tail and cycle starting at x
    seen, y = [], x
    while y not in seen:
        seen.append(y)
        y = f[y]
    tail = seen.index(y)
    cycle = len(seen) - tail
    row_distinct = len(set(T[x]))
    col_distinct = len({T[y][x] for y in range(n)})
    left_fixed = sum(1 for y in range(n) if T[x][y] == x)
    right_fixed = sum(1 for y in range(n) if T[y][x] == y)
    hits = sum(1 for row in T for v in row if v == x)
    return (fixed, preimages, tail, cycle, row_distinct, col_distinct, left_fixed, right_fixed, hits)


def _iter_isomorphisms(a: FTable, b: FTable) -> Iterator[tuple[int, ...]]:
    n = a.order
    if b.order != n:
        return
    sa = [element_signature(a, x) for x in range(n)]
    sb = [element_signature(b, y) for y in range(n)]
    if sorted(sa) != sorted(sb):
        return
    candidates = [[y for y in range(n) if sb[y] == sa[x]] for x in range(n)]
    A, B = a.table, b.table
    phi = [-1] * n
    used = [False] * n

    def consistent(k):
        # pairs among 0..k that became fully assigned when k was placed
        for u in range(k + 1):
            for v in range(k + 1):
                w = A[u][v]
                if w <= k and (u == k or v == k or w == k):
                    if phi[w] != B[phi[u]][phi[v]]:
                        return False
        return True

    def rec(k):
        if k == n:
            yield tuple(phi)
            return
        for y in candidates[k]:
            if used[y]:
                continue
            phi[k] = y
            used[y] = True
            if consistent(k):
                yield from rec(k + 1)
            used[y] = False
            phi[k] = -1

    yield from rec(0)


def automorphism_group(t: FTable) -> list[Morphism]:
    """All automorphisms, sorted lexicographically by map."""
    return [Morphism(t.order, t.order, m) for m in _iter_isomorphisms(t, t)]


def find_isomorphism(a: FTable, b: FTable) -> Morphism | None:
    """Lexicographically first isomorphism a -> b, or None."""
    for m in _iter_isomorphisms(a, b):
        return Morphism(a.order, b.order, m)
    return None


def relabel(t: FTable, sigma: Sequence[int]) -> FTable:
    """Image of t under the relabeling sigma: entry (i, j) becomes sigma(t[s^-1 i][s^-1 j])."""
    n = t.order
    inv = [0] * n
    for x, y in enumerate(sigma):
        inv[y] = x
    T = t.table
    return FTable(n, tuple(tuple(sigma[T[inv[i]][inv[j]]] for j in range(n)) for i in range(n)))


def twist(t: FTable, phi, check: bool = True) -> FTable:
    """The twist a *_phi b = phi(a * b); its structure map is phi o f.

    With ``check`` (default) phi must be an automorphism of t; otherwise the
    raw table is returned so the failure can be observed by validation.
    """
    m = phi.map if isinstance(phi, Morphism) else tuple(phi)
    if len(m) != t.order or any(not 0 <= v < t.order for v in m):
        raise NotAnAutomorphismError("map does not act on the carrier", tuple(m))
    if check:
        if len(set(m)) != t.order:
            seen = {}
            for x, v in enumerate(m):
                if v in seen:
                    raise NotAnAutomorphismError("map is not injective", (seen[v], x))
                seen[v] = x
        bad = homomorphism_violation(t, t, m)
        if bad is not None:
            raise NotAnAutomorphismError("map is not a homomorphism", bad)
    return FTable(t.order, tuple(tuple(m[v] for v in row) for row in t.table))


def twisted_isomorphic(a: FTable, b: FTable) -> tuple[Morphism, Morphism] | None:
    """(phi, psi) with psi an isomorphism twist(a, phi) -> b, searching Aut(a) in order."""
    if a.order != b.order:
        return None
    for phi in automorphism_group(a):
        psi = find_isomorphism(twist(a, phi), b)
        if psi is not None:
            return phi, psi
    return None


def canonical_form(t: FTable) -> FTable:
    """Lexicographically smallest flattened relabeling over all n! permutations."""
    n = t.order
    if n > MAX_CANONICAL_ORDER:
        raise ValueError(f"canonical_form is limited to order <= {MAX_CANONICAL_ORDER}")
    T = t.table
    best = None
    for inv in itertools.permutations(range(n)):
        # inv = sigma^-1; build row-major and abandon as soon as it exceeds best
        sigma = [0] * n
        for x, y in enumerate(inv):
            sigma[y] = x
        cand = []
        worse = False
        decided = best is None
        for i in range(n):
            ri = T[inv[i]]
            for j in range(n):
                v = sigma[ri[inv[j]]]
                if not decided:
                    b = best[len(cand)]
                    if v > b:
                        worse = True
                        break
                    if v < b:
                        decided = True
                cand.append(v)
            if worse:
                break
        if not worse and (best is None or decided):
            best = cand
    return FTable(n, tuple(tuple(best[i * n:(i + 1) * n]) for i in range(n)))
