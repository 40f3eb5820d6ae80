"""Enveloping group presentations and the quotient onto a crossed set.

Words are lists of nonzero integers: +k is generator k (1-based), -k its
inverse.  The GAP-style text export follows this grammar exactly:

    F := FreeGroup(<n>);
    rels := [ <word>, <word>, ... ];
    G := F / rels;

where a word is ``One(F)`` when empty, otherwise factors ``F.k`` or ``F.k^-1``
joined by ``*``.  An empty relator list prints as ``rels := [  ];``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import FTable, WellDefinednessError, validate
from .morphisms import Morphism, is_homomorphism


class QuotientError(ValueError):
    pass


def free_reduce(word) -> list[int]:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return out


def _is_commutator(word) -> bool:
    """Word of the form a b a^-1 b^-1 for generators or inverses a, b."""
    w = list(word)
    return len(w) == 4 and w[2] == -w[0] and w[3] == -w[1]


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for w in self.relators:
            if not w:
                raise ValueError("relator words must be non-empty")
            if any(a == 0 or abs(a) > self.generator_count for a in w):
                raise ValueError(f"generator index out of range in {w}")

    @property
    def freely_trivial(self) -> list[bool]:
        return [not free_reduce(w) for w in self.relators]

    @property
    def commutator_flags(self) -> list[bool]:
        """Relator freely reduces to a commutator or to the empty word."""
        return [(not r) or _is_commutator(r) for r in map(free_reduce, self.relators)]

    def to_json_obj(self) -> dict:
        return {
            "generator_count": self.generator_count,
            "relators": [list(w) for w in self.relators],
            "freely_trivial": self.freely_trivial,
            "all_commutators": all(self.commutator_flags),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Presentation":
        return cls(obj["generator_count"], tuple(tuple(w) for w in obj["relators"]))

    def to_gap(self) -> str:
        words = [_gap_word(w) for w in self.relators]
        return (f"F := FreeGroup({self.generator_count});\n"
                f"rels := [ {', '.join(words)} ];\n"
                "G := F / rels;\n")


def _gap_word(word) -> str:
    if not word:
        return "One(F)"
    return "*".join(f"F.{a}" if a > 0 else f"F.{-a}^-1" for a in word)


def enveloping_presentation(t: FTable) -> Presentation:
    """Generators x in X and, for each pair (x, y), the relator (x*y) y x^-1 f(y)^-1."""
    n, T, f = t.order, t.table, t.f
    rels = []
    for x in range(n):
        for y in range(n):
            rels.append((T[x][y] + 1, y + 1, -(x + 1), -(f[y] + 1)))
    return Presentation(n, tuple(rels))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def related_pairs(t: FTable) -> list[tuple[int, int]]:
    """Pairs (x, x') with some y satisfying x*y = f(x') and y*x = f(y)."""
    n, T, f = t.order, t.table, t.f
    out = set()
    for x in range(n):
        for y in range(n):
            if T[y][x] != f[y]:
                continue
            for xp in range(n):
                if T[x][y] == f[xp]:
                    out.add((x, xp))
    return sorted(out)


def quotient_step(t: FTable) -> tuple[FTable, Morphism]:
    """Quotient by the equivalence generated by the relation above, with its projection.

    Classes are numbered by their smallest element.  Raises
    :class:`WellDefinednessError` if the induced operation depends on representatives.
    """
    n, T = t.order, t.table
    uf = _UnionFind(n)
    for a, b in related_pairs(t):
        uf.union(a, b)
    roots = sorted({uf.find(x) for x in range(n)})
    label = {r: i for i, r in enumerate(roots)}
    proj = [label[uf.find(x)] for x in range(n)]
    k = len(roots)
    rows = [[None] * k for _ in range(k)]
    first = [[None] * k for _ in range(k)]
    for x in range(n):
        for y in range(n):
            i, j, v = proj[x], proj[y], proj[T[x][y]]
            if rows[i][j] is None:
                rows[i][j], first[i][j] = v, (x, y)
            elif rows[i][j] != v:
                raise WellDefinednessError("induced operation depends on representatives",
                                           first[i][j] + (x, y))
    q = FTable(k, tuple(tuple(r) for r in rows))
    return q, Morphism(n, k, tuple(proj))


def quotient_crossed_set(t: FTable, return_projection: bool = False):
    """Iterate quotient_step until the result is a crossed set.

    Returns (crossed set, iterations), plus the composed projection when asked.
    Raises :class:`QuotientError` if a step identifies nothing while the
    current table is still not crossed.
    """
    current = t
    proj = Morphism(t.order, t.order, tuple(range(t.order)))
    iterations = 0
    while not validate(current, "crossed").passed:
        q, p = quotient_step(current)
        if q.order == current.order:
            raise QuotientError(
                f"relation is the identity on a non-crossed table of order {q.order}")
        if not is_homomorphism(current, q, p):
            raise AssertionError("projection is not a homomorphism")
        proj = p.compose(proj)
        current = q
        iterations += 1
    return (current, iterations, proj) if return_projection else (current, iterations)
