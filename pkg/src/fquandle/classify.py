"""Exhaustive enumeration and classification of small f-quandles."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from .core import FTable, is_latin
from .groups import abelian_groups
from .morphisms import automorphism_group, canonical_form, find_isomorphism, twist

DEFAULT_ORDER_CAP = 5
HARD_ORDER_CAP = 6
ORDER_CAP_ENV = "FQUANDLE_ORDER_CAP"


class OrderCapError(ValueError):
    pass


def order_cap(allow_large: bool = False) -> int:
    """Order cap: 5 by default, 6 with ``allow_large``; the environment variable overrides."""
    env = os.environ.get(ORDER_CAP_ENV)
    if env:
        return int(env)
    return HARD_ORDER_CAP if allow_large else DEFAULT_ORDER_CAP


def _check_order(n: int, allow_large: bool) -> None:
    cap = order_cap(allow_large)
    if n < 1:
        raise OrderCapError("order must be positive")
    if n > cap:
        raise OrderCapError(f"order {n} exceeds the cap {cap} (allow_large or ${ORDER_CAP_ENV})")


def _solve_for_f(n: int, f: tuple[int, ...], out: list) -> None:
    """All tables with diagonal f satisfying axioms I-III.

    Columns are permutations (right translations of an f-quandle are
    bijective), so cells are filled column by column with unused values.
    After every assignment, each axiom-I instance that reads the new cell
    and has become fully evaluable is checked.
    """
    T = [[-1] * n for _ in range(n)]
    pos = [[-1] * n for _ in range(n)]          # pos[col][value] = row
    by_value = [set() for _ in range(n)]         # cells holding a value
    finv = [[z for z in range(n) if f[z] == b] for b in range(n)]

    def put(x, y, v):
        T[x][y] = v
        pos[y][v] = x
        by_value[v].add((x, y))

    def take(x, y):
        v = T[x][y]
        T[x][y] = -1
        pos[y][v] = -1
        by_value[v].discard((x, y))

    def ok(x, y, z):
        u = T[x][y]
        if u < 0:
            return True
        left = T[u][f[z]]
        if left < 0:
            return True
        p, q = T[x][z], T[y][z]
        if p < 0 or q < 0:
            return True
        right = T[p][q]
        return right < 0 or left == right

    def consistent(a, b):
        r = range(n)
        for w in r:
            # new cell read directly as (x,y), (x,z) or (y,z)
            if not (ok(a, b, w) and ok(a, w, b) and ok(w, a, b)):
                return False
        # new cell read as (x*y, f(z))
        for z in finv[b]:
            for x, y in list(by_value[a]):
                if not ok(x, y, z):
                    return False
        # new cell read as (x*z, y*z)
        for z in r:
            x, y = pos[z][a], pos[z][b]
            if x >= 0 and y >= 0 and not ok(x, y, z):
                return False
        return True

    for y in range(n):
        put(y, y, f[y])
    for y in range(n):
        if not consistent(y, y):
            return
    cells = [(x, y) for y in range(n) for x in range(n) if x != y]

    def rec(k):
        if k == len(cells):
            out.append(FTable(n, tuple(tuple(row) for row in T)))
            return
        x, y = cells[k]
        for v in range(n):
            if pos[y][v] >= 0:
                continue
            put(x, y, v)
            if consistent(x, y):
                rec(k + 1)
            take(x, y)

    rec(0)


def enumerate_all(n: int, allow_large: bool = False) -> list[FTable]:
    """Every f-quandle table of order n, sorted by flattened table."""
    _check_order(n, allow_large)
    out: list[FTable] = []
    for f in itertools.product(range(n), repeat=n):
        _solve_for_f(n, f, out)
    return sorted(out, key=lambda t: t.flat)


@dataclass
class ClassInfo:
    members: list[int]
    contains_quandle: bool
    is_latin: bool
    is_group_like: bool

    def to_json_obj(self) -> dict:
        return {
            "members": self.members,
            "contains_quandle": self.contains_quandle,
            "is_latin": self.is_latin,
            "is_group_like": self.is_group_like,
        }


@dataclass
class Catalog:
    order: int
    tables: list[FTable]
    classes: list[ClassInfo]
    labeled_count: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def iso_class_count(self) -> int:
        return len(self.tables)

    @property
    def twisted_class_count(self) -> int:
        return len(self.classes)

    @property
    def class_members(self) -> list[list[int]]:
        return [c.members for c in self.classes]

    @property
    def no_quandle_count(self) -> int:
        return sum(1 for c in self.classes if not c.contains_quandle)

    def representatives(self) -> list[FTable]:
        return [self.tables[c.members[0]] for c in self.classes]

    def class_tables(self, i: int) -> list[FTable]:
        return [self.tables[j] for j in self.classes[i].members]

    def to_json_obj(self) -> dict:
        return {
            "order": self.order,
            "labeled_count": self.labeled_count,
            "iso_class_count": self.iso_class_count,
            "twisted_class_count": self.twisted_class_count,
            "no_quandle_class_count": self.no_quandle_count,
            "tables": [t.rows() for t in self.tables],
            "classes": [c.to_json_obj() for c in self.classes],
            "notes": dict(self.notes),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Catalog":
        return cls(
            order=obj["order"],
            tables=[FTable.from_rows(r) for r in obj["tables"]],
            classes=[ClassInfo(**c) for c in obj["classes"]],
            labeled_count=obj.get("labeled_count", 0),
            notes=obj.get("notes", {}),
        )

    def summary_row(self) -> dict:
        return {
            "order": self.order,
            "iso_classes": self.iso_class_count,
            "twisted_classes": self.twisted_class_count,
            "no_quandle_classes": self.no_quandle_count,
        }


def is_group_like(t: FTable) -> bool:
    """Isomorphic to the addition table of some abelian group of the same order."""
    return any(find_isomorphism(FTable.from_rows(g.mult), t) is not None
               for g in abelian_groups(t.order))


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


def classify(n: int, allow_large: bool = False) -> Catalog:
    labeled = enumerate_all(n, allow_large)
    canon = sorted({canonical_form(t) for t in labeled}, key=lambda t: t.flat)
    index = {t: i for i, t in enumerate(canon)}
    uf = _UnionFind(len(canon))
    for i, t in enumerate(canon):
        for phi in automorphism_group(t):
            uf.union(i, index[canonical_form(twist(t, phi))])
    blocks: dict[int, list[int]] = {}
    for i in range(len(canon)):
        blocks.setdefault(uf.find(i), []).append(i)
    classes = []
    for root in sorted(blocks):
        members = blocks[root]
        bij = {len(set(canon[i].f)) == n for i in members}
        latin = {is_latin(canon[i]) for i in members}
        if len(bij) != 1 or len(latin) != 1:
            raise AssertionError(f"class flags not constant on class {members}")
        classes.append(ClassInfo(
            members=members,
            contains_quandle=bij.pop(),
            is_latin=latin.pop(),
            is_group_like=any(is_group_like(canon[i]) for i in members),
        ))
    return Catalog(n, canon, classes, labeled_count=len(labeled),
                   notes={"class_totals": "computed; not reported in the source for comparison"})


def filter_no_quandle(c: Catalog) -> Catalog:
    """Keep only classes whose members all have a non-bijective structure map."""
    kept = [cl for cl in c.classes if not cl.contains_quandle]
    old = sorted(i for cl in kept for i in cl.members)
    renum = {o: k for k, o in enumerate(old)}
    classes = [ClassInfo([renum[i] for i in cl.members], cl.contains_quandle, cl.is_latin,
                         cl.is_group_like) for cl in kept]
    return Catalog(c.order, [c.tables[i] for i in old], classes, c.labeled_count,
                   dict(c.notes, filter="no-quandle"))
