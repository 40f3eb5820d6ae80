"""Finite groups given by multiplication tables.

Only what the conjugation constructors and the group-cocycle import need:
a checked table type, a few standard groups, and endomorphism tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass


class GroupError(ValueError):
    """A multiplication table that is not a group, or a bad group map."""


@dataclass(frozen=True)
class GroupTable:
    order: int
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        n = self.order
        if n < 1 or len(self.mult) != n or any(len(r) != n for r in self.mult):
            raise GroupError("multiplication table must be n x n with n >= 1")
        if any(not 0 <= v < n for r in self.mult for v in r):
            raise GroupError("multiplication entry out of range")
        m, e = self.mult, self.identity
        for x in range(n):
            if m[e][x] != x or m[x][e] != x:
                raise GroupError(f"{e} is not an identity (fails at {x})")
            if m[x][self.inv[x]] != e or m[self.inv[x]][x] != e:
                raise GroupError(f"inv[{x}] is not an inverse")
        for x, y, z in itertools.product(range(n), repeat=3):
            if m[m[x][y]][z] != m[x][m[y][z]]:
                raise GroupError(f"not associative at {(x, y, z)}")

    @classmethod
    def from_mult(cls, mult, names=None) -> "GroupTable":
        """Build from a bare table, locating the identity and inverses."""
        mult = tuple(tuple(int(v) for v in row) for row in mult)
        n = len(mult)
        ident = next(
            (e for e in range(n) if all(mult[e][x] == x == mult[x][e] for x in range(n))),
            None,
        )
        if ident is None:
            raise GroupError("no two-sided identity")
        inv = []
        for x in range(n):
            y = next((y for y in range(n) if mult[x][y] == ident), None)
            if y is None:
                raise GroupError(f"element {x} has no inverse")
            inv.append(y)
        return cls(n, mult, tuple(inv), ident, None if names is None else tuple(names))

    def mul(self, x: int, y: int) -> int:
        return self.mult[x][y]

    def prod(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = self.mult[acc][x]
        return acc

    def is_abelian(self) -> bool:
        return all(self.mult[x][y] == self.mult[y][x]
                   for x in range(self.order) for y in range(self.order))

    def to_json_obj(self) -> dict:
        obj = {"order": self.order, "mult": [list(r) for r in self.mult]}
        if self.names is not None:
            obj["names"] = list(self.names)
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "GroupTable":
        mult = obj["mult"]
        if obj.get("one_based"):
            mult = [[v - 1 for v in row] for row in mult]
        return cls.from_mult(mult, obj.get("names"))


def cyclic_group(n: int) -> GroupTable:
    return GroupTable.from_mult(
        [[(x + y) % n for y in range(n)] for x in range(n)],
        names=[str(i) for i in range(n)],
    )


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    """Elements (a, b) are indexed a * |h| + b."""
    k = h.order
    n = g.order * k
    mult = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            a = g.mult[x // k][y // k]
            b = h.mult[x % k][y % k]
            mult[x][y] = a * k + b
    return GroupTable.from_mult(mult)


def abelian_groups(n: int) -> list[GroupTable]:
    """One representative per isomorphism type of abelian group of order n."""
    out = []
    for factors in _abelian_invariants(n):
        g = cyclic_group(factors[0])
        for d in factors[1:]:
            g = direct_product(g, cyclic_group(d))
        out.append(g)
    return out


def _abelian_invariants(n: int) -> list[tuple[int, ...]]:
    # invariant-factor lists d1 | d2 | ... | dk with product n
    def rec(rest, smallest):
        if rest == 1:
            yield ()
            return
        for d in range(smallest, rest + 1):
            if rest % d == 0:
                for tail in rec(rest // d, d):
                    if all(t % d == 0 for t in tail):
                        yield (d,) + tail
    if n == 1:
        return [(1,)]
    return list(rec(n, 2))


S3_NAMES = ("e", "s", "t", "t^2", "st", "st^2")


def symmetric_group_s3() -> GroupTable:
    """S3 = <s, t | s^2 = t^3 = e, ts = st^2>, elements e, s, t, t^2, st, st^2.

    Every element is written s^a t^b; since t^b s = s t^-b, the product
    (s^a t^b)(s^c t^d) = s^(a+c) t^((-1)^c b + d).
    """
    words = [(0, 0), (1, 0), (0, 1), (0, 2), (1, 1), (1, 2)]
    index = {w: i for i, w in enumerate(words)}
    mult = []
    for a, b in words:
        row = []
        for c, d in words:
            row.append(index[((a + c) % 2, ((-1) ** c * b + d) % 3)])
        mult.append(row)
    return GroupTable.from_mult(mult, names=S3_NAMES)


def s3_example_automorphism() -> tuple[int, ...]:
    """The automorphism s -> st, t -> t^2 as a map on the S3 element order above."""
    g = symmetric_group_s3()
    s, t = 1, 2
    fs, ft = 4, 3
    images = {}
    for a in range(2):
        for b in range(3):
            x = g.prod(*([s] * a + [t] * b))
            images[x] = g.prod(*([fs] * a + [ft] * b))
    return tuple(images[x] for x in range(g.order))


def check_endomorphism(g: GroupTable, f) -> tuple[int, int] | None:
    """Return a pair (x, y) with f(xy) != f(x)f(y), or None if f is an endomorphism."""
    if len(f) != g.order or any(not 0 <= v < g.order for v in f):
        raise GroupError("map has wrong length or out-of-range entries")
    for x in range(g.order):
        for y in range(g.order):
            if f[g.mult[x][y]] != g.mult[f[x]][f[y]]:
                return (x, y)
    return None


def is_endomorphism(g: GroupTable, f) -> bool:
    return check_endomorphism(g, f) is None
