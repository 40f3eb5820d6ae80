"""Finite f-structures as operation tables.

An :class:`FTable` is an n x n table with ``table[x][y] == x * y``.  The
structure map is never stored: ``f(x) = x * x``.  :func:`validate` checks the
axiom levels shelf < rack < quandle < crossed cumulatively.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .groups import GroupTable, check_endomorphism

LEVELS = ("shelf", "rack", "quandle", "crossed")

# axioms checked at each level, cumulatively
_AXIOMS = {
    "shelf": ("I",),
    "rack": ("I", "II"),
    "quandle": ("I", "II", "III"),
    "crossed": ("I", "II", "III", "crossed"),
}


class TableFormatError(ValueError):
    """Malformed input: wrong shape or an entry outside 0..n-1."""


class ConstructionError(ValueError):
    """A constructor's precondition does not hold."""


class WellDefinednessError(ValueError):
    """An induced operation on a quotient depends on the representative."""

    def __init__(self, message: str, witness: tuple):
        super().__init__(f"{message} (witness {witness})")
        self.witness = witness


@dataclass(frozen=True)
class FTable:
    order: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.order
        if not isinstance(n, int) or n < 1:
            raise TableFormatError(f"order must be a positive integer, got {n!r}")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise TableFormatError(f"table is not {n} x {n}")
        for x, row in enumerate(self.table):
            for y, v in enumerate(row):
                if not isinstance(v, int) or not 0 <= v < n:
                    raise TableFormatError(f"entry ({x},{y}) = {v!r} outside 0..{n - 1}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], one_based: bool = False) -> "FTable":
        shift = 1 if one_based else 0
        try:
            table = tuple(tuple(int(v) - shift for v in row) for row in rows)
        except (TypeError, ValueError) as exc:
            raise TableFormatError(f"non-integer table entry: {exc}") from None
        return cls(len(table), table)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    @cached_property
    def f(self) -> tuple[int, ...]:
        return tuple(self.table[x][x] for x in range(self.order))

    @cached_property
    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.table]

    def to_json_obj(self) -> dict:
        return {"order": self.order, "table": self.rows(), "one_based": False}

    @classmethod
    def from_json_obj(cls, obj) -> "FTable":
        if not isinstance(obj, dict) or "table" not in obj:
            raise TableFormatError("FTable JSON needs a 'table' field")
        t = cls.from_rows(obj["table"], one_based=bool(obj.get("one_based", False)))
        if "order" in obj and obj["order"] != t.order:
            raise TableFormatError(f"declared order {obj['order']} != table size {t.order}")
        return t

    def __str__(self):
        return "\n".join(" ".join(str(v) for v in row) for row in self.table)


@dataclass(frozen=True)
class AxiomReport:
    level_requested: str
    passed: bool
    violations: list[tuple[str, tuple]] = field(default_factory=list)
    flags: dict = field(default_factory=dict)

    def axioms_failed(self) -> set[str]:
        return {a for a, _ in self.violations}

    def to_json_obj(self) -> dict:
        obj = {
            "level": self.level_requested,
            "passed": self.passed,
            "violations": [{"axiom": a, "witness": list(w)} for a, w in self.violations],
        }
        if self.flags:
            obj["flags"] = dict(self.flags)
        return obj


def _report(level, violations, flags=None) -> AxiomReport:
    return AxiomReport(level, not violations, violations, flags or {})


def _check_level(level: str) -> None:
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}; expected one of {LEVELS}")


def validate(t: FTable, level: str = "quandle", exhaustive: bool = False,
             f: Sequence[int] | None = None) -> AxiomReport:
    """Check the axioms up to ``level``.

    By default one witness per failing axiom is kept; ``exhaustive`` keeps all
    of them.  ``f`` overrides the structure map (default: the diagonal), which
    lets a table be checked as an f-rack whose map is not its diagonal.
    """
    _check_level(level)
    n, T = t.order, t.table
    fm = t.f if f is None else tuple(f)
    if len(fm) != n or any(not 0 <= v < n for v in fm):
        raise TableFormatError("structure map has wrong length or range")
    violations = []

    def add(axiom, witness):
        violations.append((axiom, witness))
        return not exhaustive

    for axiom in _AXIOMS[level]:
        if axiom == "I":
            for x, y, z in itertools.product(range(n), repeat=3):
                if T[T[x][y]][fm[z]] != T[T[x][z]][T[y][z]] and add("I", (x, y, z)):
                    break
        elif axiom == "II":
            for x, y in itertools.product(range(n), repeat=2):
                target = fm[x]
                count = sum(1 for z in range(n) if T[z][y] == target)
                if count != 1 and add("II", (x, y)):
                    break
        elif axiom == "III":
            for x in range(n):
                if T[x][x] != fm[x] and add("III", (x,)):
                    break
        else:
            for x, y in itertools.product(range(n), repeat=2):
                if T[y][x] == fm[y] and T[x][y] != fm[x] and add("crossed", (x, y)):
                    break
    return _report(level, violations)


def witness_reproduces(t: FTable, axiom: str, witness: tuple,
                       f: Sequence[int] | None = None) -> bool:
    """Re-evaluate a single reported violation against the table."""
    T = t.table
    fm = t.f if f is None else tuple(f)
    if axiom == "I":
        x, y, z = witness
        return T[T[x][y]][fm[z]] != T[T[x][z]][T[y][z]]
    if axiom == "II":
        x, y = witness
        return sum(1 for z in range(t.order) if T[z][y] == fm[x]) != 1
    if axiom == "III":
        (x,) = witness
        return T[x][x] != fm[x]
    if axiom == "crossed":
        x, y = witness
        return T[y][x] == fm[y] and T[x][y] != fm[x]
    raise ValueError(f"unknown axiom {axiom!r}")


def derived_f(t: FTable) -> tuple[int, ...]:
    return t.f


def is_f_endomorphism(t: FTable) -> bool:
    """True iff f(x*y) == f(x)*f(y) for all pairs."""
    T, f = t.table, t.f
    return all(f[T[x][y]] == T[f[x]][f[y]] for x in range(t.order) for y in range(t.order))


def is_latin(t: FTable) -> bool:
    full = set(range(t.order))
    rows_ok = all(set(row) == full for row in t.table)
    cols_ok = all({t.table[x][y] for x in range(t.order)} == full for y in range(t.order))
    return rows_ok and cols_ok


def right_translation(t: FTable, y: int) -> tuple[int, ...]:
    """R_y as a tuple: z -> z * y (column y of the table)."""
    return tuple(t.table[z][y] for z in range(t.order))


def _check_map(n: int, f: Sequence[int], what: str = "f") -> tuple[int, ...]:
    f = tuple(int(v) for v in f)
    if len(f) != n or any(not 0 <= v < n for v in f):
        raise ConstructionError(f"{what} must have length {n} with entries in 0..{n - 1}")
    return f


def _confirm_diagonal(t: FTable, f: Sequence[int]) -> FTable:
    if t.f != tuple(f):
        raise ConstructionError(f"built diagonal {t.f} differs from requested f {tuple(f)}")
    return t


def make_trivial(n: int, f: Sequence[int]) -> FTable:
    """x * y = f(x)."""
    f = _check_map(n, f)
    return _confirm_diagonal(FTable(n, tuple(tuple(f[x] for _ in range(n)) for x in range(n))), f)


def make_conjugation(g: GroupTable, f: Sequence[int], variant: str = "plain") -> FTable:
    """Conjugation-type f-quandle on a group.

    ``plain``:         x * y = y^-1 x f(y)        (f any endomorphism)
    ``twisted-conj``:  x * y = f(y)^-1 f(x) f(y)  (f must be bijective)
    """
    f = _check_map(g.order, f)
    bad = check_endomorphism(g, f)
    if bad is not None:
        raise ConstructionError(f"f is not an endomorphism of G: f(xy) != f(x)f(y) at {bad}")
    n, m, inv = g.order, g.mult, g.inv
    if variant == "plain":
        rows = [[m[m[inv[y]][x]][f[y]] for y in range(n)] for x in range(n)]
    elif variant == "twisted-conj":
        if len(set(f)) != n:
            raise ConstructionError("twisted-conj needs a bijective f (axiom II fails otherwise)")
        rows = [[m[m[inv[f[y]]][f[x]]][f[y]] for y in range(n)] for x in range(n)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return _confirm_diagonal(FTable.from_rows(rows), f)


def make_f_dihedral(n: int, a: int, b: int) -> FTable:
    """x * y = 2ay - ax + b (mod n), i.e. f(2y - x) with f(x) = ax + b."""
    if n < 1 or math.gcd(a, n) != 1:
        raise ConstructionError(f"a={a} is not a unit mod {n}")
    rows = [[(2 * a * y - a * x + b) % n for y in range(n)] for x in range(n)]
    return _confirm_diagonal(FTable.from_rows(rows), [(a * x + b) % n for x in range(n)])


def make_alexander(m: int, T: int, S: int) -> FTable:
    """x * y = Tx + Sy on Z_m, with f(x) = (T + S)x."""
    if m < 1 or math.gcd(T, m) != 1:
        raise ConstructionError(f"T={T} is not a unit mod {m}")
    rows = [[(T * x + S * y) % m for y in range(m)] for x in range(m)]
    return _confirm_diagonal(FTable.from_rows(rows), [((T + S) * x) % m for x in range(m)])


def group_addition_table(g: GroupTable) -> FTable:
    """The group operation itself as an f-quandle (abelian g), f(x) = x^2."""
    return FTable.from_rows(g.mult)


def translation_crossed_set(t: FTable) -> FTable:
    """Crossed set on the distinct right translations, R_x *_R R_y = R_{x*y}.

    Translations are numbered by first occurrence.  Raises
    :class:`WellDefinednessError` when R_x = R_x' and R_y = R_y' but
    R_{x*y} != R_{x'*y'}.
    """
    n, T = t.order, t.table
    perms: list[tuple[int, ...]] = []
    cls = []
    for x in range(n):
        r = right_translation(t, x)
        if r not in perms:
            perms.append(r)
        cls.append(perms.index(r))
    k = len(perms)
    rows = [[None] * k for _ in range(k)]
    first = [[None] * k for _ in range(k)]
    for x in range(n):
        for y in range(n):
            i, j, v = cls[x], cls[y], cls[T[x][y]]
            if rows[i][j] is None:
                rows[i][j], first[i][j] = v, (x, y)
            elif rows[i][j] != v:
                raise WellDefinednessError(
                    "R_x *_R R_y depends on the representatives", first[i][j] + (x, y))
    for x in range(n):
        # f_R(R_x) = R_{f(x)} must agree with the diagonal of the induced table
        if cls[t.f[x]] != rows[cls[x]][cls[x]]:
            raise WellDefinednessError("f_R disagrees with the induced diagonal", (x,))
    return FTable.from_rows(rows)
