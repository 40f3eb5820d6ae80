import itertools

import numpy as np
import pytest

from fquandle.classify import (
    OrderCapError, classify, enumerate_all, filter_no_quandle, is_group_like, order_cap, Catalog,
)
from fquandle.core import FTable, make_alexander, validate, is_latin
from fquandle.morphisms import canonical_form, find_isomorphism, twisted_isomorphic

from conftest import catalog

ORDER4_PRINTED = [
    FTable.from_rows([[0, 1, 3, 2], [1, 0, 2, 3], [2, 3, 0, 1], [3, 2, 1, 0]]),
    FTable.from_rows([[0, 1, 3, 2], [1, 0, 2, 3], [2, 3, 1, 0], [3, 2, 0, 1]]),
]


def brute_force_all(n):
    """Every n x n table passing quandle validation, by exhaustive search."""
    out = []
    for flat in itertools.product(range(n), repeat=n * n):
        t = FTable(n, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))
        if validate(t, "quandle").passed:
            out.append(t)
    return sorted(out, key=lambda t: t.flat)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_exhaustive_search(n):
    assert enumerate_all(n) == brute_force_all(n)


def test_order4_count_matches_column_permutation_search():
    n = 4
    perms = np.array(list(itertools.permutations(range(n))))
    idx = np.array(list(itertools.product(range(len(perms)), repeat=n)))
    T = perms[idx].transpose(0, 2, 1)
    K = T.shape[0]
    rows = np.arange(K)
    f = T[:, np.arange(n), np.arange(n)]
    ok = np.ones(K, bool)
    for x, y, z in itertools.product(range(n), repeat=3):
        ok &= T[rows, T[:, x, y], f[:, z]] == T[rows, T[:, x, z], T[:, y, z]]
    expected = sorted(tuple(int(v) for v in t.flatten()) for t in T[ok])
    assert [t.flat for t in enumerate_all(4)] == expected


def test_census_counts():
    assert [catalog(n).labeled_count for n in (1, 2, 3, 4)] == [1, 4, 24, 288]
    assert [catalog(n).iso_class_count for n in (1, 2, 3, 4)] == [1, 3, 10, 37]
    assert [catalog(n).twisted_class_count for n in (1, 2, 3, 4)] == [1, 2, 4, 12]
    assert [catalog(n).no_quandle_count for n in (1, 2, 3, 4)] == [0, 1, 1, 5]


def test_order2_no_quandle_class_is_affine():
    c = filter_no_quandle(catalog(2))
    assert c.twisted_class_count == 1
    assert find_isomorphism(c.representatives()[0], make_alexander(2, 1, 1)) is not None


def test_order3_no_quandle_class_contents():
    c = filter_no_quandle(catalog(3))
    members = c.class_tables(0)
    expected = {canonical_form(FTable.from_rows([[0, 1, 2], [2, 0, 1], [1, 2, 0]])),
                canonical_form(make_alexander(3, 1, 2))}
    assert set(members) == expected
    assert all(len(set(t.f)) == 1 for t in members)


def test_order4_no_quandle_classes():
    c = filter_no_quandle(catalog(4))
    assert c.twisted_class_count == 5
    assert sum(cl.is_group_like for cl in c.classes) == 2
    groups = [i for i, cl in enumerate(c.classes) if cl.is_group_like]
    rest = [i for i, cl in enumerate(c.classes) if not cl.is_group_like]
    for t in ORDER4_PRINTED:
        hits = [i for i in rest if any(find_isomorphism(t, u) for u in c.class_tables(i))]
        assert len(hits) == 1
    hit_sets = {i for t in ORDER4_PRINTED for i in rest
                if any(find_isomorphism(t, u) for u in c.class_tables(i))}
    assert len(hit_sets) == 2
    extra = [i for i in rest if i not in hit_sets]
    assert len(extra) == 1 and not c.classes[extra[0]].is_latin
    assert groups


@pytest.mark.parametrize("n", [2, 3])
def test_classes_are_components_of_one_step_twists(n):
    c = catalog(n)
    k = len(c.tables)
    adj = {i: {i} for i in range(k)}
    for a, b in itertools.permutations(range(k), 2):
        if twisted_isomorphic(c.tables[a], c.tables[b]):
            adj[a].add(b)
            adj[b].add(a)
    comps, seen = [], set()
    for i in range(k):
        if i in seen:
            continue
        stack, comp = [i], set()
        while stack:
            v = stack.pop()
            if v not in comp:
                comp.add(v)
                stack.extend(adj[v] - comp)
        seen |= comp
        comps.append(sorted(comp))
    assert sorted(comps) == sorted(c.class_members)


def test_class_flags_constant():
    for n in (2, 3, 4):
        c = catalog(n)
        for cl in c.classes:
            assert {is_latin(c.tables[i]) for i in cl.members} == {cl.is_latin}


def test_group_like():
    assert is_group_like(FTable.from_rows([[0, 1], [1, 0]]))
    assert not is_group_like(make_alexander(3, 1, 2))


def test_catalog_json_roundtrip():
    c = catalog(3)
    d = Catalog.from_json_obj(c.to_json_obj())
    assert d.tables == c.tables and d.class_members == c.class_members


def test_order_cap(monkeypatch):
    monkeypatch.delenv("FQUANDLE_ORDER_CAP", raising=False)
    assert order_cap() == 5 and order_cap(True) == 6
    with pytest.raises(OrderCapError):
        enumerate_all(7)
    monkeypatch.setenv("FQUANDLE_ORDER_CAP", "3")
    with pytest.raises(OrderCapError):
        classify(4)
