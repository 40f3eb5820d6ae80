import itertools

import pytest

from fquandle.core import FTable, WellDefinednessError, make_alexander, make_trivial, validate
from fquandle.envelope import (
    Presentation, QuotientError, enveloping_presentation, free_reduce, quotient_crossed_set,
    quotient_step, related_pairs,
)
from fquandle.morphisms import is_homomorphism

from conftest import catalog_tables


def test_order1_presentation():
    p = enveloping_presentation(FTable.from_rows([[0]]))
    assert p.generator_count == 1
    assert p.relators == ((1, 1, -1, -1),)
    assert p.freely_trivial == [True]
    assert p.to_gap() == "F := FreeGroup(1);\nrels := [ F.1*F.1*F.1^-1*F.1^-1 ];\nG := F / rels;\n"


def test_trivial_presentation_is_commutators():
    p = enveloping_presentation(make_trivial(2, [0, 1]))
    assert p.to_json_obj()["all_commutators"]
    assert p.freely_trivial == [True, False, False, True]


def test_r3_relators():
    t = FTable.from_rows([[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    p = enveloping_presentation(t)
    assert len(p.relators) == 9
    for (x, y), w in zip(itertools.product(range(3), repeat=2), p.relators):
        assert w == (t.op(x, y) + 1, y + 1, -(x + 1), -(y + 1))


def test_relator_count(tables_upto3):
    for t in tables_upto3:
        assert len(enveloping_presentation(t).relators) == t.order ** 2


def test_presentation_json_roundtrip_and_validation():
    p = enveloping_presentation(make_alexander(3, 1, 2))
    assert Presentation.from_json_obj(p.to_json_obj()) == p
    with pytest.raises(ValueError):
        Presentation(1, ((2,),))
    with pytest.raises(ValueError):
        Presentation(1, ((),))


def test_gap_empty_word_and_free_reduce():
    assert free_reduce([1, 2, -2, -1, 3]) == [3]
    p = Presentation(2, ((1, -2),))
    assert p.to_gap().splitlines()[1] == "rels := [ F.1*F.2^-1 ];"


def test_crossed_tables_are_fixed():
    for t in catalog_tables(3):
        if validate(t, "crossed").passed:
            assert quotient_crossed_set(t) == (t, 0)
    t = make_trivial(4, [0, 1, 2, 3])
    assert quotient_crossed_set(t) == (t, 0)


def test_order4_non_crossed_quotients():
    bad = [t for t in catalog_tables(4) if t.order == 4 and not validate(t, "crossed").passed]
    assert bad
    for t in bad:
        q, it, proj = quotient_crossed_set(t, return_projection=True)
        assert q.order < t.order and 1 <= it <= t.order
        assert validate(q, "crossed").passed
        assert is_homomorphism(t, q, proj)


def test_quotient_step_projection_and_relation():
    t = FTable.from_rows([[0, 0, 0], [1, 2, 2], [2, 1, 1]])
    assert (1, 2) in related_pairs(t)
    q, p = quotient_step(t)
    assert q.order == 2 and is_homomorphism(t, q, p)


def test_quotient_step_ill_defined_witness():
    # not an f-quandle; the induced operation depends on representatives
    t = FTable.from_rows([[0, 0, 0], [0, 0, 0], [1, 2, 1]])
    with pytest.raises(WellDefinednessError) as e:
        quotient_step(t)
    assert e.value.witness == (2, 0, 2, 1)


def test_quotient_error_when_nothing_merges():
    t = FTable.from_rows([[0, 0, 0], [1, 1, 0], [2, 0, 2]])
    assert not validate(t, "crossed").passed
    with pytest.raises(QuotientError):
        quotient_crossed_set(t)


def universal_property_counterexamples(sources, targets):
    """Homomorphisms X -> C into crossed C that do not factor through the quotient of X."""
    bad = []
    for t in sources:
        q, _, proj = quotient_crossed_set(t, return_projection=True)
        for c in targets:
            for h in itertools.product(range(c.order), repeat=t.order):
                if not is_homomorphism(t, c, h):
                    continue
                induced = {}
                ok = True
                for x in range(t.order):
                    if induced.setdefault(proj(x), h[x]) != h[x]:
                        ok = False
                if ok:
                    ok = is_homomorphism(q, c, [induced[i] for i in range(q.order)])
                if not ok:
                    bad.append((t.rows(), c.rows(), h))
    return bad


def test_universal_property_smoke():
    sources = [t for t in catalog_tables(4) if not validate(t, "crossed").passed]
    targets = [c for c in catalog_tables(3) if validate(c, "crossed").passed]
    assert universal_property_counterexamples(sources, targets) == []
