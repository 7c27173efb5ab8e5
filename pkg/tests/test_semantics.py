import pytest

from modcheck.frontend import bind_pattern, parse_cd
from modcheck.model import Domains, EnumLit, ModelError, ObjectInstance, ObjectModel, Prim
from modcheck.semantics import (
    Embedding,
    canonical_form,
    complete_attributes,
    embeds,
    enumerate_models,
    is_member,
    object_id,
    per_class_size,
)

EMPTY = ObjectModel({}, ())


def om(objects, links=()):
    return ObjectModel([ObjectInstance(i, c, a) for i, c, *rest in objects for a in [rest[0] if rest else {}]],
                       links)


def test_corpus_example_membership(cds, ms1, ms2):
    assert is_member(bind_pattern(ms1[0], cds["cd1"]), cds["cd1"])
    result = is_member(bind_pattern(ms2[3], cds["cd2"]), cds["cd2"])
    assert not result.holds
    assert any(v.rule == "multiplicity" and v.subject == "jacob" and "drives" in v.detail
               for v in result.violations)


def test_empty_model(cds):
    assert is_member(EMPTY, cds["cd1"]).holds
    result = is_member(EMPTY, cds["cd2"])
    assert [(v.rule, v.subject) for v in result.violations] == [("singleton", "Manager")]
    assert bool(result) is False


def test_extra_attribute_rejected():
    cd = parse_cd("classdiagram c { class Driver { String address; } }")
    d = Domains(text_symbols=("x",))
    assert is_member(om([("d", "Driver", {"address": "x"})]), cd, d)
    result = is_member(om([("d", "Driver", {"address": "x", "salary": 3})]), cd, d)
    assert [v.rule for v in result.violations] == ["extra-attribute"]
    result = is_member(om([("d", "Driver")]), cd, d)
    assert [v.rule for v in result.violations] == ["missing-attribute"]
    result = is_member(om([("d", "Driver", {"address": 3})]), cd, d)
    assert [v.rule for v in result.violations] == ["attribute-value"]


def test_membership_rules(cds):
    cd1 = cds["cd1"]
    assert [v.rule for v in is_member(om([("v", "Vehicle")]), cd1).violations] == ["abstract-instance"]
    bad_link = om([("d", "Driver"), ("m", "Manager")], [("Driver.drives", "d", "m")])
    assert "link-type" in {v.rule for v in is_member(bad_link, cd1).violations}
    with pytest.raises(ModelError):
        is_member(om([("x", "Nope")]), cd1)
    with pytest.raises(ModelError):
        is_member(om([("d", "Driver"), ("c", "Car")], [("flies", "d", "c")]), cd1)


def test_multiplicity_applies_to_subclasses(cds):
    cd2 = cds["cd2"]
    lone = om([("m", "Manager")])
    result = is_member(lone, cd2)
    assert [v.rule for v in result.violations] == ["multiplicity"]
    selfmanaged = om([("m", "Manager")], [("Employee.managedBy", "m", "m")])
    assert is_member(selfmanaged, cd2)


def test_singleton_counts_subclasses():
    cd = parse_cd("classdiagram c { singleton class S; class T extends S; }")
    assert not is_member(om([("s", "S"), ("t", "T")]), cd)
    assert is_member(om([("t", "T")]), cd)


def test_composition_exclusive():
    cd = parse_cd("""classdiagram c { class W; class P;
        association <<composition>> W -> P { role: parts; mult: *; inverseMult: *; } }""")
    shared = om([("w1", "W"), ("w2", "W"), ("p", "P")], [("W.parts", "w1", "p"), ("W.parts", "w2", "p")])
    assert [v.rule for v in is_member(shared, cd).violations] == ["composition"]


def test_embedding_examples(cds, ms2):
    cd2 = cds["cd2"]
    fig5 = om([("sara", "Manager"), ("adam", "Employee"), ("c1", "Car"), ("c2", "Car")],
              [("Employee.managedBy", "sara", "sara"), ("Employee.managedBy", "adam", "sara")])
    assert embeds(bind_pattern(ms2[0], cd2), fig5) is None
    three = om([("a", "Manager"), ("b", "Manager"), ("c", "Manager")],
               [("Employee.managedBy", "a", "b"), ("Employee.managedBy", "b", "c")])
    e = embeds(bind_pattern(ms2[1], cd2), three)
    assert e is not None and len(set(e.mapping.values())) == 2
    drivers = om([("d1", "Driver"), ("d2", "Driver")])
    assert embeds(om([("x", "Employee")]), drivers) is None
    assert embeds(om([("x", "Driver")]), drivers) is not None
    with pytest.raises(ModelError):
        embeds(om([("x", "Nope")]), drivers, cd2)


def test_embedding_is_injective_and_preserves_links():
    host = om([("d", "Driver"), ("c", "Car")], [("Driver.drives", "d", "c")])
    assert embeds(om([("a", "Driver"), ("b", "Driver")]), host) is None
    assert embeds(om([("a", "Driver"), ("b", "Car")], [("Driver.drives", "b", "a")]), host) is None
    loop = om([("a", "Driver")], [("x", "a", "a")])
    assert embeds(loop, om([("d", "Driver"), ("e", "Driver")], [("x", "d", "e")])) is None


def test_embedding_attributes():
    host = om([("d", "Driver", {"age": 30, "senior": True})])
    assert embeds(om([("x", "Driver", {"age": 30})]), host) is not None
    assert embeds(om([("x", "Driver", {"age": 31})]), host) is None
    assert embeds(om([("x", "Driver", {"senior": 1})]), host) is None  # True is not the integer 1


def test_identity_and_composition():
    p = om([("a", "A"), ("b", "B")], [("r", "a", "b")])
    assert embeds(p, p).mapping == {"a": "a", "b": "b"}
    e = Embedding({"a": "x"}).then(Embedding({"x": "y"}))
    assert e("a") == "y"


def test_per_class_size(cds, ms2):
    assert per_class_size(bind_pattern(ms2[3], cds["cd2"]), cds["cd2"]) == {
        "Employee": 3, "Driver": 1, "Manager": 1, "Vehicle": 0, "Car": 0, "Bus": 0, "SportsCar": 0}
    assert set(per_class_size(EMPTY, cds["cd1"]).values()) == {0}
    assert per_class_size(om([("a", "Car"), ("b", "Car"), ("c", "Bus")]), cds["cd1"]) == {
        "Driver": 0, "Manager": 0, "Vehicle": 3, "Car": 2, "Bus": 1}


def test_complete_attributes_fills_first_value(cds):
    driver = om([("d", "Driver", {"age": 40})])
    full = complete_attributes(driver, cds["cd3"])
    assert full.objects["d"].attrs == {"age": 40, "experience": EnumLit("Level", "novice")}


def test_canonical_form_ignores_ids():
    a = om([("x", "A"), ("y", "A")], [("r", "x", "y")])
    b = om([("p", "A"), ("q", "A")], [("r", "q", "p")])
    c = om([("p", "A"), ("q", "A")], [("r", "q", "q")])
    assert canonical_form(a) == canonical_form(b) != canonical_form(c)


def test_enumeration_basics(cds):
    assert list(enumerate_models(cds["cd1"], 0)) == [EMPTY]
    assert list(enumerate_models(cds["cd2"], 0)) == []
    assert all(len(m) for m in enumerate_models(cds["cd2"], 2))
    assert len(list(enumerate_models(cds["cd1"], 2))) == 160
    assert len(list(enumerate_models(cds["cd1"], 2, limit=7))) == 7
    with pytest.raises(ValueError):
        next(enumerate_models(cds["cd1"], -1))


def test_enumeration_deterministic(cds):
    first = [canonical_form(m) for m in enumerate_models(cds["cd2"], 2)]
    assert first == [canonical_form(m) for m in enumerate_models(cds["cd2"], 2)]
    assert len(first) == len(set(first))
    sizes = [len(m) for m in enumerate_models(cds["cd2"], 2)]
    assert sizes == sorted(sizes)


def test_enumeration_respects_scope(cds):
    for m in enumerate_models(cds["cd2"], 2):
        assert max(per_class_size(m, cds["cd2"]).values()) <= 2


def test_enumeration_with_attributes():
    cd = parse_cd("classdiagram c { class A { boolean b; int n; } }")
    models = list(enumerate_models(cd, 2, domains=Domains(0, 1)))
    # multisets of size <= 2 over 4 attribute tuples: 1 + 4 + 10
    assert len(models) == 15


def test_text_attributes_need_interning():
    cd = parse_cd("classdiagram c { class A { String s; } }")
    with pytest.raises(ModelError):
        list(enumerate_models(cd, 1, domains=Domains(text_symbols=None)))
    assert len(list(enumerate_models(cd, 1, domains=Domains(text_symbols=("a",))))) == 3


def test_cda_below_ten_has_no_two_c1(cds):
    cda = cds["cda"]
    for m in enumerate_models(cda, 9):
        assert per_class_size(m, cda)["C1"] < 2


def test_object_ids():
    assert object_id("SportsCar", 2) == "sportsCar_2"
