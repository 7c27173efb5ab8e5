import pytest

from modcheck.model import (
    AssociationDecl,
    ClassDecl,
    ClassDiagram,
    Domains,
    EnumLit,
    EnumType,
    IntRange,
    Kind,
    LiteralSet,
    Modality,
    ModalObjectDiagram,
    ModelError,
    Multiplicity,
    ObjectInstance,
    ObjectModel,
    ParameterDecl,
    PatternLink,
    PatternObject,
    Polarity,
    Prim,
    Specification,
    all_attributes,
    concrete_extent_classes,
    conforms,
    superclasses_of,
)


def test_multiplicity_rendering_and_bounds():
    assert str(Multiplicity(0, None)) == "*"
    assert str(Multiplicity(1, None)) == "1..*"
    assert str(Multiplicity(5, 5)) == "5"
    assert str(Multiplicity(1, 2)) == "1..2"
    assert Multiplicity(1, 2).admits(2) and not Multiplicity(1, 2).admits(3)
    with pytest.raises(ModelError):
        Multiplicity(3, 1)
    with pytest.raises(ModelError):
        Multiplicity(-1, None)


def test_structural_queries(cds):
    cd2 = cds["cd2"]
    assert superclasses_of(cd2, "Manager") == ["Manager", "Employee"]
    assert concrete_extent_classes(cd2, "Vehicle") == {"Car", "Bus", "SportsCar"}
    assert concrete_extent_classes(cd2, "Employee") == {"Employee", "Driver", "Manager"}
    assert conforms(cd2, "Manager", "Employee") and not conforms(cd2, "Employee", "Manager")
    assert cd2.concrete_classes == ("Employee", "Driver", "Manager", "Car", "Bus", "SportsCar")


def test_inherited_attributes_root_first(cds):
    cd3 = cds["cd3"]
    assert list(all_attributes(cd3, "Driver")) == ["age", "experience"]
    assert all_attributes(cd3, "SportsCar") == {"enginePower": EnumType("Power")}
    assert all_attributes(cd3, "Car") == {}


@pytest.mark.parametrize("classes, code", [
    ({"A": ClassDecl("A", super_class="B")}, "unknown superclass"),
    ({"A": ClassDecl("A", super_class="B"), "B": ClassDecl("B", super_class="A")}, "cycle"),
    ({"A": ClassDecl("A", attributes={"x": EnumType("Nope")})}, "unknown type"),
    ({"A": ClassDecl("A", attributes={"x": Prim.INT}),
      "B": ClassDecl("B", super_class="A", attributes={"x": Prim.INT})}, "clashes"),
])
def test_ill_formed_diagrams_rejected(classes, code):
    with pytest.raises(ModelError, match=code):
        ClassDiagram("bad", classes)


def test_association_problems():
    classes = {"A": ClassDecl("A"), "B": ClassDecl("B")}
    with pytest.raises(ModelError, match="undeclared"):
        ClassDiagram("bad", classes, associations=[AssociationDecl("A", "C", "cs", "a")])
    with pytest.raises(ModelError, match="inverse"):
        ClassDiagram("bad", classes, associations=[AssociationDecl("A", "B", "bs")])
    with pytest.raises(ModelError, match="ambiguous"):
        ClassDiagram("bad", classes, associations=[AssociationDecl("A", "B", "bs", "a"),
                                                   AssociationDecl("A", "B", "bs", "a2", name="other")])


def test_abstract_singleton_rejected():
    with pytest.raises(ModelError):
        ClassDecl("X", is_abstract=True, is_singleton=True)


def test_domains():
    d = Domains(0, 3, ("b", "a"))
    assert d.values(None, Prim.INT) == (0, 1, 2, 3)
    assert d.values(None, Prim.BOOL) == (False, True)
    assert d.values(None, Prim.TEXT) == ("b", "a", "$fresh")
    assert not d.admits(None, Prim.INT, True)
    assert not d.admits(None, Prim.INT, 4)
    assert d.with_text(["c"]).text_symbols == ("a", "b", "c")
    with pytest.raises(ModelError):
        Domains(2, 1)
    with pytest.raises(ModelError):
        Domains(text_symbols=None).values(None, Prim.TEXT)


def test_enum_domain(cds):
    d = Domains()
    assert d.values(cds["cd3"], EnumType("Level"))[0] == EnumLit("Level", "novice")
    assert d.admits(cds["cd3"], EnumType("Power"), EnumLit("Power", "high"))
    assert not d.admits(cds["cd3"], EnumType("Power"), EnumLit("Level", "novice"))


def test_object_model_invariants():
    with pytest.raises(ModelError):
        ObjectModel({"a": ObjectInstance("b", "A")})
    with pytest.raises(ModelError):
        ObjectModel([ObjectInstance("a", "A")], [("r", "a", "z")])
    om = ObjectModel([ObjectInstance("a", "A"), ObjectInstance("b", "B")], [("r", "a", "b")])
    assert len(om) == 2
    assert om.renamed({"a": "x", "b": "y"}).links == {("r", "x", "y")}


def test_mod_validation_and_modality():
    objs = (PatternObject("d", "Driver"),)
    assert ModalObjectDiagram("m", objects=objs).modality is Modality.PE
    assert ModalObjectDiagram("m", Polarity.NEGATIVE, Kind.INVARIANT, objects=objs).modality is Modality.NI
    assert ModalObjectDiagram("m", is_partial=True, objects=objs).modality is Modality.PPE
    with pytest.raises(ModelError):
        ModalObjectDiagram("m", Polarity.NEGATIVE, is_partial=True)
    with pytest.raises(ModelError):
        ModalObjectDiagram("m", objects=objs + objs)
    with pytest.raises(ModelError):
        ModalObjectDiagram("m", objects=objs, links=(PatternLink("drives", "d", "x"),))
    with pytest.raises(ModelError):
        Specification([ModalObjectDiagram("m"), ModalObjectDiagram("m")])


def test_parameter_domains():
    assert ParameterDecl("a", IntRange(1, 3)).values() == (1, 2, 3)
    with pytest.raises(ModelError):
        ParameterDecl("a", IntRange(3, 1))
    with pytest.raises(ModelError):
        ParameterDecl("a", LiteralSet(()))
