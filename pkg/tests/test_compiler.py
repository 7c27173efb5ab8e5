from pathlib import Path

import pytest

from modcheck.compiler import (
    AbstractEmpty,
    AttrDomain,
    CommandMode,
    CompositionExclusive,
    EndMultiplicity,
    ExactScope,
    InverseSymmetry,
    PredicateMode,
    SingletonExact,
    UniformScope,
    compile_cd,
    compile_example_predicate,
    compile_pattern_predicate,
    compute_example_scopes,
    dump_command,
    dump_module,
    dump_predicate,
    make_command,
)
from modcheck.frontend import parse_cd
from modcheck.model import ModelError, Prim

from conftest import load_mod, partial

GOLDEN = Path(__file__).parent / "golden"


def golden(name):
    return (GOLDEN / name).read_text()


def test_cd2_module_golden(cds):
    assert dump_module(compile_cd(cds["cd2"])) == golden("cd2.module")


def test_full_predicate_golden(cds, ms2):
    cd2, m24 = cds["cd2"], ms2[3]
    text = dump_predicate(compile_example_predicate(m24, cd2)) + "\n" + dump_command(make_command(m24, cd2)) + "\n"
    assert text == golden("mod2_4.pred")


def test_part_predicate_golden(cds, ms2):
    cd2, m21 = cds["cd2"], ms2[0]
    text = dump_predicate(compile_pattern_predicate(m21, cd2)) + "\n" + dump_command(make_command(m21, cd2, 6)) + "\n"
    assert text == golden("mod2_1.pred")


def test_partial_example_golden(cds, ms1):
    cd2, m = cds["cd2"], partial(ms1[0])
    text = dump_predicate(compile_pattern_predicate(m, cd2)) + "\n" + dump_command(make_command(m, cd2, 2)) + "\n"
    assert text == golden("mod1_1_partial.pred")


def test_fact_kinds(cds):
    facts = compile_cd(cds["cd2"]).facts
    assert AbstractEmpty("Vehicle") in facts
    assert SingletonExact("Manager") in facts
    assert InverseSymmetry("Driver.drives", "Vehicle.drivenBy", "Driver.drives") in facts
    assert EndMultiplicity("Driver", "drives", 1, 2, "Driver.drives", True) in facts
    assert EndMultiplicity("Manager", "manages", 1, None, "Employee.managedBy", False) in facts


def test_attributes_and_composition():
    cd = parse_cd("""classdiagram c { class W { int n; } class P;
        association <<composition>> W -> P { role: parts; mult: *; inverseMult: 0..1; } }""")
    m = compile_cd(cd)
    assert AttrDomain("W", "n", Prim.INT) in m.facts
    assert CompositionExclusive("P", ("W.parts",)) in m.facts
    # unidirectional: one field, both ends still constrained
    assert [f.name for f in m.fields] == ["parts"]
    assert sum(isinstance(f, EndMultiplicity) for f in m.facts) == 2


def test_example_scopes(cds, ms2):
    assert compute_example_scopes(ms2[3], cds["cd2"]) == {
        "Employee": 3, "Driver": 1, "Manager": 1, "Vehicle": 0, "Car": 0, "Bus": 0, "SportsCar": 0}


def test_commands(cds, ms1, ms2, ni):
    cd2 = cds["cd2"]
    pe = make_command(ms1[0], cd2)
    assert pe.mode is CommandMode.RUN and isinstance(pe.scope, ExactScope)
    assert pe.scope.as_dict()["Vehicle"] == 1
    pi = make_command(ms2[0], cd2, 4)
    assert (pi.mode, pi.scope) == (CommandMode.ASSERT_CHECK, UniformScope(4))
    nimod = make_command(ni, cds["cda"], 9)
    assert (nimod.mode, nimod.scope) == (CommandMode.RUN, UniformScope(9))
    # a partial example always leaves room for its own pattern
    assert make_command(partial(ms2[3]), cd2, 1).scope == UniformScope(3)
    with pytest.raises(ModelError):
        make_command(ms2[0], cd2)
    with pytest.raises(ModelError):
        UniformScope(-1)


def test_predicate_mode_guards(cds, ms2):
    cd2 = cds["cd2"]
    with pytest.raises(ModelError):
        compile_example_predicate(ms2[0], cd2)
    with pytest.raises(ModelError):
        compile_pattern_predicate(ms2[3], cd2)
    assert compile_pattern_predicate(ms2[0], cd2).mode is PredicateMode.PART
    assert compile_example_predicate(ms2[3], cd2).universe_exact


def test_parameters_must_be_expanded(cds):
    m31 = load_mod("ms3", "mod3.1")
    with pytest.raises(ModelError):
        compile_pattern_predicate(m31, cds["cd3"])
    with pytest.raises(ModelError):
        compute_example_scopes(load_mod("ms3", "mod3.2"), cds["cd3"])
