"""Class diagrams to relational constraint modules, MODs to predicates and commands.

The fact vocabulary is closed: six shapes cover everything a class diagram
can say.  ``dump_module`` / ``dump_predicate`` / ``dump_command`` give a
stable text rendering used by the golden-file tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .frontend.context import bind_pattern
from .model import (
    AssocKind,
    ClassDiagram,
    Kind,
    ModalObjectDiagram,
    Modality,
    ModelError,
    Navigability,
    format_value,
    conforms,
)


@dataclass(frozen=True)
class Signature:
    name: str
    super_name: Optional[str]
    is_abstract: bool
    is_one: bool


@dataclass(frozen=True)
class FieldDecl:
    owner: str
    name: str
    target: str
    relation: str  # association key
    forward: bool  # True when owner is the association's left end


@dataclass(frozen=True)
class AbstractEmpty:
    cls: str


@dataclass(frozen=True)
class SingletonExact:
    cls: str
    n: int = 1


@dataclass(frozen=True)
class InverseSymmetry:
    field_a: str
    field_b: str
    relation: str


@dataclass(frozen=True)
class EndMultiplicity:
    owner: str
    field: str
    lo: int
    hi: Optional[int]
    relation: str
    forward: bool

    def __post_init__(self):
        if self.lo < 0 or (self.hi is not None and self.hi < self.lo):
            raise ModelError(f"bad multiplicity bounds {self.lo}..{self.hi} on {self.owner}.{self.field}")


@dataclass(frozen=True)
class CompositionExclusive:
    part: str
    relations: tuple


@dataclass(frozen=True)
class AttrDomain:
    cls: str
    attribute: str
    type: object


Fact = Union[AbstractEmpty, SingletonExact, InverseSymmetry, EndMultiplicity, CompositionExclusive, AttrDomain]


@dataclass(frozen=True)
class ConstraintModule:
    name: str
    signatures: tuple
    fields: tuple
    facts: tuple
    source: ClassDiagram = field(compare=False, repr=False, default=None)


class PredicateMode(enum.Enum):
    FULL = "FULL"
    PART = "PART"


@dataclass(frozen=True)
class PatternPredicate:
    """What a ground MOD requires of an object model.

    ``links`` holds ``(relation, left var, right var)`` triples.  In FULL
    mode ``link_sets`` additionally fixes, for every var and every field
    of its class, the exact set of partner vars.
    """

    name: str
    mode: PredicateMode
    object_vars: tuple  # (var, class)
    counts: tuple  # (class, n), every declared class
    links: tuple
    attrs: tuple  # (var, attribute, value)
    link_sets: tuple = ()  # (var, field, frozenset of vars); FULL only

    @property
    def universe_exact(self) -> bool:
        return self.mode is PredicateMode.FULL

    def var_class(self, var: str) -> str:
        for v, c in self.object_vars:
            if v == var:
                return c
        raise KeyError(var)


class CommandMode(enum.Enum):
    RUN = "run"
    ASSERT_CHECK = "check"


@dataclass(frozen=True)
class ExactScope:
    counts: tuple  # (class, n) for every declared class

    def as_dict(self) -> dict:
        return dict(self.counts)


@dataclass(frozen=True)
class UniformScope:
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ModelError("scope must be non-negative")


@dataclass(frozen=True)
class Command:
    target: str
    mode: CommandMode
    scope: Union[ExactScope, UniformScope]


def compile_cd(cd: ClassDiagram) -> ConstraintModule:
    sigs = tuple(Signature(c.name, c.super_class, c.is_abstract, c.is_singleton) for c in cd.classes.values())
    fields, facts = [], []
    for c in cd.classes.values():
        if c.is_abstract:
            facts.append(AbstractEmpty(c.name))
    for c in cd.classes.values():
        if c.is_singleton:
            facts.append(SingletonExact(c.name))
    for a in cd.associations:
        fields.append(FieldDecl(a.left, a.role, a.right, a.key, True))
        if a.navigability is Navigability.BI:
            fields.append(FieldDecl(a.right, a.inverse, a.left, a.key, False))
            facts.append(InverseSymmetry(f"{a.left}.{a.role}", f"{a.right}.{a.inverse}", a.key))
        facts.append(EndMultiplicity(a.left, a.role, a.right_mult.lo, a.right_mult.hi, a.key, True))
        facts.append(EndMultiplicity(a.right, a.inverse_field, a.left_mult.lo, a.left_mult.hi, a.key, False))
    parts = {}
    for a in cd.associations:
        if a.kind is AssocKind.COMPOSITION:
            parts.setdefault(a.right, []).append(a.key)
    for part, rels in parts.items():
        facts.append(CompositionExclusive(part, tuple(rels)))
    for c in cd.classes.values():
        for attr, t in c.attributes.items():
            facts.append(AttrDomain(c.name, attr, t))
    return ConstraintModule(cd.name, sigs, tuple(fields), tuple(facts), cd)


def _ground_pattern(mod: ModalObjectDiagram, cd: ClassDiagram):
    if any(True for _ in mod.param_refs()):
        raise ModelError(f"{mod.name}: expand parameters before compiling")
    return bind_pattern(mod, cd)


def _counts(cd: ClassDiagram, classes) -> tuple:
    return tuple((c, sum(1 for x in classes if conforms(cd, x, c))) for c in cd.classes)


def compile_example_predicate(mod: ModalObjectDiagram, cd: ClassDiagram) -> PatternPredicate:
    if mod.kind is not Kind.EXAMPLE or mod.is_partial:
        raise ModelError(f"{mod.name}: FULL predicates are for complete examples")
    om = _ground_pattern(mod, cd)
    return _predicate(mod.name, PredicateMode.FULL, om, cd)


def compile_pattern_predicate(mod: ModalObjectDiagram, cd: ClassDiagram) -> PatternPredicate:
    if mod.kind is Kind.EXAMPLE and not mod.is_partial:
        raise ModelError(f"{mod.name}: PART predicates are for invariants and partial examples")
    om = _ground_pattern(mod, cd)
    return _predicate(mod.name, PredicateMode.PART, om, cd)


def _predicate(name, mode, om, cd) -> PatternPredicate:
    objs = list(om.objects.values())
    vars_ = tuple((o.id, o.cls) for o in objs)
    links = tuple(sorted((l.assoc, l.left, l.right) for l in om.links))
    attrs = tuple((o.id, a, v) for o in objs for a, v in o.attrs.items())
    link_sets = ()
    if mode is PredicateMode.FULL:
        sets = []
        for o in objs:
            for a in cd.associations:
                if conforms(cd, o.cls, a.left):
                    sets.append((o.id, a.role, frozenset(r for k, l, r in links if k == a.key and l == o.id)))
                if conforms(cd, o.cls, a.right):
                    sets.append((o.id, a.inverse_field,
                                 frozenset(l for k, l, r in links if k == a.key and r == o.id)))
        link_sets = tuple(sets)
    return PatternPredicate(name, mode, vars_, _counts(cd, [c for _, c in vars_]), links, attrs, link_sets)


def compute_example_scopes(mod: ModalObjectDiagram, cd: ClassDiagram) -> dict:
    """Exact per-class object counts of an example, superclasses included."""
    classes = [o.cls for o in mod.objects]
    for c in classes:
        if not isinstance(c, str):
            raise ModelError(f"{mod.name}: expand parameters before computing scopes")
    return dict(_counts(cd, classes))


def make_command(mod: ModalObjectDiagram, cd: ClassDiagram, k: Optional[int] = None) -> Command:
    if mod.kind is Kind.EXAMPLE and not mod.is_partial:
        return Command(mod.name, CommandMode.RUN, ExactScope(tuple(compute_example_scopes(mod, cd).items())))
    if k is None:
        raise ModelError(f"{mod.name}: a scope is required for {mod.modality.value} diagrams")
    if mod.is_partial:
        # the witness must at least have room for the pattern itself
        need = max([k, *compute_example_scopes(mod, cd).values()])
        return Command(mod.name, CommandMode.RUN, UniformScope(need))
    if mod.modality is Modality.PI:
        return Command(mod.name, CommandMode.ASSERT_CHECK, UniformScope(k))
    return Command(mod.name, CommandMode.RUN, UniformScope(k))


# ---------------------------------------------------------------------------
# text dumps


def _mult(lo, hi) -> str:
    return f"{lo}..{'*' if hi is None else hi}"


def dump_fact(f) -> str:
    if isinstance(f, AbstractEmpty):
        return f"ABSTRACT_EMPTY {f.cls}"
    if isinstance(f, SingletonExact):
        return f"SINGLETON_EXACT {f.cls} = {f.n}"
    if isinstance(f, InverseSymmetry):
        return f"INVERSE_SYMMETRY {f.field_a} ~ {f.field_b}"
    if isinstance(f, EndMultiplicity):
        return f"END_MULTIPLICITY {f.owner}.{f.field} in {_mult(f.lo, f.hi)}"
    if isinstance(f, CompositionExclusive):
        return f"COMPOSITION_EXCLUSIVE {f.part} via {', '.join(f.relations)}"
    return f"ATTR_DOMAIN {f.cls}.{f.attribute} : {f.type}"


def dump_module(m: ConstraintModule) -> str:
    out = [f"module {m.name}"]
    for s in m.signatures:
        flags = [w for w, on in (("abstract", s.is_abstract), ("one", s.is_one)) if on]
        ext = f" extends {s.super_name}" if s.super_name else ""
        out.append(f"  sig {s.name}{ext}" + (f" [{', '.join(flags)}]" if flags else ""))
    for f in m.fields:
        out.append(f"  field {f.owner}.{f.name} : set {f.target}")
    for f in m.facts:
        out.append(f"  fact {dump_fact(f)}")
    return "\n".join(out) + "\n"


def dump_predicate(p: PatternPredicate) -> str:
    out = [f"pred {p.name} [{p.mode.value}]"]
    for v, c in p.object_vars:
        out.append(f"  var {v} in {c}Only")
    for c, n in p.counts:
        out.append(f"  #{c} = {n}" if p.universe_exact else f"  #pattern {c} = {n}")
    if p.universe_exact:
        out.append("  univ = {" + ", ".join(v for v, _ in p.object_vars) + "}")
        for v, f, targets in p.link_sets:
            out.append(f"  {v}.{f} = " + ("{" + ", ".join(sorted(targets)) + "}" if targets else "none"))
    else:
        if len(p.object_vars) > 1:
            out.append("  distinct " + ", ".join(v for v, _ in p.object_vars))
        for rel, l, r in p.links:
            out.append(f"  ({l}, {r}) in {rel}")
    for v, a, val in p.attrs:
        out.append(f"  {v}.{a} = {format_value(val)}")
    return "\n".join(out) + "\n"


def dump_command(c: Command) -> str:
    if isinstance(c.scope, ExactScope):
        scope = "exactly " + ", ".join(f"{n} {cls}" for cls, n in c.scope.counts)
    else:
        scope = f"for {c.scope.k}"
    return f"{c.mode.value} {c.target} {scope}\n"
