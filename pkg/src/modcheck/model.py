"""Domain types shared across the pipeline.

Class diagrams under test, object models as snapshots, and modal object
diagrams stating what the snapshots must or must not look like.  Everything here
is immutable once constructed; structural queries over class diagrams
live at the bottom of the module.
"""

from __future__ import annotations

import enum
from dataclasses import InitVar, dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, NamedTuple, Optional, Union


class ModelError(ValueError):
    """A domain object violates one of its construction invariants."""


# ---------------------------------------------------------------------------
# Multiplicities and attribute types


@dataclass(frozen=True)
class Multiplicity:
    lo: int = 0
    hi: Optional[int] = None  # None = unbounded

    def __post_init__(self):
        if self.lo < 0:
            raise ModelError(f"multiplicity lower bound {self.lo} is negative")
        if self.hi is not None and self.lo > self.hi:
            raise ModelError(f"multiplicity {self.lo}..{self.hi} has lo > hi")

    def admits(self, n: int) -> bool:
        return n >= self.lo and (self.hi is None or n <= self.hi)

    def __str__(self):
        if self.hi is None:
            return "*" if self.lo == 0 else f"{self.lo}..*"
        if self.lo == self.hi:
            return str(self.lo)
        return f"{self.lo}..{self.hi}"


MANY = Multiplicity(0, None)


class Prim(enum.Enum):
    INT = "int"
    BOOL = "boolean"
    TEXT = "String"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EnumType:
    name: str

    def __str__(self):
        return self.name


AttrType = Union[Prim, EnumType]


# ---------------------------------------------------------------------------
# Values


@dataclass(frozen=True, order=True)
class EnumLit:
    enum: str
    literal: str

    def __str__(self):
        return self.literal


@dataclass(frozen=True, order=True)
class Symbol:
    """A bare identifier in value position, not yet bound to an enumeration."""

    name: str

    def __str__(self):
        return self.name


# int | bool | str | EnumLit; Symbol only before binding
Value = Union[int, bool, str, EnumLit, Symbol]


def value_key(v) -> tuple:
    """Total order over values of mixed type (bool sorts apart from int)."""
    if isinstance(v, bool):
        return (0, int(v), "")
    if isinstance(v, int):
        return (1, v, "")
    if isinstance(v, str):
        return (2, 0, v)
    if isinstance(v, EnumLit):
        return (3, 0, f"{v.enum}.{v.literal}")
    return (4, 0, str(v))


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'
    return str(v)


FRESH_TEXT = "$fresh"


@dataclass(frozen=True)
class Domains:
    """Finite value domains used when grounding or enumerating.

    ``text_symbols`` is the interned text vocabulary; the distinguished
    fresh symbol is always added.  ``None`` leaves text unbounded, which
    membership checking tolerates but enumeration rejects.
    """

    int_lo: int = -128
    int_hi: int = 127
    text_symbols: Optional[tuple] = ()

    def __post_init__(self):
        if self.int_lo > self.int_hi:
            raise ModelError(f"empty integer range {self.int_lo}..{self.int_hi}")

    def with_text(self, symbols) -> "Domains":
        merged = tuple(sorted(set(self.text_symbols or ()) | set(symbols)))
        return Domains(self.int_lo, self.int_hi, merged)

    def values(self, cd: "ClassDiagram", t: AttrType) -> tuple:
        if t is Prim.INT:
            return tuple(range(self.int_lo, self.int_hi + 1))
        if t is Prim.BOOL:
            return (False, True)
        if t is Prim.TEXT:
            if self.text_symbols is None:
                raise ModelError("text domain is unbounded (no interned symbols)")
            return tuple(s for s in self.text_symbols if s != FRESH_TEXT) + (FRESH_TEXT,)
        return tuple(EnumLit(t.name, lit) for lit in cd.enums[t.name])

    def admits(self, cd: "ClassDiagram", t: AttrType, v) -> bool:
        if t is Prim.INT:
            return isinstance(v, int) and not isinstance(v, bool) and self.int_lo <= v <= self.int_hi
        if t is Prim.BOOL:
            return isinstance(v, bool)
        if t is Prim.TEXT:
            return isinstance(v, str) and (self.text_symbols is None or v == FRESH_TEXT
                                           or v in self.text_symbols)
        return isinstance(v, EnumLit) and v.enum == t.name and v.literal in cd.enums.get(t.name, ())


DEFAULT_DOMAINS = Domains()


# ---------------------------------------------------------------------------
# Class diagrams


class AssocKind(enum.Enum):
    PLAIN = "plain"
    AGGREGATION = "aggregation"
    COMPOSITION = "composition"


class Navigability(enum.Enum):
    UNI = "->"
    BI = "<->"


@dataclass(frozen=True)
class ClassDecl:
    name: str
    is_abstract: bool = False
    is_singleton: bool = False
    super_class: Optional[str] = None
    interfaces: tuple = ()
    attributes: Mapping[str, AttrType] = field(default_factory=dict)

    def __post_init__(self):
        if self.is_abstract and self.is_singleton:
            raise ModelError(f"class {self.name} cannot be both abstract and singleton")
        object.__setattr__(self, "interfaces", tuple(self.interfaces))
        object.__setattr__(self, "attributes", dict(self.attributes))


@dataclass(frozen=True)
class AssociationDecl:
    """A binary association ``left -- right``.

    ``role`` is how a left object names its right partners and
    ``right_mult`` bounds how many it has; ``inverse``/``left_mult`` are
    the same from the right end.
    """

    left: str
    right: str
    role: str
    inverse: Optional[str] = None
    left_mult: Multiplicity = MANY
    right_mult: Multiplicity = MANY
    name: Optional[str] = None
    kind: AssocKind = AssocKind.PLAIN
    navigability: Navigability = Navigability.BI

    @property
    def key(self) -> str:
        return self.name or f"{self.left}.{self.role}"

    @property
    def inverse_field(self) -> str:
        """Field name of the right-to-left direction (hidden for UNI)."""
        if self.navigability is Navigability.BI and self.inverse:
            return self.inverse
        return f"~{self.role}"


@dataclass(frozen=True)
class ClassDiagram:
    name: str
    classes: Mapping[str, ClassDecl] = field(default_factory=dict)
    interfaces: tuple = ()
    enums: Mapping[str, tuple] = field(default_factory=dict)
    associations: tuple = ()
    check: InitVar[bool] = True  # False lets a frontend collect every problem itself

    def __post_init__(self, check):
        object.__setattr__(self, "classes", dict(self.classes))
        object.__setattr__(self, "interfaces", tuple(self.interfaces))
        object.__setattr__(self, "enums", {k: tuple(v) for k, v in self.enums.items()})
        object.__setattr__(self, "associations", tuple(self.associations))
        if check:
            for problem in self.problems():
                raise ModelError(problem.message)

    def problems(self) -> Iterator["DiagramProblem"]:
        """Yield every context-condition violation, in a stable order."""
        structural = list(self._declaration_problems())
        yield from structural
        if any(p.code in ("unknown-superclass", "inheritance-cycle") for p in structural):
            return  # chain-walking checks below need an acyclic, closed hierarchy
        yield from self._member_problems()

    def _declaration_problems(self):
        seen = {}
        for kind, names in (("class", self.classes), ("interface", self.interfaces),
                            ("enum", self.enums)):
            for n in names:
                if n in seen:
                    yield DiagramProblem("duplicate-name", (kind, n),
                                         f"{n} declared as both {seen[n]} and {kind}")
                seen.setdefault(n, kind)
        for e, lits in self.enums.items():
            if len(set(lits)) != len(lits):
                yield DiagramProblem("duplicate-literal", ("enum", e), f"duplicate literal in enum {e}")
        for c in self.classes.values():
            if c.super_class is not None and c.super_class not in self.classes:
                yield DiagramProblem("unknown-superclass", ("class", c.name),
                                     f"unknown superclass {c.super_class}")
            for i in c.interfaces:
                if i not in self.interfaces:
                    yield DiagramProblem("unknown-interface", ("class", c.name), f"unknown interface {i}")
            for a, t in c.attributes.items():
                if isinstance(t, EnumType) and t.name not in self.enums:
                    yield DiagramProblem("unknown-type", ("class", c.name),
                                         f"attribute {a} of {c.name} has unknown type {t.name}")
        for c in self.classes:
            chain, cur = [], c
            while cur is not None and cur in self.classes:
                if cur in chain:
                    yield DiagramProblem("inheritance-cycle", ("class", c), f"inheritance cycle through {c}")
                    break
                chain.append(cur)
                cur = self.classes[cur].super_class

    def _member_problems(self):
        for c in self.classes:
            names = {}
            for k in superclasses_of(self, c):
                for a in self.classes[k].attributes:
                    if a in names:
                        yield DiagramProblem("duplicate-attribute", ("class", c),
                                             f"attribute {a} of {c} clashes with {names[a]}.{a}")
                    names[a] = k
        keys = set()
        for i, a in enumerate(self.associations):
            for end in (a.left, a.right):
                if end not in self.classes and end not in self.interfaces:
                    yield DiagramProblem("unknown-class", ("assoc", i), f"association end {end} is undeclared")
            if a.navigability is Navigability.BI and not a.inverse:
                yield DiagramProblem("missing-inverse", ("assoc", i),
                                     f"bidirectional association {a.key} needs an inverse role")
            if a.key in keys:
                yield DiagramProblem("duplicate-association", ("assoc", i), f"duplicate association {a.key}")
            keys.add(a.key)
        for c in self.classes:
            roles = {}
            for i, a in enumerate(self.associations):
                for role, end in self._navigable_roles(a):
                    if role and conforms(self, c, end):
                        if role in roles and roles[role] != i:
                            yield DiagramProblem("duplicate-role", ("assoc", i),
                                                 f"role {role} is ambiguous for class {c}")
                        roles[role] = i

    @staticmethod
    def _navigable_roles(a: AssociationDecl):
        yield a.role, a.left
        if a.navigability is Navigability.BI:
            yield a.inverse, a.right

    # cached structural views; all safe because the diagram is immutable

    @cached_property
    def concrete_classes(self) -> tuple:
        return tuple(c for c, d in self.classes.items() if not d.is_abstract)

    @cached_property
    def _extents(self) -> dict:
        out = {n: [] for n in list(self.classes) + list(self.interfaces)}
        for c in self.concrete_classes:
            for sup in superclasses_of(self, c):
                out[sup].append(c)
                for i in self.classes[sup].interfaces:
                    if c not in out[i]:
                        out[i].append(c)
        return {k: tuple(v) for k, v in out.items()}

    def association(self, key: str) -> AssociationDecl:
        for a in self.associations:
            if a.key == key:
                return a
        raise ModelError(f"unknown association {key}")

    def resolve_role(self, cls: str, role: str):
        """Find the association a ``cls`` object navigates by ``role``.

        Returns ``(association, forward)``; ``forward`` is False when the
        role is the inverse end, i.e. the navigating object is the right end.
        """
        for a in self.associations:
            if a.role == role and conforms(self, cls, a.left):
                return a, True
            if (a.navigability is Navigability.BI and a.inverse == role
                    and conforms(self, cls, a.right)):
                return a, False
        return None


@dataclass(frozen=True)
class DiagramProblem:
    code: str
    subject: tuple
    message: str


# ---------------------------------------------------------------------------
# Object models


class Link(NamedTuple):
    assoc: str
    left: str
    right: str


@dataclass(frozen=True)
class ObjectInstance:
    id: str
    cls: str
    attrs: Mapping[str, Value] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "attrs", dict(self.attrs))


@dataclass(frozen=True)
class ObjectModel:
    """A snapshot: objects keyed by (display-only) id plus a set of links.

    Also used as an embedding pattern, in which case attribute maps may
    be partial.
    """

    objects: Mapping[str, ObjectInstance] = field(default_factory=dict)
    links: frozenset = frozenset()

    def __post_init__(self):
        objs = self.objects
        if not isinstance(objs, Mapping):
            objs = {o.id: o for o in objs}
        object.__setattr__(self, "objects", dict(objs))
        object.__setattr__(self, "links", frozenset(Link(*l) for l in self.links))
        for oid, o in self.objects.items():
            if oid != o.id:
                raise ModelError(f"object keyed {oid} has id {o.id}")
        for l in self.links:
            for end in (l.left, l.right):
                if end not in self.objects:
                    raise ModelError(f"link {l.assoc} references unknown object {end}")

    def __len__(self):
        return len(self.objects)

    def renamed(self, mapping: Mapping[str, str]) -> "ObjectModel":
        objs = {mapping[o.id]: ObjectInstance(mapping[o.id], o.cls, o.attrs) for o in self.objects.values()}
        links = {Link(l.assoc, mapping[l.left], mapping[l.right]) for l in self.links}
        return ObjectModel(objs, links)


# ---------------------------------------------------------------------------
# Modal object diagrams


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Kind(enum.Enum):
    EXAMPLE = "example"
    INVARIANT = "invariant"


class Modality(enum.Enum):
    PE = "PE"
    NE = "NE"
    PI = "PI"
    NI = "NI"
    PPE = "PPE"


@dataclass(frozen=True)
class ParamRef:
    name: str

    def __str__(self):
        return f"<{self.name}>"


@dataclass(frozen=True)
class LiteralSet:
    values: tuple


@dataclass(frozen=True)
class IntRange:
    lo: int
    hi: int


@dataclass(frozen=True)
class ClassSet:
    classes: tuple


@dataclass(frozen=True)
class ParameterDecl:
    name: str
    domain: Union[LiteralSet, IntRange, ClassSet]

    def __post_init__(self):
        d = self.domain
        if isinstance(d, IntRange) and d.lo > d.hi:
            raise ModelError(f"parameter {self.name}: empty range {d.lo}..{d.hi}")
        if isinstance(d, LiteralSet) and not d.values:
            raise ModelError(f"parameter {self.name}: empty domain")
        if isinstance(d, ClassSet) and not d.classes:
            raise ModelError(f"parameter {self.name}: empty class set")

    @property
    def is_type_param(self) -> bool:
        return isinstance(self.domain, ClassSet)

    def values(self) -> tuple:
        d = self.domain
        if isinstance(d, IntRange):
            return tuple(range(d.lo, d.hi + 1))
        if isinstance(d, LiteralSet):
            return tuple(d.values)
        return tuple(d.classes)


@dataclass(frozen=True)
class PatternObject:
    id: str
    cls: Union[str, ParamRef]
    attrs: Mapping[str, Union[Value, ParamRef]] = field(default_factory=dict)
    pos: tuple = field(default=(0, 0), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "attrs", dict(self.attrs))


@dataclass(frozen=True)
class PatternLink:
    role: str
    source: str
    target: str
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class ModalObjectDiagram:
    name: str
    polarity: Polarity = Polarity.POSITIVE
    kind: Kind = Kind.EXAMPLE
    is_partial: bool = False
    parameters: tuple = ()
    objects: tuple = ()
    links: tuple = ()
    package: Optional[str] = None
    pos: tuple = field(default=(0, 0), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "parameters", tuple(self.parameters))
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "links", tuple(self.links))
        if self.is_partial and (self.polarity is not Polarity.POSITIVE or self.kind is not Kind.EXAMPLE):
            raise ModelError(f"{self.name}: partial is only allowed on positive examples")
        ids = [o.id for o in self.objects]
        if len(set(ids)) != len(ids):
            raise ModelError(f"{self.name}: duplicate object id")
        for l in self.links:
            for end in (l.source, l.target):
                if end not in ids:
                    raise ModelError(f"{self.name}: link references unknown object {end}")
        declared = {p.name for p in self.parameters}
        if len(declared) != len(self.parameters):
            raise ModelError(f"{self.name}: duplicate parameter")
        for ref in self.param_refs():
            if ref not in declared:
                raise ModelError(f"{self.name}: undeclared parameter {ref}")

    def param_refs(self) -> Iterator[str]:
        for o in self.objects:
            if isinstance(o.cls, ParamRef):
                yield o.cls.name
            for v in o.attrs.values():
                if isinstance(v, ParamRef):
                    yield v.name

    @property
    def modality(self) -> Modality:
        if self.is_partial:
            return Modality.PPE
        if self.kind is Kind.EXAMPLE:
            return Modality.PE if self.polarity is Polarity.POSITIVE else Modality.NE
        return Modality.PI if self.polarity is Polarity.POSITIVE else Modality.NI

    @property
    def needs_scope(self) -> bool:
        return self.kind is Kind.INVARIANT or self.is_partial

    def object(self, oid: str) -> PatternObject:
        for o in self.objects:
            if o.id == oid:
                return o
        raise KeyError(oid)


@dataclass(frozen=True)
class Specification:
    mods: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "mods", tuple(self.mods))
        names = [m.name for m in self.mods]
        if len(set(names)) != len(names):
            raise ModelError("MOD names must be unique within a specification")

    def _select(self, modality):
        return tuple(m for m in self.mods if m.modality is modality)

    PE = property(lambda self: self._select(Modality.PE))
    NE = property(lambda self: self._select(Modality.NE))
    PI = property(lambda self: self._select(Modality.PI))
    NI = property(lambda self: self._select(Modality.NI))
    PPE = property(lambda self: self._select(Modality.PPE))


# ---------------------------------------------------------------------------
# Structural queries


def superclasses_of(cd: ClassDiagram, c: str) -> list:
    """``c`` followed by its superclass chain up to the root."""
    if c not in cd.classes:
        raise ModelError(f"unknown class {c}")
    chain = []
    while c is not None:
        if c in chain:
            raise ModelError(f"inheritance cycle through {c}")
        chain.append(c)
        c = cd.classes[c].super_class
        if c is not None and c not in cd.classes:
            raise ModelError(f"unknown superclass {c}")
    return chain


def all_attributes(cd: ClassDiagram, c: str) -> dict:
    """Own and inherited attributes, root-most first."""
    out = {}
    for k in reversed(superclasses_of(cd, c)):
        for a, t in cd.classes[k].attributes.items():
            if a in out:
                raise ModelError(f"attribute {a} of {c} is declared twice along the inheritance chain")
            out[a] = t
    return out


def concrete_extent_classes(cd: ClassDiagram, c: str) -> set:
    """Non-abstract classes whose instances count as ``c`` instances."""
    if c not in cd.classes and c not in cd.interfaces:
        raise ModelError(f"unknown class or interface {c}")
    return set(cd._extents[c])


def conforms(cd: ClassDiagram, cls: str, target: str) -> bool:
    """Whether ``cls`` reaches ``target`` by inheritance or implementation."""
    if cls not in cd.classes:
        return False
    for k in superclasses_of(cd, cls):
        if k == target or target in cd.classes[k].interfaces:
            return True
    return False
