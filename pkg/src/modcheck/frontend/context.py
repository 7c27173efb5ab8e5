"""Context conditions of a MOD against a class diagram, and binding.

Binding turns a ground (parameter-free) MOD into the object-model shaped
pattern the rest of the pipeline works on: enum symbols become enum
literals and role-named links become association links.
"""

from __future__ import annotations

from ..model import (
    ClassDiagram,
    ClassSet,
    EnumLit,
    EnumType,
    Kind,
    Link,
    ModalObjectDiagram,
    ModelError,
    ObjectInstance,
    ObjectModel,
    ParamRef,
    Prim,
    Symbol,
    all_attributes,
    conforms,
)
from .lexer import Severity, SourceDiagnostic


def literal_fits(cd: ClassDiagram, t, v) -> bool:
    """Whether a written (unbound) value can stand for an attribute of type ``t``."""
    if t is Prim.INT:
        return isinstance(v, int) and not isinstance(v, bool)
    if t is Prim.BOOL:
        return isinstance(v, bool)
    if t is Prim.TEXT:
        return isinstance(v, str)
    if isinstance(v, EnumLit):
        return v.enum == t.name and v.literal in cd.enums.get(t.name, ())
    return isinstance(v, Symbol) and v.name in cd.enums.get(t.name, ())


def bind_value(cd: ClassDiagram, t, v):
    if isinstance(t, EnumType) and isinstance(v, Symbol):
        return EnumLit(t.name, v.name)
    return v


def _candidate_classes(mod: ModalObjectDiagram, obj):
    if isinstance(obj.cls, ParamRef):
        p = next(p for p in mod.parameters if p.name == obj.cls.name)
        return list(p.values()) if p.is_type_param else []
    return [obj.cls]


def check_context(mod: ModalObjectDiagram, cd: ClassDiagram, file: str = "<string>") -> list:
    """Diagnostics binding ``mod``'s names to ``cd``'s declarations."""
    diags = []

    def report(pos, code, message, severity=Severity.ERROR):
        d = SourceDiagnostic(severity, file, pos[0] or 1, pos[1] or 1, code, message)
        if d not in diags:
            diags.append(d)

    params = {p.name: p for p in mod.parameters}
    for p in mod.parameters:
        if isinstance(p.domain, ClassSet):
            for c in p.domain.classes:
                if c not in cd.classes:
                    report(mod.pos, "unknown-class", f"parameter {p.name}: unknown class {c}")
                elif cd.classes[c].is_abstract:
                    report(mod.pos, "abstract-param", f"parameter {p.name}: class {c} is abstract")

    complete_example = mod.kind is Kind.EXAMPLE and not mod.is_partial
    for o in mod.objects:
        if isinstance(o.cls, ParamRef) and not params[o.cls.name].is_type_param:
            report(o.pos, "param-kind", f"parameter {o.cls.name} is not a type parameter")
        for c in _candidate_classes(mod, o):
            if c not in cd.classes:
                report(o.pos, "unknown-class", f"unknown class {c}")
                continue
            if cd.classes[c].is_abstract and not isinstance(o.cls, ParamRef):
                report(o.pos, "abstract-instance",
                       f"object {o.id} instantiates abstract class {c}; no object model can contain it",
                       Severity.WARNING)
            declared = all_attributes(cd, c)
            for a, v in o.attrs.items():
                if a not in declared:
                    report(o.pos, "unknown-attribute", f"class {c} has no attribute {a}")
                    continue
                t = declared[a]
                if isinstance(v, ParamRef):
                    p = params[v.name]
                    if p.is_type_param:
                        report(o.pos, "param-kind", f"type parameter {v.name} used as a value")
                        continue
                    for pv in p.values():
                        if not literal_fits(cd, t, pv):
                            report(o.pos, "param-type",
                                   f"parameter {v.name} value {pv} does not fit {c}.{a} : {t}")
                elif not literal_fits(cd, t, v):
                    report(o.pos, "attribute-type", f"value {v} does not fit {c}.{a} : {t}")
            missing = [a for a in declared if a not in o.attrs]
            if complete_example and missing:
                report(o.pos, "unassigned-attribute",
                       f"object {o.id} leaves {', '.join(missing)} unassigned; any value is accepted",
                       Severity.WARNING)

    for l in mod.links:
        src, dst = mod.object(l.source), mod.object(l.target)
        for sc in _candidate_classes(mod, src):
            if sc not in cd.classes:
                continue
            found = cd.resolve_role(sc, l.role)
            if found is None:
                report(l.pos, "unknown-role", f"class {sc} has no role {l.role}")
                continue
            assoc, forward = found
            other = assoc.right if forward else assoc.left
            for tc in _candidate_classes(mod, dst):
                if tc in cd.classes and not conforms(cd, tc, other):
                    report(l.pos, "link-type", f"link {l.role}: {l.target} : {tc} does not conform to {other}")
    return diags


def bind_pattern(mod: ModalObjectDiagram, cd: ClassDiagram) -> ObjectModel:
    """The embedding pattern of a ground MOD, resolved against ``cd``.

    Attribute maps stay partial: only what the diagram assigns is kept.
    """
    if any(True for _ in mod.param_refs()):
        raise ModelError(f"{mod.name}: expand parameters before binding")
    objects = {}
    for o in mod.objects:
        if o.cls not in cd.classes:
            raise ModelError(f"{mod.name}: unknown class {o.cls}")
        declared = all_attributes(cd, o.cls)
        attrs = {a: bind_value(cd, declared[a], v) if a in declared else v for a, v in o.attrs.items()}
        objects[o.id] = ObjectInstance(o.id, o.cls, attrs)
    links = set()
    for l in mod.links:
        found = cd.resolve_role(objects[l.source].cls, l.role)
        if found is None:
            raise ModelError(f"{mod.name}: class {objects[l.source].cls} has no role {l.role}")
        assoc, forward = found
        if forward:
            links.add(Link(assoc.key, l.source, l.target))
        else:
            links.add(Link(assoc.key, l.target, l.source))
    return ObjectModel(objects, links)


def text_literals(mods) -> set:
    """Every text value written in ``mods``, including parameter domains."""
    out = set()
    for m in mods:
        for o in m.objects:
            out.update(v for v in o.attrs.values() if isinstance(v, str))
        for p in m.parameters:
            if not p.is_type_param:
                out.update(v for v in p.values() if isinstance(v, str))
    return out
