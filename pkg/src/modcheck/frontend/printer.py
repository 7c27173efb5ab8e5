"""Pretty printers producing text the parsers accept back."""

from __future__ import annotations

from ..model import (
    AssocKind,
    ClassDiagram,
    ClassSet,
    IntRange,
    ModalObjectDiagram,
    ObjectModel,
    ParamRef,
    format_value,
)


def _value(v) -> str:
    if isinstance(v, ParamRef):
        return str(v)
    return format_value(v)


def print_cd(cd: ClassDiagram) -> str:
    out = [f"classdiagram {cd.name} {{"]
    for e, lits in cd.enums.items():
        out.append(f"  enum {e} {{ {', '.join(lits)} }}")
    for i in cd.interfaces:
        out.append(f"  interface {i};")
    for c in cd.classes.values():
        head = "  "
        if c.is_abstract:
            head += "abstract "
        if c.is_singleton:
            head += "singleton "
        head += f"class {c.name}"
        if c.super_class:
            head += f" extends {c.super_class}"
        if c.interfaces:
            head += " implements " + ", ".join(c.interfaces)
        if c.attributes:
            out.append(head + " {")
            out.extend(f"    {t} {a};" for a, t in c.attributes.items())
            out.append("  }")
        else:
            out.append(head + ";")
    for a in cd.associations:
        head = "  association "
        if a.kind is not AssocKind.PLAIN:
            head += f"<<{a.kind.value}>> "
        if a.name:
            head += f"{a.name} "
        out.append(f"{head}{a.left} {a.navigability.value} {a.right} {{")
        out.append(f"    role: {a.role};")
        if a.inverse:
            out.append(f"    inverse: {a.inverse};")
        out.append(f"    mult: {a.right_mult};")
        out.append(f"    inverseMult: {a.left_mult};")
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"


def _stereotype(mod: ModalObjectDiagram) -> str:
    words = ["partial"] if mod.is_partial else []
    words += [mod.polarity.value, mod.kind.value]
    return "<<" + ", ".join(words) + ">>"


def print_mod(mod: ModalObjectDiagram) -> str:
    out = [f"{_stereotype(mod)} objectdiagram {mod.name} {{"]
    for p in mod.parameters:
        d = p.domain
        if isinstance(d, IntRange):
            dom = f"{d.lo}..{d.hi}"
        elif isinstance(d, ClassSet):
            dom = "classes {" + ", ".join(d.classes) + "}"
        else:
            dom = "{" + ", ".join(_value(v) for v in d.values) + "}"
        out.append(f"  param {p.name} in {dom};")
    for o in mod.objects:
        cls = str(o.cls)
        if o.attrs:
            out.append(f"  {o.id} : {cls} {{")
            out.extend(f"    {a} = {_value(v)};" for a, v in o.attrs.items())
            out.append("  };")
        else:
            out.append(f"  {o.id} : {cls};")
    for l in mod.links:
        out.append(f"  link {l.role} {l.source} -> {l.target};")
    out.append("}")
    return "\n".join(out) + "\n"


def print_mods(mods) -> str:
    mods = list(mods)
    head = f"package {mods[0].package};\n\n" if mods and mods[0].package else ""
    return head + "\n".join(print_mod(m) for m in mods)


def print_object_model(om: ObjectModel, cd: ClassDiagram, name: str, comment: str = None) -> str:
    """Render an object model as a ``<<positive, example>>`` object diagram."""
    out = []
    if comment:
        out.extend(f"// {line}" for line in comment.splitlines())
    out.append(f"<<positive, example>> objectdiagram {name} {{")
    for o in om.objects.values():
        if o.attrs:
            out.append(f"  {o.id} : {o.cls} {{")
            out.extend(f"    {a} = {format_value(v)};" for a, v in o.attrs.items())
            out.append("  };")
        else:
            out.append(f"  {o.id} : {o.cls};")
    for l in sorted(om.links):
        out.append(f"  link {cd.association(l.assoc).role} {l.left} -> {l.right};")
    out.append("}")
    return "\n".join(out) + "\n"
