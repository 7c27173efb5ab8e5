"""Recursive-descent parsers for ``.cd`` and ``.od`` sources.

Both parsers raise :class:`ParseError` carrying every diagnostic they
could collect: one for a syntax error (parsing stops there), or all the
context-condition violations of an otherwise well-formed text.
"""

from __future__ import annotations

from ..model import (
    AssocKind,
    AssociationDecl,
    ClassDecl,
    ClassDiagram,
    ClassSet,
    EnumType,
    IntRange,
    Kind,
    LiteralSet,
    ModalObjectDiagram,
    ModelError,
    Multiplicity,
    Navigability,
    ParameterDecl,
    ParamRef,
    PatternLink,
    PatternObject,
    Polarity,
    Prim,
    Symbol,
)
from .lexer import ParseError, TokenStream, decode_source, unquote

_PRIMS = {"int": Prim.INT, "boolean": Prim.BOOL, "String": Prim.TEXT}
_MOD_WORDS = ("positive", "negative", "example", "invariant", "partial")


def _package(ts: TokenStream):
    if not ts.accept("package"):
        return None
    parts = [ts.expect_id().text]
    while ts.accept("."):
        parts.append(ts.expect_id().text)
    ts.expect(";")
    return ".".join(parts)


# ---------------------------------------------------------------------------
# class diagrams


def parse_cd(source, file: str = "<string>") -> ClassDiagram:
    """Parse a class diagram and enforce its context conditions."""
    ts = TokenStream(decode_source(source, file), file)
    _package(ts)
    ts.expect("classdiagram")
    name = ts.expect_id("diagram name").text
    ts.expect("{")

    classes, interfaces, enums, assocs = {}, [], {}, []
    where = {}  # (kind, name-or-index) -> (line, col)
    errors = []

    while not ts.at("}"):
        tok = ts.peek()
        pos = (tok.line, tok.col)
        if ts.accept("enum"):
            ename = ts.expect_id("enum name")
            ts.expect("{")
            lits = [ts.expect_id("literal").text]
            while ts.accept(","):
                lits.append(ts.expect_id("literal").text)
            ts.expect("}")
            ts.accept(";")
            if ename.text in enums:
                errors.append(ts.diag("duplicate-name", f"enum {ename.text} declared twice", ename))
            enums[ename.text] = tuple(lits)
            where[("enum", ename.text)] = pos
        elif ts.accept("interface"):
            iname = ts.expect_id("interface name")
            ts.expect(";")
            if iname.text in interfaces:
                errors.append(ts.diag("duplicate-name", f"interface {iname.text} declared twice", iname))
            else:
                interfaces.append(iname.text)
            where[("interface", iname.text)] = pos
        elif ts.at("association"):
            a = _association(ts)
            where[("assoc", len(assocs))] = pos
            assocs.append(a)
        elif ts.at("abstract") or ts.at("singleton") or ts.at("class"):
            decl, errs = _class(ts)
            errors.extend(errs)
            if decl is None:
                continue
            if decl.name in classes:
                errors.append(ts.diag("duplicate-name", f"class {decl.name} declared twice", pos=pos))
            classes[decl.name] = decl
            where[("class", decl.name)] = pos
        else:
            ts.fail("'class', 'interface', 'enum', 'association' or '}'")
    ts.expect("}")
    if ts.peek().kind != "eof":
        ts.fail("end of input")

    cd = ClassDiagram(name, classes, tuple(interfaces), enums, tuple(assocs), check=False)
    for p in cd.problems():
        errors.append(ts.diag(p.code, p.message, pos=where.get(p.subject, (1, 1))))
    if errors:
        raise ParseError(errors)
    return cd


def _class(ts: TokenStream):
    errors = []
    start = ts.peek()
    is_abstract = bool(ts.accept("abstract"))
    is_singleton = bool(ts.accept("singleton"))
    ts.expect("class")
    name = ts.expect_id("class name").text
    sup = None
    if ts.accept("extends"):
        sup = ts.expect_id("superclass name").text
    ifaces = []
    if ts.accept("implements"):
        ifaces.append(ts.expect_id("interface name").text)
        while ts.accept(","):
            ifaces.append(ts.expect_id("interface name").text)
    attrs = {}
    if ts.accept("{"):
        while not ts.accept("}"):
            ttok = ts.expect_id("attribute type")
            atype = _PRIMS.get(ttok.text) or EnumType(ttok.text)
            aname = ts.expect_id("attribute name")
            ts.expect(";")
            if aname.text in attrs:
                errors.append(ts.diag("duplicate-attribute",
                                      f"attribute {aname.text} declared twice in {name}", aname))
            attrs[aname.text] = atype
    ts.accept(";")
    if is_abstract and is_singleton:
        errors.append(ts.diag("abstract-singleton", f"class {name} cannot be both abstract and singleton", start))
        is_singleton = False
    return ClassDecl(name, is_abstract, is_singleton, sup, tuple(ifaces), attrs), errors


def _multiplicity(ts: TokenStream) -> Multiplicity:
    tok = ts.peek()
    if ts.accept("*"):
        return Multiplicity(0, None)
    lo = ts.expect_int()
    hi = lo
    if ts.accept(".."):
        hi = None if ts.accept("*") else ts.expect_int()
    try:
        return Multiplicity(lo, hi)
    except ModelError as e:
        raise ParseError([ts.diag("multiplicity", str(e), tok)])


def _association(ts: TokenStream) -> AssociationDecl:
    ts.expect("association")
    kind = AssocKind.PLAIN
    if ts.accept("<<"):
        word = ts.expect_id("'composition' or 'aggregation'")
        if word.text not in ("composition", "aggregation"):
            raise ParseError([ts.diag("syntax", f"unknown association stereotype {word.text}", word)])
        kind = AssocKind(word.text)
        ts.expect(">>")
    name = None
    if ts.peek().kind == "id" and ts.peek(1).kind == "id":
        name = ts.next().text
    left = ts.expect_id("class name").text
    if ts.accept("->"):
        nav = Navigability.UNI
    elif ts.accept("<->"):
        nav = Navigability.BI
    else:
        ts.fail("'->' or '<->'")
    right = ts.expect_id("class name").text
    ts.expect("{")
    entries = {}
    while not ts.accept("}"):
        key = ts.peek()
        if key.text not in ("role", "inverse", "mult", "inverseMult") or key.kind != "id":
            ts.fail("'role', 'inverse', 'mult' or 'inverseMult'")
        ts.next()
        if key.text in entries:
            raise ParseError([ts.diag("syntax", f"duplicate '{key.text}' entry", key)])
        ts.expect(":")
        if key.text in ("role", "inverse"):
            entries[key.text] = ts.expect_id("role name").text
        else:
            entries[key.text] = _multiplicity(ts)
        ts.expect(";")
    ts.accept(";")
    for required in ("role", "mult", "inverseMult"):
        if required not in entries:
            raise ParseError([ts.diag("syntax", f"association {left}{nav.value}{right} lacks '{required}'")])
    return AssociationDecl(left, right, entries["role"], entries.get("inverse"),
                           left_mult=entries["inverseMult"], right_mult=entries["mult"],
                           name=name, kind=kind, navigability=nav)


# ---------------------------------------------------------------------------
# object diagrams


def parse_mod(source, file: str = "<string>") -> list:
    """Parse one or more (modal) object diagrams from a ``.od`` source."""
    ts = TokenStream(decode_source(source, file), file)
    package = _package(ts)
    mods, errors = [], []
    while True:
        mod, errs = _objectdiagram(ts, package)
        errors.extend(errs)
        if mod is not None:
            mods.append(mod)
        if ts.peek().kind == "eof":
            break
    if errors:
        raise ParseError(errors)
    return mods


def _stereotype(ts: TokenStream):
    errors = []
    words = []
    start = ts.peek()
    if ts.accept("<<"):
        while True:
            w = ts.expect_id("modality")
            if w.text not in _MOD_WORDS:
                errors.append(ts.diag("stereotype", f"unknown modality {w.text!r}", w))
            elif w.text in words:
                errors.append(ts.diag("stereotype", f"repeated modality {w.text!r}", w))
            words.append(w.text)
            if not ts.accept(","):
                break
        ts.expect(">>")
    if "positive" in words and "negative" in words:
        errors.append(ts.diag("stereotype", "a diagram cannot be both positive and negative", start))
    if "example" in words and "invariant" in words:
        errors.append(ts.diag("stereotype", "a diagram cannot be both example and invariant", start))
    partial = "partial" in words
    if partial and ("negative" in words or "invariant" in words):
        errors.append(ts.diag("illegal-partial",
                              "partial may only be combined with positive example", start))
    polarity = Polarity.NEGATIVE if "negative" in words else Polarity.POSITIVE
    kind = Kind.INVARIANT if "invariant" in words else Kind.EXAMPLE
    return polarity, kind, partial, errors


def _value(ts: TokenStream):
    tok = ts.peek()
    if tok.kind == "int":
        return int(ts.next().text)
    if tok.kind == "string":
        return unquote(ts.next().text)
    if ts.accept("true"):
        return True
    if ts.accept("false"):
        return False
    if tok.kind == "id":
        return Symbol(ts.next().text)
    ts.fail("value")


def _param(ts: TokenStream) -> ParameterDecl:
    ts.expect("param")
    name = ts.expect_id("parameter name")
    ts.expect("in")
    if ts.accept("classes"):
        ts.expect("{")
        classes = [ts.expect_id("class name").text]
        while ts.accept(","):
            classes.append(ts.expect_id("class name").text)
        ts.expect("}")
        domain = ClassSet(tuple(classes))
    elif ts.accept("{"):
        values = [_value(ts)]
        while ts.accept(","):
            values.append(_value(ts))
        ts.expect("}")
        domain = LiteralSet(tuple(values))
    else:
        lo = ts.expect_int()
        ts.expect("..")
        hi = ts.expect_int()
        if lo > hi:
            raise ParseError([ts.diag("param-range", f"parameter {name.text}: empty range {lo}..{hi}", name)])
        domain = IntRange(lo, hi)
    ts.expect(";")
    return ParameterDecl(name.text, domain)


def _object(ts: TokenStream):
    tok = ts.peek()
    oid = None
    if tok.kind == "id":
        oid = ts.next().text
    ts.expect(":")
    if ts.accept("<"):
        cls = ParamRef(ts.expect_id("parameter name").text)
        ts.expect(">")
    else:
        cls = ts.expect_id("class name").text
    attrs, errors = {}, []
    if ts.accept("{"):
        while not ts.accept("}"):
            aname = ts.expect_id("attribute name")
            ts.expect("=")
            if ts.accept("<"):
                value = ParamRef(ts.expect_id("parameter name").text)
                ts.expect(">")
            else:
                value = _value(ts)
            ts.expect(";")
            if aname.text in attrs:
                errors.append(ts.diag("duplicate-attribute", f"attribute {aname.text} assigned twice", aname))
            attrs[aname.text] = value
        ts.accept(";")
    else:
        ts.expect(";")
    return oid, cls, attrs, (tok.line, tok.col), errors


def _objectdiagram(ts: TokenStream, package):
    start = ts.peek()
    polarity, kind, partial, errors = _stereotype(ts)
    ts.expect("objectdiagram")
    name = ts.expect_id("diagram name").text
    ts.expect("{")
    params, raw_objects, links = [], [], []
    while not ts.accept("}"):
        if ts.at("param") and not ts.at(":", 1):
            params.append(_param(ts))
        elif ts.at("link") and not ts.at(":", 1):
            tok = ts.next()
            role = ts.expect_id("role name").text
            src = ts.expect_id("object name").text
            ts.expect("->")
            dst = ts.expect_id("object name").text
            ts.expect(";")
            links.append(PatternLink(role, src, dst, (tok.line, tok.col)))
        elif ts.peek().kind == "id" or ts.at(":"):
            oid, cls, attrs, pos, errs = _object(ts)
            errors.extend(errs)
            raw_objects.append((oid, cls, attrs, pos))
        else:
            ts.fail("object, link, parameter or '}'")
    ts.accept(";")

    taken = {o[0] for o in raw_objects if o[0] is not None}
    objects, counter = [], 0
    for oid, cls, attrs, pos in raw_objects:
        if oid is None:
            # anonymous objects get deterministic fresh names
            counter += 1
            while f"_anon{counter}" in taken:
                counter += 1
            oid = f"_anon{counter}"
            taken.add(oid)
        elif any(o.id == oid for o in objects):
            errors.append(ts.diag("duplicate-object", f"object {oid} declared twice", pos=pos))
            continue
        objects.append(PatternObject(oid, cls, attrs, pos))

    ids = {o.id for o in objects}
    for l in links:
        for end in (l.source, l.target):
            if end not in ids:
                errors.append(ts.diag("unknown-object", f"link {l.role} references unknown object {end}", pos=l.pos))
    declared = set()
    for p in params:
        if p.name in declared:
            errors.append(ts.diag("duplicate-param", f"parameter {p.name} declared twice", start))
        declared.add(p.name)
    for o in objects:
        refs = ([o.cls] if isinstance(o.cls, ParamRef) else []) + [v for v in o.attrs.values()
                                                                   if isinstance(v, ParamRef)]
        for r in refs:
            if r.name not in declared:
                errors.append(ts.diag("unknown-param", f"undeclared parameter {r.name}", pos=o.pos))
    if errors:
        return None, errors
    mod = ModalObjectDiagram(name, polarity, kind, partial, tuple(params), tuple(objects), tuple(links),
                             package, pos=(start.line, start.col))
    return mod, []
