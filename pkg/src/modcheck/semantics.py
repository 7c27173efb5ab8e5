"""Direct semantics on object models.

Membership under the complete interpretation, pattern embedding, per-class
sizes, and an exhaustive bounded enumerator of a class diagram's object
models.  Nothing here goes through the SAT encoding, which is what makes
the enumerator usable as an oracle for it.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

from .model import (
    DEFAULT_DOMAINS,
    AssocKind,
    ClassDiagram,
    Domains,
    Link,
    ModelError,
    ObjectInstance,
    ObjectModel,
    all_attributes,
    conforms,
    superclasses_of,
    value_key,
)


@dataclass(frozen=True)
class Violation:
    rule: str
    subject: str
    detail: str

    def __str__(self):
        return f"{self.rule}: {self.subject}: {self.detail}"


@dataclass(frozen=True)
class MembershipResult:
    violations: tuple = ()

    @property
    def holds(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.holds


def _resolve_names(om: ObjectModel, cd: ClassDiagram):
    for o in om.objects.values():
        if o.cls not in cd.classes:
            raise ModelError(f"object {o.id}: class {o.cls} is not declared in {cd.name}")
    keys = {a.key for a in cd.associations}
    for l in om.links:
        if l.assoc not in keys:
            raise ModelError(f"link {l}: association {l.assoc} is not declared in {cd.name}")


def is_member(om: ObjectModel, cd: ClassDiagram, domains: Domains = DEFAULT_DOMAINS) -> MembershipResult:
    """Check ``om`` against ``cd`` under the complete interpretation.

    Raises :class:`ModelError` when ``om`` names a class or association
    that ``cd`` does not declare; everything else is reported as a
    violation.
    """
    _resolve_names(om, cd)
    out = []
    for o in om.objects.values():
        decl = cd.classes[o.cls]
        if decl.is_abstract:
            out.append(Violation("abstract-instance", o.id, f"{o.cls} is abstract"))
        declared = all_attributes(cd, o.cls)
        for a in o.attrs:
            if a not in declared:
                out.append(Violation("extra-attribute", o.id, f"{o.cls} declares no attribute {a}"))
        for a, t in declared.items():
            if a not in o.attrs:
                out.append(Violation("missing-attribute", o.id, f"attribute {a} has no value"))
            elif not domains.admits(cd, t, o.attrs[a]):
                out.append(Violation("attribute-value", o.id, f"{a} = {o.attrs[a]!r} is not a {t} value"))

    out_deg = Counter()
    in_deg = Counter()
    for l in sorted(om.links):
        a = cd.association(l.assoc)
        lc, rc = om.objects[l.left].cls, om.objects[l.right].cls
        if not (conforms(cd, lc, a.left) and conforms(cd, rc, a.right)):
            out.append(Violation("link-type", l.assoc, f"{l.left} : {lc} -> {l.right} : {rc} "
                                                       f"does not conform to {a.left} -> {a.right}"))
        out_deg[l.assoc, l.left] += 1
        in_deg[l.assoc, l.right] += 1

    for o in om.objects.values():
        for a in cd.associations:
            if conforms(cd, o.cls, a.left):
                n = out_deg[a.key, o.id]
                if not a.right_mult.admits(n):
                    out.append(Violation("multiplicity", o.id,
                                         f"{a.role} has {n} partners, allowed {a.right_mult}"))
            if conforms(cd, o.cls, a.right):
                n = in_deg[a.key, o.id]
                if not a.left_mult.admits(n):
                    out.append(Violation("multiplicity", o.id,
                                         f"{a.inverse_field} has {n} partners, allowed {a.left_mult}"))

    sizes = per_class_size(om, cd)
    for c, decl in cd.classes.items():
        if decl.is_singleton and sizes[c] != 1:
            out.append(Violation("singleton", c, f"singleton class has {sizes[c]} instances"))

    composite = {a.key for a in cd.associations if a.kind is AssocKind.COMPOSITION}
    if composite:
        owners = Counter(l.right for l in om.links if l.assoc in composite)
        for part, n in sorted(owners.items()):
            if n > 1:
                out.append(Violation("composition", part, f"part of {n} composites"))
    return MembershipResult(tuple(out))


def per_class_size(om: ObjectModel, cd: ClassDiagram) -> dict:
    """Objects per declared class, subclass instances included."""
    sizes = {c: 0 for c in cd.classes}
    for o in om.objects.values():
        for c in superclasses_of(cd, o.cls):
            sizes[c] += 1
    return sizes


def complete_attributes(om: ObjectModel, cd: ClassDiagram, domains: Domains = DEFAULT_DOMAINS) -> ObjectModel:
    """Give every unassigned attribute some value of its domain.

    Attribute values take part in no constraint other than their own
    domain, so one arbitrary witness decides the existential reading of an
    unassigned attribute.
    """
    objs = {}
    for o in om.objects.values():
        if o.cls not in cd.classes:
            objs[o.id] = o
            continue
        attrs = dict(o.attrs)
        for a, t in all_attributes(cd, o.cls).items():
            if a not in attrs:
                attrs[a] = domains.values(cd, t)[0]
        objs[o.id] = ObjectInstance(o.id, o.cls, attrs)
    return ObjectModel(objs, om.links)


# ---------------------------------------------------------------------------
# embedding


@dataclass(frozen=True)
class Embedding:
    mapping: Mapping[str, str]

    def __call__(self, pid: str) -> str:
        return self.mapping[pid]

    def then(self, other: "Embedding") -> "Embedding":
        return Embedding({p: other.mapping[h] for p, h in self.mapping.items()})


def embeds(pattern: ObjectModel, host: ObjectModel, cd: Optional[ClassDiagram] = None) -> Optional[Embedding]:
    """Find an injective, class-exact, link-preserving map of ``pattern`` into ``host``.

    Only attributes the pattern assigns must agree. Returns ``None`` when no
    such map exists.
    """
    if cd is not None:
        for o in pattern.objects.values():
            if o.cls not in cd.classes:
                raise ModelError(f"pattern object {o.id}: class {o.cls} is unknown")
    by_class = defaultdict(list)
    for h in host.objects.values():
        by_class[h.cls].append(h)

    candidates = {}
    for p in pattern.objects.values():
        cands = [h.id for h in by_class.get(p.cls, ())
                 if all(a in h.attrs and h.attrs[a] == v and type(h.attrs[a]) is type(v)
                        for a, v in p.attrs.items())]
        if not cands:
            return None
        candidates[p.id] = cands

    need = Counter(p.cls for p in pattern.objects.values())
    if any(len(by_class.get(c, ())) < n for c, n in need.items()):
        return None

    adjacency = defaultdict(list)
    for l in pattern.links:
        adjacency[l.left].append(l)
        adjacency[l.right].append(l)
    # most constrained first, then connectivity to what is already placed
    order, placed = [], set()
    remaining = set(pattern.objects)
    while remaining:
        def rank(pid):
            touching = sum(1 for l in adjacency[pid] if (l.left in placed or l.right in placed))
            return (-touching, len(candidates[pid]), -len(adjacency[pid]), pid)
        nxt = min(remaining, key=rank)
        order.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)

    links = host.links
    mapping, used = {}, set()

    def extend(i):
        if i == len(order):
            return True
        pid = order[i]
        for h in candidates[pid]:
            if h in used:
                continue
            ok = True
            for l in adjacency[pid]:
                other = l.right if l.left == pid else l.left
                if other == pid:
                    if Link(l.assoc, h, h) not in links:
                        ok = False
                        break
                elif other in mapping:
                    hl = Link(l.assoc, h, mapping[other]) if l.left == pid else Link(l.assoc, mapping[other], h)
                    if hl not in links:
                        ok = False
                        break
            if not ok:
                continue
            mapping[pid] = h
            used.add(h)
            if extend(i + 1):
                return True
            del mapping[pid]
            used.discard(h)
        return False

    if extend(0):
        return Embedding(dict(mapping))
    return None


# ---------------------------------------------------------------------------
# canonical forms


def _attr_key(o: ObjectInstance) -> tuple:
    return (o.cls, tuple(sorted((a, value_key(v)) for a, v in o.attrs.items())))


def canonical_form(om: ObjectModel) -> tuple:
    """An isomorphism-invariant encoding of ``om`` (ids are ignored).

    Colour refinement followed by individualisation of the first
    non-singleton cell, keeping the lexicographically least leaf.
    """
    ids = sorted(om.objects)
    n = len(ids)
    index = {oid: i for i, oid in enumerate(ids)}
    base = [_attr_key(om.objects[oid]) for oid in ids]
    out_adj = [[] for _ in range(n)]
    in_adj = [[] for _ in range(n)]
    edges = [(l.assoc, index[l.left], index[l.right]) for l in om.links]
    for a, i, j in edges:
        out_adj[i].append((a, j))
        in_adj[j].append((a, i))

    def rank(keys):
        table = {k: r for r, k in enumerate(sorted(set(keys)))}
        return [table[k] for k in keys]

    def refine(colors):
        while True:
            sig = [(colors[i],
                    tuple(sorted((a, 0, colors[j]) for a, j in out_adj[i])),
                    tuple(sorted((a, 1, colors[j]) for a, j in in_adj[i])))
                   for i in range(n)]
            new = rank(sig)
            if len(set(new)) == len(set(colors)):
                return new
            colors = new

    def encode(colors):
        order = sorted(range(n), key=lambda i: colors[i])
        pos = {v: p for p, v in enumerate(order)}
        return (tuple(base[i] for i in order), tuple(sorted((a, pos[i], pos[j]) for a, i, j in edges)))

    best = None

    def search(colors):
        nonlocal best
        cells = defaultdict(list)
        for i, c in enumerate(colors):
            cells[c].append(i)
        split = [c for c, members in sorted(cells.items()) if len(members) > 1]
        if not split:
            code = encode(colors)
            if best is None or code < best:
                best = code
            return
        for v in cells[split[0]]:
            # individualise v: it now precedes the rest of its cell
            keys = [(colors[i], 0 if i == v else 1) for i in range(n)]
            search(refine(rank(keys)))

    search(refine(rank(base)))
    return best


# ---------------------------------------------------------------------------
# bounded enumeration


def _count_vectors(cd: ClassDiagram, k: int):
    concrete = cd.concrete_classes
    members = {c: [i for i, cc in enumerate(concrete) if conforms(cd, cc, c)] for c in cd.classes}
    singletons = [c for c, d in cd.classes.items() if d.is_singleton]
    vectors = []
    for v in itertools.product(range(k + 1), repeat=len(concrete)):
        if any(sum(v[i] for i in members[c]) > k for c in cd.classes):
            continue
        if any(sum(v[i] for i in members[c]) != 1 for c in singletons):
            continue
        vectors.append(v)
    vectors.sort(key=lambda v: (sum(v), v))
    return concrete, vectors


def object_id(cls: str, n: int) -> str:
    """Generated id of the ``n``-th (from 1) object of ``cls``."""
    return f"{cls[0].lower()}{cls[1:]}_{n}"


def enumerate_models(cd: ClassDiagram, k: int, limit: Optional[int] = None,
                     domains: Domains = DEFAULT_DOMAINS, *, check: bool = True) -> Iterator[ObjectModel]:
    """Every member of ``cd`` with at most ``k`` objects per class, up to isomorphism.

    Models come out in a deterministic order: fewer objects first, then by
    per-class count vector.  Each isomorphism class is produced once.
    """
    if k < 0:
        raise ValueError("scope must be non-negative")
    concrete, vectors = _count_vectors(cd, k)
    attr_tuples = {}
    for c in concrete:
        attrs = all_attributes(cd, c)
        doms = [domains.values(cd, t) for t in attrs.values()]
        attr_tuples[c] = (tuple(attrs), list(itertools.product(*doms)))

    produced = 0
    for vector in vectors:
        per_class = [itertools.combinations_with_replacement(range(len(attr_tuples[c][1])), n)
                     for c, n in zip(concrete, vector)]
        for choice in itertools.product(*per_class):
            objects = []
            for c, picks in zip(concrete, choice):
                names, values = attr_tuples[c]
                for i, pick in enumerate(picks):
                    objects.append(ObjectInstance(object_id(c, i + 1), c, dict(zip(names, values[pick]))))
            seen = set()
            for om in _link_completions(cd, objects):
                code = canonical_form(om)
                if code in seen:
                    continue
                seen.add(code)
                if check:
                    result = is_member(om, cd, domains)
                    assert result.holds, f"enumerator produced a non-member: {result.violations}"
                yield om
                produced += 1
                if limit is not None and produced >= limit:
                    return


def _link_completions(cd: ClassDiagram, objects: list) -> Iterator[ObjectModel]:
    """All link sets over ``objects`` satisfying multiplicities and composition."""
    slots = []  # (assoc index, left idx, right idx)
    for ai, a in enumerate(cd.associations):
        lefts = [i for i, o in enumerate(objects) if conforms(cd, o.cls, a.left)]
        rights = [j for j, o in enumerate(objects) if conforms(cd, o.cls, a.right)]
        slots.extend((ai, i, j) for i in lefts for j in rights)

    assocs = cd.associations
    nobj = len(objects)
    out_deg = [[0] * nobj for _ in assocs]
    in_deg = [[0] * nobj for _ in assocs]
    out_left = [[0] * nobj for _ in assocs]  # undecided slots remaining
    in_left = [[0] * nobj for _ in assocs]
    for ai, i, j in slots:
        out_left[ai][i] += 1
        in_left[ai][j] += 1
    composite = [a.kind is AssocKind.COMPOSITION for a in assocs]
    owned = [0] * nobj

    # every end must be able to reach its lower bound at all
    for ai, a in enumerate(assocs):
        for i, o in enumerate(objects):
            if conforms(cd, o.cls, a.left) and out_left[ai][i] < a.right_mult.lo:
                return
            if conforms(cd, o.cls, a.right) and in_left[ai][i] < a.left_mult.lo:
                return

    chosen = []

    def ok_after(ai, i, j):
        a = assocs[ai]
        return (out_deg[ai][i] + out_left[ai][i] >= a.right_mult.lo
                and in_deg[ai][j] + in_left[ai][j] >= a.left_mult.lo)

    def walk(s):
        if s == len(slots):
            links = [Link(assocs[ai].key, objects[i].id, objects[j].id) for ai, i, j in chosen]
            yield ObjectModel({o.id: o for o in objects}, links)
            return
        ai, i, j = slots[s]
        a = assocs[ai]
        out_left[ai][i] -= 1
        in_left[ai][j] -= 1
        # exclude
        if ok_after(ai, i, j):
            yield from walk(s + 1)
        # include
        hi_r, hi_l = a.right_mult.hi, a.left_mult.hi
        if ((hi_r is None or out_deg[ai][i] < hi_r) and (hi_l is None or in_deg[ai][j] < hi_l)
                and not (composite[ai] and owned[j])):
            out_deg[ai][i] += 1
            in_deg[ai][j] += 1
            if composite[ai]:
                owned[j] += 1
            chosen.append((ai, i, j))
            if ok_after(ai, i, j):
                yield from walk(s + 1)
            chosen.pop()
            if composite[ai]:
                owned[j] -= 1
            out_deg[ai][i] -= 1
            in_deg[ai][j] -= 1
        out_left[ai][i] += 1
        in_left[ai][j] += 1

    yield from walk(0)
