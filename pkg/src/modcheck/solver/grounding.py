"""Grounding a constraint module, predicate and command into CNF.

Atoms are allocated per concrete class; abstract classes get none.  Each
atom has an ``exists`` variable, so a bound of ``n`` admits any count from
0 to ``n`` unless the scope is exact.  The meaning table maps every named
variable back to the object, link, attribute value or pattern mapping it
stands for, which is what :func:`decode` reads.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from ..compiler import (
    AttrDomain,
    Command,
    CommandMode,
    CompositionExclusive,
    ConstraintModule,
    EndMultiplicity,
    ExactScope,
    PatternPredicate,
    PredicateMode,
    SingletonExact,
    UniformScope,
)
from ..model import (
    DEFAULT_DOMAINS,
    ClassDiagram,
    Domains,
    Link,
    ModelError,
    ObjectInstance,
    ObjectModel,
    conforms,
    format_value,
)
from ..semantics import is_member, object_id, per_class_size
from .cardinality import FALSE, TRUE, CnfBuilder
from .cdcl import SolveOutcome, solve_cnf


class GroundingError(ModelError):
    """Bounds and constraints are inconsistent before any search."""


class GroundingTooLarge(RuntimeError):
    """The propositional problem would exceed the configured size limit."""


class Atom(NamedTuple):
    cls: str
    index: int

    def __str__(self):
        return f"{self.cls}${self.index}"


class Exists(NamedTuple):
    atom: Atom

    def __str__(self):
        return f"exists {self.atom}"


class LinkRole(NamedTuple):
    relation: str
    left: Atom
    right: Atom

    def __str__(self):
        return f"link {self.relation} {self.left} {self.right}"


class AttrRole(NamedTuple):
    atom: Atom
    attribute: str
    value: object

    def __str__(self):
        return f"attr {self.atom}.{self.attribute} = {format_value(self.value)}"


class MapRole(NamedTuple):
    var: str
    atom: Atom

    def __str__(self):
        return f"map {self.var} {self.atom}"


@dataclass(frozen=True)
class Bounds:
    """Atoms per concrete class; ``exact`` classes must use all of theirs.

    ``uniform`` additionally caps every class extent (subclasses counted)
    at that many objects.
    """

    atoms: tuple  # (concrete class, count)
    exact: frozenset = frozenset()
    uniform: Optional[int] = None
    domains: Domains = DEFAULT_DOMAINS

    def __post_init__(self):
        for c, n in self.atoms:
            if n < 0:
                raise GroundingError(f"negative bound for {c}")

    def count(self, cls: str) -> int:
        return dict(self.atoms).get(cls, 0)


def bounds_for(module: ConstraintModule, cmd: Command, domains: Domains = DEFAULT_DOMAINS) -> Bounds:
    cd = module.source
    concrete = cd.concrete_classes
    if isinstance(cmd.scope, ExactScope):
        counts = cmd.scope.as_dict()
        # scopes count subclass instances too; atoms are per exact class
        own = {}
        for c in concrete:
            subs = [s for s, d in cd.classes.items() if d.super_class == c]
            own[c] = counts.get(c, 0) - sum(counts.get(s, 0) for s in subs)
            if own[c] < 0:
                raise GroundingError(f"scope for {c} is smaller than its subclasses' scopes")
        return Bounds(tuple((c, own[c]) for c in concrete), frozenset(concrete), None, domains)
    k = cmd.scope.k
    return Bounds(tuple((c, k) for c in concrete), frozenset(), k, domains)


@dataclass
class PropositionalProblem:
    variable_count: int
    clauses: list
    meaning: dict
    atoms: tuple = field(default=(), repr=False)
    exists: dict = field(default_factory=dict, repr=False)
    link_vars: dict = field(default_factory=dict, repr=False)
    attr_vars: dict = field(default_factory=dict, repr=False)
    cd: Optional[ClassDiagram] = field(default=None, repr=False)
    bounds: Optional[Bounds] = field(default=None, repr=False)


def ground(module: ConstraintModule, pred: Optional[PatternPredicate], cmd: Optional[Command],
           bounds: Bounds, *, symmetry: bool = True, implied: bool = True,
           max_mappings: int = 500_000) -> PropositionalProblem:
    """Translate the bounded problem into CNF.

    ``symmetry`` orders atom existence within a class; ``implied`` adds
    redundant counting constraints that relate extent sizes across each
    association.  Neither changes satisfiability.
    """
    cd = module.source
    b = CnfBuilder()
    for c, _ in bounds.atoms:
        if c not in cd.classes or cd.classes[c].is_abstract:
            raise GroundingError(f"bounds name {c}, which is not a concrete class")
    for c in cd.concrete_classes:
        if c not in dict(bounds.atoms):
            raise GroundingError(f"bounds do not cover class {c}")

    atoms = tuple(Atom(c, i) for c, n in bounds.atoms for i in range(n))
    exists = {a: b.new_var(Exists(a)) for a in atoms}
    for c, n in bounds.atoms:
        for i in range(n):
            if c in bounds.exact:
                b.add(exists[Atom(c, i)])
            elif symmetry and i > 0:
                b.add(-exists[Atom(c, i)], exists[Atom(c, i - 1)])

    def extent(cls):
        return [a for a in atoms if conforms(cd, a.cls, cls)]

    # links, one variable per typed pair; both role views share it
    link_vars = {}
    ends = {}
    for f in module.fields:
        if f.forward:
            ends[f.relation] = (f.owner, f.target)
    by_left, by_right = {}, {}
    for rel, (lcls, rcls) in ends.items():
        for x in extent(lcls):
            for y in extent(rcls):
                v = b.new_var(LinkRole(rel, x, y))
                link_vars[rel, x, y] = v
                b.add(-v, exists[x])
                b.add(-v, exists[y])
                by_left.setdefault((rel, x), []).append(v)
                by_right.setdefault((rel, y), []).append(v)

    attr_vars = {}
    for fact in module.facts:
        if isinstance(fact, EndMultiplicity):
            owner_cls = ends[fact.relation][0 if fact.forward else 1]
            table = by_left if fact.forward else by_right
            for x in extent(owner_cls):
                lits = table.get((fact.relation, x), [])
                b.at_least(lits, fact.lo, exists[x])
                if fact.hi is not None:
                    b.at_most(lits, fact.hi)
        elif isinstance(fact, SingletonExact):
            lits = [exists[x] for x in extent(fact.cls)]
            if fact.n == 1:
                b.exactly_one(lits)
            else:
                b.at_least(lits, fact.n)
                b.at_most(lits, fact.n)
        elif isinstance(fact, CompositionExclusive):
            for y in extent(fact.part):
                lits = [v for rel in fact.relations for v in by_right.get((rel, y), [])]
                b.at_most_one(lits)
        elif isinstance(fact, AttrDomain):
            values = bounds.domains.values(cd, fact.type)
            for x in extent(fact.cls):
                vs = []
                for val in values:
                    v = b.new_var(AttrRole(x, fact.attribute, val))
                    b.add(-v, exists[x])
                    vs.append((val, v))
                attr_vars[x, fact.attribute] = vs
                b.exactly_one([v for _, v in vs], exists[x])

    if bounds.uniform is not None:
        for c in cd.classes:
            lits = [exists[x] for x in extent(c)]
            if len(lits) > bounds.uniform:
                b.at_most(lits, bounds.uniform)

    if implied:
        _implied_counting(b, cd, extent, exists)

    problem = PropositionalProblem(0, [], {}, atoms, exists, link_vars, attr_vars, cd, bounds)
    if pred is not None:
        mode = cmd.mode if cmd is not None else CommandMode.RUN
        if pred.mode is PredicateMode.FULL:
            _full_pattern(b, pred, problem)
        elif mode is CommandMode.RUN:
            _embedding_exists(b, pred, problem)
        else:
            _embedding_absent(b, pred, problem, max_mappings)
    problem.variable_count = b.num_vars
    problem.clauses = b.clauses
    problem.meaning = b.meaning
    return problem


def _implied_counting(b: CnfBuilder, cd: ClassDiagram, extent, exists):
    # Summing degrees over either end of an association counts the same
    # links, so lo_R * |L| <= |links| <= hi_L * |R| and vice versa.
    for a in cd.associations:
        L = [exists[x] for x in extent(a.left)]
        R = [exists[y] for y in extent(a.right)]
        for src, dst, lo, hi in ((L, R, a.right_mult.lo, a.left_mult.hi),
                                 (R, L, a.left_mult.lo, a.right_mult.hi)):
            if lo == 0 or hi is None or not src:
                continue
            if hi == 0:
                for x in src:
                    b.add(-x)
                continue
            s_src = b.counter(src, len(src))
            need = [math.ceil(i * lo / hi) for i in range(1, len(src) + 1)]
            s_dst = b.counter(dst, min(len(dst), max(need)))
            for i, n in enumerate(need):
                if n > len(dst):
                    b.add(_neg(s_src[i]))
                else:
                    b.add(_neg(s_src[i]), s_dst[n - 1])


def _neg(x):
    if x is TRUE:
        return FALSE
    if x is FALSE:
        return TRUE
    return -x


def _pattern_atom_candidates(pred: PatternPredicate, problem: PropositionalProblem) -> dict:
    return {v: [a for a in problem.atoms if a.cls == c] for v, c in pred.object_vars}


def _attr_var(problem, atom, attribute, value):
    for val, v in problem.attr_vars.get((atom, attribute), ()):
        if val == value and type(val) is type(value):
            return v
    return None


def _full_pattern(b: CnfBuilder, pred: PatternPredicate, problem: PropositionalProblem):
    # Atoms of one class are interchangeable, so the j-th pattern object of
    # a class may be fixed to that class's j-th atom.
    seen = {}
    mapping = {}
    for v, c in pred.object_vars:
        j = seen.get(c, 0)
        seen[c] = j + 1
        atom = Atom(c, j)
        if atom not in problem.exists:
            b.add()
            return
        mapping[v] = atom
    used = set(mapping.values())
    for a in problem.atoms:
        b.add(problem.exists[a] if a in used else -problem.exists[a])
    wanted = {(rel, mapping[l], mapping[r]) for rel, l, r in pred.links}
    for key, var in problem.link_vars.items():
        b.add(var if key in wanted else -var)
    if any(w not in problem.link_vars for w in wanted):
        b.add()
    for v, attr, val in pred.attrs:
        var = _attr_var(problem, mapping[v], attr, val)
        b.add() if var is None else b.add(var)


def _embedding_exists(b: CnfBuilder, pred: PatternPredicate, problem: PropositionalProblem):
    cands = _pattern_atom_candidates(pred, problem)
    m = {}
    for v, _ in pred.object_vars:
        row = []
        for a in cands[v]:
            x = b.new_var(MapRole(v, a))
            m[v, a] = x
            b.add(-x, problem.exists[a])
            row.append(x)
        b.exactly_one(row)
    per_atom = {}
    for (v, a), x in m.items():
        per_atom.setdefault(a, []).append(x)
    for xs in per_atom.values():
        b.at_most_one(xs)
    for v, attr, val in pred.attrs:
        for a in cands[v]:
            var = _attr_var(problem, a, attr, val)
            b.add(-m[v, a]) if var is None else b.add(-m[v, a], var)
    for rel, l, r in pred.links:
        for x in cands[l]:
            for y in cands[r]:
                if l == r and x != y:
                    continue
                if l != r and x == y:
                    continue  # excluded by injectivity already
                var = problem.link_vars.get((rel, x, y))
                if var is None:
                    b.add(-m[l, x], -m[r, y])
                else:
                    b.add(-m[l, x], -m[r, y], var)


def _embedding_absent(b: CnfBuilder, pred: PatternPredicate, problem: PropositionalProblem, limit: int):
    cands = _pattern_atom_candidates(pred, problem)
    names = [v for v, _ in pred.object_vars]
    total = math.prod(len(cands[v]) for v in names)
    if total > limit:
        raise GroundingTooLarge(f"{pred.name}: {total} candidate mappings exceed the limit of {limit}")
    for combo in itertools.product(*(cands[v] for v in names)):
        if len(set(combo)) != len(combo):
            continue
        mu = dict(zip(names, combo))
        clause = [-problem.exists[a] for a in combo]
        possible = True
        for rel, l, r in pred.links:
            var = problem.link_vars.get((rel, mu[l], mu[r]))
            if var is None:
                possible = False
                break
            clause.append(-var)
        for v, attr, val in pred.attrs:
            var = _attr_var(problem, mu[v], attr, val)
            if var is None:
                possible = False
                break
            clause.append(-var)
        if possible:
            b.add(*sorted(set(clause), key=abs))


# ---------------------------------------------------------------------------


def solve(problem: PropositionalProblem, *, seed: Optional[int] = None,
          max_conflicts: Optional[int] = None) -> SolveOutcome:
    return solve_cnf(problem.variable_count, problem.clauses, seed=seed, max_conflicts=max_conflicts)


def decode(outcome: SolveOutcome, problem: PropositionalProblem) -> ObjectModel:
    """The object model a satisfying assignment describes.

    The result is checked against the class diagram; a failure there is an
    encoding bug, not a user error.
    """
    if not outcome.sat:
        raise ValueError("cannot decode an unsatisfiable outcome")
    val = outcome.assignment
    cd = problem.cd
    names, counters = {}, {}
    for a in problem.atoms:
        if val[problem.exists[a]]:
            counters[a.cls] = counters.get(a.cls, 0) + 1
            names[a] = object_id(a.cls, counters[a.cls])
    objects = {}
    for a, oid in names.items():
        attrs = {}
        for (atom, attr), vs in problem.attr_vars.items():
            if atom == a:
                chosen = [value for value, v in vs if val[v]]
                attrs[attr] = chosen[0]
        objects[oid] = ObjectInstance(oid, a.cls, attrs)
    links = [Link(rel, names[x], names[y]) for (rel, x, y), v in problem.link_vars.items() if val[v]]
    om = ObjectModel(objects, links)

    result = is_member(om, cd, problem.bounds.domains)
    if not result.holds:
        raise AssertionError(f"decoded model violates the class diagram: {result.violations}")
    own = Counter(o.cls for o in objects.values())
    assert all(n <= problem.bounds.count(c) for c, n in own.items())
    if problem.bounds.uniform is not None:
        assert all(n <= problem.bounds.uniform for n in per_class_size(om, cd).values())
    return om


def pattern_mapping(outcome: SolveOutcome, problem: PropositionalProblem, om: ObjectModel) -> dict:
    """Pattern var to object id, read from the map variables of a witness."""
    names, counters = {}, {}
    for a in problem.atoms:
        if outcome.assignment[problem.exists[a]]:
            counters[a.cls] = counters.get(a.cls, 0) + 1
            names[a] = object_id(a.cls, counters[a.cls])
    return {role.var: names[role.atom] for v, role in problem.meaning.items()
            if isinstance(role, MapRole) and outcome.assignment[v]}


def minimize(problem: PropositionalProblem, *, seed: Optional[int] = None,
             max_conflicts: Optional[int] = None) -> SolveOutcome:
    """Solve with the fewest objects: retry under growing total-size caps."""
    b = CnfBuilder()
    b.num_vars = problem.variable_count
    b.meaning = dict(problem.meaning)
    lits = [problem.exists[a] for a in problem.atoms]
    out = b.counter(lits, len(lits))
    base = list(problem.clauses) + b.clauses
    spent = {"decisions": 0, "conflicts": 0, "millis": 0.0}
    outcome = None
    for t in range(len(lits) + 1):
        cap = CnfBuilder()
        if t < len(lits):
            cap.add(_neg(out[t]))
        outcome = solve_cnf(b.num_vars, base + cap.clauses, seed=seed, max_conflicts=max_conflicts)
        for k in spent:
            spent[k] += outcome.stats[k]
        if outcome.sat:
            break
    outcome.stats.update(spent)
    if outcome.sat:
        outcome.assignment = outcome.assignment[: problem.variable_count + 1]
    return outcome
