"""Checking a class diagram against modal object diagrams.

Each MOD is expanded into ground copies; every copy becomes one
:class:`Verdict`.  Two interchangeable backends decide the verdicts: the
SAT pipeline (compile, ground, solve, decode) and direct enumeration of
bounded object models.  Every counterexample and witness is re-checked
against the direct semantics before it is returned.
"""

from __future__ import annotations

import enum
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .compiler import (
    compile_cd,
    compile_example_predicate,
    compile_pattern_predicate,
    make_command,
)
from .frontend.context import bind_pattern, check_context, literal_fits, text_literals
from .model import (
    DEFAULT_DOMAINS,
    ClassDiagram,
    Domains,
    Kind,
    ModalObjectDiagram,
    Modality,
    ModelError,
    ObjectModel,
    ParamRef,
    PatternObject,
    Specification,
    all_attributes,
)
from .semantics import complete_attributes, embeds, enumerate_models, is_member
from .solver import (
    GroundingTooLarge,
    SolverAborted,
    bounds_for,
    decode,
    ground,
    minimize as minimize_solve,
    solve,
)


class Result(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    ERROR = "ERROR"


class Backend(enum.Enum):
    SAT = "sat"
    ENUM = "enum"


@dataclass(frozen=True)
class Verdict:
    mod_name: str
    modality: Modality
    ground_index: Optional[int]
    result: Result
    counterexample: Optional[ObjectModel] = None
    witness: Optional[ObjectModel] = None
    violations: tuple = ()
    stats: dict = field(default_factory=dict)
    backend: Backend = Backend.SAT
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.result is Result.PASS


@dataclass(frozen=True)
class VerificationReport:
    cd_name: str
    scope: Optional[int]
    verdicts: tuple

    @property
    def overall(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def status(self) -> Result:
        if any(v.result is Result.ERROR for v in self.verdicts):
            return Result.ERROR
        return Result.PASS if self.overall else Result.FAIL


# ---------------------------------------------------------------------------
# parameters


def expand_parameters(mod: ModalObjectDiagram, cd: Optional[ClassDiagram] = None) -> list:
    """Ground copies of ``mod``, one per combination of parameter values.

    Combinations follow declaration order, each domain in its written
    order.  A parameter-free MOD expands to itself.
    """
    if not mod.parameters:
        return [mod]
    if cd is not None:
        _check_parameter_values(mod, cd)
    names = [p.name for p in mod.parameters]
    out = []
    for combo in itertools.product(*(p.values() for p in mod.parameters)):
        env = dict(zip(names, combo))
        objects = []
        for o in mod.objects:
            cls = env[o.cls.name] if isinstance(o.cls, ParamRef) else o.cls
            attrs = {a: env[v.name] if isinstance(v, ParamRef) else v for a, v in o.attrs.items()}
            objects.append(PatternObject(o.id, cls, attrs, o.pos))
        out.append(replace(mod, parameters=(), objects=tuple(objects)))
    return out


def _check_parameter_values(mod: ModalObjectDiagram, cd: ClassDiagram):
    params = {p.name: p for p in mod.parameters}
    for o in mod.objects:
        if isinstance(o.cls, ParamRef):
            p = params[o.cls.name]
            if not p.is_type_param:
                raise ModelError(f"{mod.name}: parameter {p.name} is not a type parameter")
            for c in p.values():
                if c not in cd.classes:
                    raise ModelError(f"{mod.name}: parameter {p.name} names unknown class {c}")
                if cd.classes[c].is_abstract:
                    raise ModelError(f"{mod.name}: parameter {p.name} names abstract class {c}")
        for a, v in o.attrs.items():
            if not isinstance(v, ParamRef):
                continue
            p = params[v.name]
            if p.is_type_param:
                raise ModelError(f"{mod.name}: type parameter {p.name} used as a value")
            classes = params[o.cls.name].values() if isinstance(o.cls, ParamRef) else [o.cls]
            for c in classes:
                if c not in cd.classes:
                    raise ModelError(f"{mod.name}: unknown class {c}")
                t = all_attributes(cd, c).get(a)
                if t is None:
                    raise ModelError(f"{mod.name}: class {c} has no attribute {a}")
                for val in p.values():
                    if not literal_fits(cd, t, val):
                        raise ModelError(f"{mod.name}: parameter {p.name} value {val} does not fit {c}.{a}")


# ---------------------------------------------------------------------------
# checking


def domains_for(mods, base: Domains = DEFAULT_DOMAINS) -> Domains:
    """``base`` with every text literal the diagrams mention interned."""
    return base.with_text(text_literals(mods))


def check_mod(cd: ClassDiagram, mod: ModalObjectDiagram, k: Optional[int] = None,
              backend: Backend = Backend.SAT, domains: Optional[Domains] = None, *,
              minimize: bool = False, symmetry: bool = True, implied: bool = True,
              seed: Optional[int] = None, max_conflicts: Optional[int] = None,
              on_problem: Optional[Callable] = None) -> list:
    """One verdict per ground instance of ``mod``.

    ``on_problem(mod_name, ground_index, problem)`` is called with every
    grounded CNF (SAT backend only).
    """
    backend = Backend(backend)
    if domains is None:
        domains = domains_for([mod])
    modality = mod.modality

    def error(message, index=None, stats=None):
        return Verdict(mod.name, modality, index, Result.ERROR, stats=stats or {}, backend=backend,
                       message=message)

    errors = [d for d in check_context(mod, cd) if d.is_error]
    if errors:
        return [error("; ".join(d.message for d in errors))]
    if mod.needs_scope and k is None:
        return [error(f"{modality.value} diagrams need a scope")]
    try:
        copies = expand_parameters(mod, cd)
    except ModelError as e:
        return [error(str(e))]

    opts = dict(symmetry=symmetry, implied=implied, seed=seed, max_conflicts=max_conflicts,
                minimize=minimize, on_problem=on_problem)
    out = []
    for i, g in enumerate(copies):
        index = i if mod.parameters else None
        try:
            if backend is Backend.SAT:
                out.append(_check_sat(cd, g, k, domains, index, **opts))
            else:
                out.append(_check_enum(cd, g, k, domains, index))
        except (SolverAborted, GroundingTooLarge) as e:
            out.append(error(str(e), index, getattr(e, "stats", None)))
        except ModelError as e:
            out.append(error(str(e), index))
    return out


def _verdict(g, index, passed, backend, **kw) -> Verdict:
    return Verdict(g.name, g.modality, index, Result.PASS if passed else Result.FAIL, backend=backend, **kw)


def _example_membership(cd, g, domains):
    pattern = bind_pattern(g, cd)
    return is_member(complete_attributes(pattern, cd, domains), cd, domains)


def _check_sat(cd, g, k, domains, index, *, symmetry, implied, seed, max_conflicts, minimize, on_problem):
    module = compile_cd(cd)
    modality = g.modality
    if g.kind is Kind.EXAMPLE and not g.is_partial:
        pred = compile_example_predicate(g, cd)
    else:
        pred = compile_pattern_predicate(g, cd)
    cmd = make_command(g, cd, k)
    problem = ground(module, pred, cmd, bounds_for(module, cmd, domains), symmetry=symmetry, implied=implied)
    if on_problem is not None:
        on_problem(g.name, index, problem)
    search = minimize_solve if minimize and modality not in (Modality.PE, Modality.NE) else solve
    outcome = search(problem, seed=seed, max_conflicts=max_conflicts)
    stats = dict(outcome.stats)
    stats["variables"], stats["clauses"] = problem.variable_count, len(problem.clauses)

    if modality in (Modality.PE, Modality.NE):
        membership = _example_membership(cd, g, domains)
        if membership.holds != outcome.sat:
            raise AssertionError(f"{g.name}: solver and direct membership disagree")
        passed = outcome.sat if modality is Modality.PE else not outcome.sat
        return _verdict(g, index, passed, Backend.SAT, violations=membership.violations, stats=stats)

    pattern = bind_pattern(g, cd)
    model = decode(outcome, problem) if outcome.sat else None
    if modality is Modality.PI:
        if model is not None:
            assert embeds(pattern, model) is None, "counterexample embeds the invariant"
        return _verdict(g, index, model is None, Backend.SAT, counterexample=model, stats=stats)
    if model is not None:
        assert embeds(pattern, model) is not None, "model does not embed the pattern"
    if modality is Modality.NI:
        return _verdict(g, index, model is None, Backend.SAT, counterexample=model, stats=stats)
    return _verdict(g, index, model is not None, Backend.SAT, witness=model, stats=stats)


def _check_enum(cd, g, k, domains, index):
    started = time.perf_counter()
    modality = g.modality
    seen = 0

    def stats():
        return {"variables": 0, "clauses": 0, "models": seen,
                "millis": round((time.perf_counter() - started) * 1000, 3)}

    if modality in (Modality.PE, Modality.NE):
        membership = _example_membership(cd, g, domains)
        passed = membership.holds if modality is Modality.PE else not membership.holds
        return _verdict(g, index, passed, Backend.ENUM, violations=membership.violations, stats=stats())

    pattern = bind_pattern(g, cd)
    scope = make_command(g, cd, k).scope.k
    want_embedded = modality is not Modality.PI
    found = None
    for om in enumerate_models(cd, scope, domains=domains):
        seen += 1
        if (embeds(pattern, om) is not None) == want_embedded:
            found = om
            break
    if modality is Modality.PPE:
        return _verdict(g, index, found is not None, Backend.ENUM, witness=found, stats=stats())
    return _verdict(g, index, found is None, Backend.ENUM, counterexample=found, stats=stats())


def mod_passes(verdicts) -> bool:
    """A (possibly parametrized) MOD holds iff all its ground instances pass."""
    return all(v.passed for v in verdicts)


def _check_task(args):
    cd, mod, k, backend, domains, opts = args
    return check_mod(cd, mod, k, backend, domains, **opts)


def verify_spec(cd: ClassDiagram, spec, k: Optional[int] = None, backend: Backend = Backend.SAT,
                domains: Optional[Domains] = None, *, jobs: int = 1, **opts) -> VerificationReport:
    """Verdicts for every MOD of ``spec``, in input order."""
    mods = spec.mods if isinstance(spec, Specification) else tuple(spec)
    if domains is None:
        domains = domains_for(mods)
    tasks = [(cd, m, k, backend, domains, opts) for m in mods]
    if jobs > 1 and len(tasks) > 1 and opts.get("on_problem") is None:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_task, tasks))
    else:
        results = [_check_task(t) for t in tasks]
    return VerificationReport(cd.name, k, tuple(v for r in results for v in r))
