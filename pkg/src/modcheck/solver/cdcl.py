"""A conflict-driven clause-learning SAT solver.

Two watched literals, first-UIP learning with clause minimisation, VSIDS
branching, phase saving, Luby restarts and activity-based clause deletion.
Literals are DIMACS-style signed ints at the interface; internally a
literal ``x`` is ``2*v`` and ``-x`` is ``2*v + 1``.
"""

from __future__ import annotations

import heapq
import os
import random
import time
from dataclasses import dataclass, field
from typing import Optional


class SolverAborted(RuntimeError):
    """The conflict budget ran out before a verdict was reached."""

    def __init__(self, message: str, stats: dict):
        super().__init__(message)
        self.stats = stats


@dataclass
class SolveOutcome:
    sat: bool
    assignment: Optional[list] = None  # index v -> bool, index 0 unused
    stats: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "SAT" if self.sat else "UNSAT"


def default_seed() -> int:
    return int(os.environ.get("MODCHECK_SEED", "0"))


def _luby(x: int) -> int:
    """Element ``x`` (from 0) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x %= size
    return 1 << seq


class Solver:
    RESTART_UNIT = 64
    VAR_DECAY = 0.95
    CLA_DECAY = 0.999

    def __init__(self, num_vars: int, clauses, seed: Optional[int] = None):
        self.n = num_vars
        n2 = 2 * (num_vars + 1)
        self.value = [0] * n2  # per literal: 1 true, -1 false, 0 open
        self.level = [0] * (num_vars + 1)
        self.reason = [-1] * (num_vars + 1)
        self.phase = [False] * (num_vars + 1)
        self.activity = [0.0] * (num_vars + 1)
        self.var_inc = 1.0
        self.cla_inc = 1.0
        self.watches = [[] for _ in range(n2)]
        self.clauses = []  # list of literal lists, None when deleted
        self.learnt = []  # parallel flags
        self.cla_act = []
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.ok = True
        self.decisions = 0
        self.conflicts = 0
        self.propagations = 0

        seed = default_seed() if seed is None else seed
        order = list(range(1, num_vars + 1))
        if seed:
            random.Random(seed).shuffle(order)
        self.tiebreak = [0] * (num_vars + 1)
        for rank, v in enumerate(order):
            self.tiebreak[v] = rank
        self.heap = [(0.0, self.tiebreak[v], v) for v in range(1, num_vars + 1)]
        heapq.heapify(self.heap)

        self.num_input = 0
        for c in clauses:
            self.num_input += 1
            if not self._add_input(c):
                self.ok = False
                break

    # -- clause database ---------------------------------------------------

    def _add_input(self, clause) -> bool:
        lits = set()
        for x in clause:
            if x == 0 or abs(x) > self.n:
                raise ValueError(f"literal {x} out of range 1..{self.n}")
            lit = 2 * x if x > 0 else -2 * x + 1
            if lit ^ 1 in lits:
                return True  # tautology
            lits.add(lit)
        # drop literals already false at level 0, stop on satisfied
        out = []
        for lit in lits:
            v = self.value[lit]
            if v == 1:
                return True
            if v == 0:
                out.append(lit)
        if not out:
            return False
        if len(out) == 1:
            self._enqueue(out[0], -1)
            return self._propagate() < 0
        self._attach(out, False)
        return True

    def _attach(self, lits, learnt: bool) -> int:
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.learnt.append(learnt)
        self.cla_act.append(0.0)
        self.watches[lits[0]].append(ci)
        self.watches[lits[1]].append(ci)
        return ci

    # -- assignment ----------------------------------------------------------

    def _enqueue(self, lit: int, reason: int):
        v = lit >> 1
        self.value[lit] = 1
        self.value[lit ^ 1] = -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self) -> int:
        """Unit propagation; returns a conflicting clause index or -1."""
        value, watches, clauses = self.value, self.watches, self.clauses
        trail = self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            self.propagations += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c is None:
                    continue
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                if value[first] == 1:
                    ws[j] = ci
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if value[lk] != -1:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(ci)
                        break
                else:
                    ws[j] = ci
                    j += 1
                    if value[first] == -1:
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        return ci
                    self._enqueue(first, ci)
            del ws[j:]
        return -1

    def _cancel_until(self, lvl: int):
        if len(self.trail_lim) <= lvl:
            return
        start = self.trail_lim[lvl]
        value, act, tb, heap = self.value, self.activity, self.tiebreak, self.heap
        for lit in self.trail[start:]:
            v = lit >> 1
            value[lit] = 0
            value[lit ^ 1] = 0
            self.reason[v] = -1
            self.phase[v] = not (lit & 1)
            heapq.heappush(heap, (-act[v], tb[v], v))
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = len(self.trail)

    # -- heuristics ------------------------------------------------------------

    def _bump_var(self, v: int):
        a = self.activity[v] + self.var_inc
        self.activity[v] = a
        if a > 1e100:
            for u in range(1, self.n + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
            self._rebuild_heap()
        elif self.value[2 * v] == 0:
            heapq.heappush(self.heap, (-a, self.tiebreak[v], v))

    def _rebuild_heap(self):
        self.heap = [(-self.activity[v], self.tiebreak[v], v)
                     for v in range(1, self.n + 1) if self.value[2 * v] == 0]
        heapq.heapify(self.heap)

    def _bump_clause(self, ci: int):
        self.cla_act[ci] += self.cla_inc
        if self.cla_act[ci] > 1e20:
            for i in range(len(self.cla_act)):
                self.cla_act[i] *= 1e-20
            self.cla_inc *= 1e-20

    def _pick_branch(self) -> int:
        heap, value, act = self.heap, self.value, self.activity
        while heap:
            a, _, v = heapq.heappop(heap)
            if value[2 * v] == 0 and -a == act[v]:
                return 2 * v + (0 if self.phase[v] else 1)
        # stale entries exhausted; fall back to a scan
        for v in range(1, self.n + 1):
            if value[2 * v] == 0:
                return 2 * v + (0 if self.phase[v] else 1)
        return -1

    # -- learning --------------------------------------------------------------

    def _analyze(self, confl: int):
        seen = self._seen
        level, reason, clauses = self.level, self.reason, self.clauses
        cur = len(self.trail_lim)
        learnt = [0]
        to_clear = []
        path = 0
        p = -1
        idx = len(self.trail) - 1
        c = clauses[confl]
        while True:
            if self.learnt[confl]:
                self._bump_clause(confl)
            for q in (c if p < 0 else c[1:]):
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = 1
                    to_clear.append(v)
                    self._bump_var(v)
                    if level[v] >= cur:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[self.trail[idx] >> 1]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            path -= 1
            if path == 0:
                break
            confl = reason[p >> 1]
            c = clauses[confl]
        learnt[0] = p ^ 1

        # local minimisation: drop literals implied by the rest
        out = [learnt[0]]
        for q in learnt[1:]:
            r = reason[q >> 1]
            if r < 0:
                out.append(q)
                continue
            for x in clauses[r][1:]:
                u = x >> 1
                if not seen[u] and level[u] > 0:
                    out.append(q)
                    break
        for v in to_clear:
            seen[v] = 0

        if len(out) == 1:
            return out, 0
        best = max(range(1, len(out)), key=lambda i: level[out[i] >> 1])
        out[1], out[best] = out[best], out[1]
        return out, level[out[1] >> 1]

    def _reduce_db(self):
        locked = {self.reason[lit >> 1] for lit in self.trail}
        cands = [ci for ci, c in enumerate(self.clauses)
                 if c is not None and self.learnt[ci] and len(c) > 2 and ci not in locked]
        cands.sort(key=lambda ci: self.cla_act[ci])
        for ci in cands[: len(cands) // 2]:
            self.clauses[ci] = None
        # purge deleted clauses from the watch lists
        clauses = self.clauses
        for w in range(len(self.watches)):
            ws = self.watches[w]
            if ws:
                self.watches[w] = [ci for ci in ws if clauses[ci] is not None]

    # -- driver -----------------------------------------------------------------

    def stats(self, started: float) -> dict:
        return {
            "variables": self.n,
            "clauses": self.num_input,
            "decisions": self.decisions,
            "conflicts": self.conflicts,
            "millis": round((time.perf_counter() - started) * 1000, 3),
        }

    def solve(self, max_conflicts: Optional[int] = None) -> SolveOutcome:
        started = time.perf_counter()
        if not self.ok or self._propagate() >= 0:
            self.ok = False
            return SolveOutcome(False, None, self.stats(started))
        self._seen = bytearray(self.n + 1)
        max_learnts = max(1000, self.num_input // 3)
        restart_no = 0
        budget = _luby(restart_no) * self.RESTART_UNIT
        since_restart = 0
        num_learnts = 0
        while True:
            confl = self._propagate()
            if confl >= 0:
                self.conflicts += 1
                since_restart += 1
                if not self.trail_lim:
                    self.ok = False
                    return SolveOutcome(False, None, self.stats(started))
                if max_conflicts is not None and self.conflicts > max_conflicts:
                    raise SolverAborted(f"conflict limit {max_conflicts} reached", self.stats(started))
                lits, back = self._analyze(confl)
                self._cancel_until(back)
                if len(lits) == 1:
                    self._enqueue(lits[0], -1)
                else:
                    ci = self._attach(lits, True)
                    self._bump_clause(ci)
                    num_learnts += 1
                    self._enqueue(lits[0], ci)
                self.var_inc /= self.VAR_DECAY
                self.cla_inc /= self.CLA_DECAY
                continue
            if since_restart >= budget:
                restart_no += 1
                budget = _luby(restart_no) * self.RESTART_UNIT
                since_restart = 0
                self._cancel_until(0)
                continue
            if num_learnts >= max_learnts:
                self._reduce_db()
                num_learnts //= 2
                max_learnts = int(max_learnts * 1.1)
            lit = self._pick_branch()
            if lit < 0:
                model = [False] * (self.n + 1)
                for v in range(1, self.n + 1):
                    model[v] = self.value[2 * v] == 1
                return SolveOutcome(True, model, self.stats(started))
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, -1)


def solve_cnf(num_vars: int, clauses, *, seed: Optional[int] = None,
              max_conflicts: Optional[int] = None) -> SolveOutcome:
    """Decide a CNF given as DIMACS-style signed-int clauses."""
    return Solver(num_vars, clauses, seed).solve(max_conflicts)
