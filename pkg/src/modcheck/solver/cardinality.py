"""Cardinality constraints over literals via sequential counters.

``CnfBuilder`` hands out variables and collects clauses.  Constants are
folded: ``TRUE`` / ``FALSE`` may appear wherever a literal is expected and
never reach the clause list.
"""

from __future__ import annotations

TRUE = True
FALSE = False


class CnfBuilder:
    def __init__(self):
        self.num_vars = 0
        self.clauses = []
        self.meaning = {}

    def new_var(self, role=None) -> int:
        self.num_vars += 1
        if role is not None:
            self.meaning[self.num_vars] = role
        return self.num_vars

    def add(self, *lits):
        """Add a clause; constant ``TRUE`` satisfies it, ``FALSE`` drops out."""
        out = []
        for x in lits:
            if x is TRUE:
                return
            if x is FALSE:
                continue
            out.append(x)
        self.clauses.append(tuple(out))

    # -- derived gates ---------------------------------------------------------

    def at_most_one(self, lits, condition=None):
        lits = [x for x in lits if x is not FALSE]
        if any(x is TRUE for x in lits):
            if sum(1 for x in lits if x is TRUE) > 1:
                self.add(_neg(condition) if condition is not None else FALSE)
                return
            lits = [x for x in lits if x is not TRUE]
            for x in lits:
                self.add(_neg(condition) if condition is not None else FALSE, -x)
            return
        guard = () if condition is None else (_neg(condition),)
        if len(lits) <= 5:
            for i in range(len(lits)):
                for j in range(i + 1, len(lits)):
                    self.add(*guard, -lits[i], -lits[j])
            return
        # ladder: s_i means some of lits[0..i] is true
        prev = lits[0]
        for x in lits[1:-1]:
            s = self.new_var()
            self.add(-prev, s)
            self.add(-x, s)
            self.add(*guard, -prev, -x)
            prev = s
        self.add(*guard, -prev, -lits[-1])

    def exactly_one(self, lits, condition=None):
        guard = () if condition is None else (_neg(condition),)
        self.add(*guard, *lits)
        self.at_most_one(lits, condition)

    def counter(self, lits, upto: int) -> list:
        """Outputs ``out`` with ``out[j-1]`` equivalent to "at least j of lits", j = 1..upto.

        Entries are literals or the constants ``TRUE`` / ``FALSE``.
        """
        lits = list(lits)
        # row[j] = "at least j among the prefix", j = 0..upto
        row = [TRUE] + [FALSE] * upto
        for x in lits:
            new = [TRUE]
            for j in range(1, upto + 1):
                new.append(_or_and(self, row[j], x, row[j - 1]))
            row = new
        return row[1:]

    def at_least(self, lits, k: int, condition=None):
        if k <= 0:
            return
        out = self.counter(lits, k)
        self.add(_neg(condition) if condition is not None else FALSE, out[k - 1])

    def at_most(self, lits, k: int, condition=None):
        lits = [x for x in lits if x is not FALSE]
        if len(lits) <= k:
            return
        if k == 0:
            for x in lits:
                self.add(_neg(condition) if condition is not None else FALSE, _neg(x))
            return
        if k == 1:
            self.at_most_one(lits, condition)
            return
        out = self.counter(lits, k + 1)
        self.add(_neg(condition) if condition is not None else FALSE, _neg(out[k]))


def _neg(x):
    if x is TRUE:
        return FALSE
    if x is FALSE:
        return TRUE
    return -x


def _and(b: CnfBuilder, x, y):
    if x is FALSE or y is FALSE:
        return FALSE
    if x is TRUE:
        return y
    if y is TRUE:
        return x
    z = b.new_var()
    b.add(-z, x)
    b.add(-z, y)
    b.add(z, -x, -y)
    return z


def _or(b: CnfBuilder, x, y):
    if x is TRUE or y is TRUE:
        return TRUE
    if x is FALSE:
        return y
    if y is FALSE:
        return x
    z = b.new_var()
    b.add(z, -x)
    b.add(z, -y)
    b.add(-z, x, y)
    return z


def _or_and(b: CnfBuilder, a, x, y):
    """A literal equivalent to ``a or (x and y)``."""
    if a is TRUE:
        return TRUE
    if a is FALSE:
        return _and(b, x, y)
    if x is FALSE or y is FALSE:
        return a
    if x is TRUE:
        return _or(b, a, y)
    if y is TRUE:
        return _or(b, a, x)
    r = b.new_var()
    b.add(-a, r)
    b.add(-x, -y, r)
    b.add(-r, a, x)
    b.add(-r, a, y)
    return r
