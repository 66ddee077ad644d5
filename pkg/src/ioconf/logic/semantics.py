"""Denotational semantics over a finite LTS.

Formulas are evaluated to the set of states satisfying them. The memo table
lives on an Evaluator instance, so caching never outlives a single use.
"""

from ..errors import IoconfError
from .formula import (And, Box, BoxTrace, Dia, FBox, Ff, ForceTrace, NfDia, Or,
                      Tt, Var, is_closed)


class Evaluator:
    def __init__(self, lts, env=None):
        self.lts = lts
        self.env = dict(env or {})
        self.all = frozenset(lts.states)
        self._memo = {}
        self._succ = {}

    def _successors(self, a):
        table = self._succ.get(a)
        if table is None:
            table = {p: frozenset(self.lts.successors(p, a)) for p in self.all}
            self._succ[a] = table
        return table

    def _after(self, trace):
        """Map each state to the set of its derivatives after ``trace``."""
        paths = {p: frozenset([p]) for p in self.all}
        for a in trace:
            succ = self._successors(a)
            paths = {p: frozenset(q for r in cur for q in succ[r]) for p, cur in paths.items()}
        return paths

    def denote(self, f):
        if isinstance(f, Var):
            try:
                return frozenset(self.env[f.name])
            except KeyError:
                raise IoconfError(f"unbound variable {f.name}") from None
        closed = is_closed(f)
        if closed:
            hit = self._memo.get(f)
            if hit is not None:
                return hit
        result = self._compute(f)
        if closed:
            self._memo[f] = result
        return result

    def _compute(self, f):
        if isinstance(f, Tt):
            return self.all
        if isinstance(f, Ff):
            return frozenset()
        if isinstance(f, And):
            out = self.all
            for c in f.children:
                out = out & self.denote(c)
                if not out:
                    break
            return out
        if isinstance(f, Or):
            out = frozenset()
            for c in f.children:
                out = out | self.denote(c)
            return out
        if isinstance(f, (Dia, Box, NfDia, FBox)):
            body = self.denote(f.body)
            succ = self._successors(f.action)
            if isinstance(f, Dia):
                return frozenset(p for p in self.all if succ[p] & body)
            if isinstance(f, Box):
                return frozenset(p for p in self.all if succ[p] <= body)
            if isinstance(f, NfDia):
                return frozenset(p for p in self.all if not succ[p] or succ[p] & body)
            return frozenset(p for p in self.all if succ[p] and succ[p] <= body)
        if isinstance(f, (ForceTrace, BoxTrace)):
            body = self.denote(f.body)
            after = self._after(f.trace)
            if isinstance(f, ForceTrace):
                return frozenset(p for p in self.all if after[p] and after[p] <= body)
            return frozenset(p for p in self.all if after[p] <= body)
        raise TypeError(f"not a formula: {f!r}")

    def satisfies(self, p, f):
        self.lts._check(p)
        return p in self.denote(f)


def denote(lts, f, env=None):
    return Evaluator(lts, env).denote(f)


def satisfies(lts, p, f, env=None):
    """Whether state p satisfies f (free variables are read from env)."""
    return Evaluator(lts, env).satisfies(p, f)
