"""Equational fixed-point declarations and characteristic formulae."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ValidationError
from ..lts import sort_actions
from .formula import Box, FBox, Var, canonical, conj, disj, format_formula, free_vars
from .semantics import Evaluator


@dataclass(frozen=True)
class Declaration:
    """Equations X = phi, kept in declaration order, all with one polarity."""

    equations: tuple
    polarity: str = "greatest"

    def __post_init__(self):
        if self.polarity not in ("greatest", "least"):
            raise ValueError("polarity is 'greatest' or 'least'")
        names = [n for n, _ in self.equations]
        if len(set(names)) != len(names):
            raise ValidationError("a variable is declared twice")
        unbound = set().union(*(free_vars(b) for _, b in self.equations)) - set(names) if names else set()
        if unbound:
            raise ValidationError(f"unbound variables: {', '.join(sorted(unbound))}")

    @property
    def variables(self):
        return [n for n, _ in self.equations]

    def body(self, name):
        return dict(self.equations)[name]

    def __str__(self):
        head = "max" if self.polarity == "greatest" else "min"
        lines = [f"{name} = {format_formula(body)};" for name, body in self.equations]
        return head + " " + "\n    ".join(lines)


def eval_declaration(lts, decl):
    """Solve the declaration by round-robin iteration.

    Greatest declarations start from all states, least ones from none; each
    sweep updates the equations in order until a sweep changes nothing.
    """
    start = frozenset(lts.states) if decl.polarity == "greatest" else frozenset()
    env = {name: start for name in decl.variables}
    ev = Evaluator(lts, env)
    changed = True
    while changed:
        changed = False
        for name, body in decl.equations:
            value = ev.denote(body)
            if value != ev.env[name]:
                ev.env[name] = value
                changed = True
    return dict(ev.env)


_SAFE = re.compile(r"[^A-Za-z0-9_]")


def state_variables(states):
    """Distinct, parseable variable names X_<state> for the given states."""
    names = {}
    used = set()
    for q in sorted(states):
        base = "X_" + _SAFE.sub("_", q)
        name, k = base, 1
        while name in used:
            k += 1
            name = f"{base}_{k}"
        used.add(name)
        names[q] = name
    return names


def characteristic_formula(lts, q):
    """Greatest declaration with one equation per state reachable from q.

    Returns ``(declaration, root_variable_name)``. Under the greatest
    solution, p satisfies the root variable exactly when p iocos q.
    """
    reach = lts.reachable(q)
    names = state_variables(reach)
    eqs = []
    for r in sorted(reach):
        parts = []
        for a in sort_actions(lts.ins(r)):
            parts.append(FBox(a, disj(*(Var(names[t]) for t in lts.successors(r, a)))))
        for a in sort_actions(lts.outputs):
            parts.append(Box(a, disj(*(Var(names[t]) for t in lts.successors(r, a)))))
        eqs.append((names[r], canonical(conj(*parts))))
    order = [names[q]] + [n for n in (names[r] for r in sorted(reach)) if n != names[q]]
    by_name = dict(eqs)
    return Declaration(tuple((n, by_name[n]) for n in order), "greatest"), names[q]
