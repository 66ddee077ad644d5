from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import IoconfError
from ..lts import DELTA, action, sort_actions


@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Op:
    name: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class StateLeaf:
    """A state of the base LTS inside a closed term."""
    state: str

    def __str__(self):
        return "@" + self.state


def term_vars(t):
    if isinstance(t, Variable):
        return {t.name}
    if isinstance(t, Op):
        return set().union(*(term_vars(a) for a in t.args)) if t.args else set()
    return set()


def term_depth(t):
    if isinstance(t, Op):
        return 1 + max((term_depth(a) for a in t.args), default=0)
    return 0


def substitute(t, sigma):
    if isinstance(t, Variable):
        return sigma.get(t.name, t)
    if isinstance(t, Op):
        return Op(t.name, tuple(substitute(a, sigma) for a in t.args))
    return t


def is_flat(t):
    """A variable, or an operator applied to distinct variables."""
    if isinstance(t, Variable):
        return True
    if isinstance(t, Op):
        names = [a.name for a in t.args if isinstance(a, Variable)]
        return len(names) == len(t.args) and len(set(names)) == len(names)
    return False


@dataclass(frozen=True)
class Premise:
    """``x_arg -a-> target`` when target is set, ``x_arg -/a->`` otherwise.

    ``arg`` indexes the argument of the rule's source.
    """
    arg: int
    action: object
    target: str | None = None

    @property
    def positive(self):
        return self.target is not None

    def negated(self, fresh):
        if self.positive:
            return Premise(self.arg, self.action)
        return Premise(self.arg, self.action, fresh)

    def key(self):
        return (self.arg, str(self.action), self.positive)


@dataclass(frozen=True)
class Rule:
    op: str
    sources: tuple
    premises: tuple
    action: object
    target: object
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "action", action(self.action))
        object.__setattr__(self, "premises", tuple(self.premises))
        names = list(self.sources) + [p.target for p in self.premises if p.positive]
        if len(set(names)) != len(names):
            raise IoconfError(f"rule for {self.op} repeats a variable")
        for p in self.premises:
            if not 0 <= p.arg < len(self.sources):
                raise IoconfError(f"premise refers to argument {p.arg} of {self.op}")
        unbound = term_vars(self.target) - set(names)
        if unbound:
            raise IoconfError(f"target uses unbound variables {sorted(unbound)}")

    @property
    def arity(self):
        return len(self.sources)

    @property
    def source(self):
        return Op(self.op, tuple(Variable(x) for x in self.sources))

    def positive_trigger(self, i):
        return frozenset(p.action for p in self.premises if p.positive and p.arg == i)

    def negative_trigger(self, i):
        return frozenset(p.action for p in self.premises if not p.positive and p.arg == i)

    def bound_arg(self, var):
        """Argument index of the premise binding ``var`` (None for sources)."""
        for p in self.premises:
            if p.target == var:
                return p.arg
        return None

    def premise_text(self, p):
        x = self.sources[p.arg]
        return f"{x} -{p.action}-> {p.target}" if p.positive else f"{x} -/{p.action}->"

    def __str__(self):
        prem = ", ".join(self.premise_text(p) for p in self.premises)
        head = f"{prem} |- " if prem else "|- "
        return f"{head}{self.source} -{self.action}-> {self.target}"


@dataclass
class Language:
    """A GSOS language: signature, rules and the action alphabet."""

    signature: dict
    rules: list
    inputs: frozenset = frozenset()
    outputs: frozenset = frozenset()

    def __post_init__(self):
        acts = {r.action for r in self.rules} | {p.action for r in self.rules for p in r.premises}
        self.inputs = frozenset(map(action, self.inputs)) | {a for a in acts if a.is_input}
        self.outputs = frozenset(map(action, self.outputs)) | {a for a in acts if a.is_output} | {DELTA}
        for r in self.rules:
            if r.op not in self.signature:
                raise IoconfError(f"rule for undeclared operator {r.op}")
            if self.signature[r.op] != r.arity:
                raise IoconfError(f"{r.op} has arity {self.signature[r.op]}, rule uses {r.arity}")
        self._by_op = {}
        for r in self.rules:
            self._by_op.setdefault(r.op, []).append(r)

    def rules_for(self, op, act=None):
        rules = self._by_op.get(op, [])
        if act is None:
            return list(rules)
        act = action(act)
        return [r for r in rules if r.action == act]

    def actions_of(self, op):
        return sort_actions({r.action for r in self._by_op.get(op, [])})

    @property
    def operators(self):
        return sorted(self.signature)

    def combine(self, *others):
        sig = dict(self.signature)
        rules = list(self.rules)
        ins, outs = set(self.inputs), set(self.outputs)
        for o in others:
            for f, n in o.signature.items():
                if sig.get(f, n) != n:
                    raise IoconfError(f"operator {f} declared with two arities")
                sig[f] = n
            rules.extend(r for r in o.rules if r not in rules)
            ins |= o.inputs
            outs |= o.outputs
        return Language(sig, rules, frozenset(ins), frozenset(outs))

    def with_alphabet(self, inputs=(), outputs=()):
        return Language(dict(self.signature), list(self.rules),
                        self.inputs | set(map(action, inputs)), self.outputs | set(map(action, outputs)))

    def __str__(self):
        return format_language(self)


def format_language(lang):
    lines = ["sig " + " ".join(f"{f}/{n}" for f, n in sorted(lang.signature.items()))]
    ins = [a.name for a in sort_actions(lang.inputs)]
    outs = [a.name for a in sort_actions(lang.outputs) if a != DELTA]
    if ins:
        lines.append("inputs " + " ".join(ins))
    if outs:
        lines.append("outputs " + " ".join(outs))
    lines.extend(str(r) for r in lang.rules)
    return "\n".join(lines) + "\n"
