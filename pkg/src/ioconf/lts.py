"""Labelled transition systems with inputs, outputs and quiescence.

Actions carry their kind: ``a?`` is an input, ``a!`` an output. The output
``delta!`` is reserved for observable quiescence. An LTS is immutable once
built; successor indices are computed on construction.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import ParseError, UnknownStateError, ValidationError

INPUT = "?"
OUTPUT = "!"

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, order=True)
class Action:
    name: str
    kind: str

    def __post_init__(self):
        if self.kind not in (INPUT, OUTPUT):
            raise ValueError(f"bad action kind {self.kind!r}")
        if not _NAME.match(self.name):
            raise ValueError(f"bad action name {self.name!r}")

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if len(text) < 2 or text[-1] not in (INPUT, OUTPUT):
            raise ValueError(f"action {text!r} needs a ? or ! suffix")
        return cls(text[:-1], text[-1])

    @property
    def is_input(self):
        return self.kind == INPUT

    @property
    def is_output(self):
        return self.kind == OUTPUT

    def __str__(self):
        return self.name + self.kind

    def __repr__(self):
        return f"Action({str(self)!r})"


DELTA = Action("delta", OUTPUT)


def action(x):
    """Coerce a string such as ``"a?"`` to an Action."""
    return x if isinstance(x, Action) else Action.parse(x)


def sort_actions(actions):
    return sorted(actions, key=str)


@dataclass(frozen=True)
class Lts:
    """A finite LTS over inputs I and outputs O (O always contains delta!)."""

    states: frozenset
    inputs: frozenset
    outputs: frozenset
    transitions: frozenset
    initial: str | None = None
    _succ: dict = field(default=None, init=False, repr=False, compare=False)
    _pred: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        states = frozenset(self.states)
        inputs = frozenset(action(a) for a in self.inputs)
        outputs = frozenset(action(a) for a in self.outputs) | {DELTA}
        trans = frozenset((p, action(a), q) for p, a, q in self.transitions)
        if any(not a.is_input for a in inputs) or any(not a.is_output for a in outputs):
            raise ValidationError("inputs must end in ? and outputs in !")
        labels = inputs | outputs
        succ = defaultdict(lambda: defaultdict(list))
        pred = defaultdict(lambda: defaultdict(list))
        for p, a, q in sorted(trans, key=lambda t: (t[0], str(t[1]), t[2])):
            for s in (p, q):
                if s not in states:
                    raise UnknownStateError(s)
            if a not in labels:
                raise ValidationError(f"action {a} is not in the alphabet")
            succ[p][a].append(q)
            pred[q][a].append(p)
        if self.initial is not None and self.initial not in states:
            raise UnknownStateError(self.initial)
        set_ = object.__setattr__
        set_(self, "states", states)
        set_(self, "inputs", inputs)
        set_(self, "outputs", outputs)
        set_(self, "transitions", trans)
        set_(self, "_succ", {p: {a: tuple(qs) for a, qs in d.items()} for p, d in succ.items()})
        set_(self, "_pred", {p: {a: tuple(qs) for a, qs in d.items()} for p, d in pred.items()})

    @classmethod
    def build(cls, transitions, inputs=(), outputs=(), states=(), initial=None):
        """Convenience constructor; states and alphabet default to what the
        transitions mention."""
        trans = [(p, action(a), q) for p, a, q in transitions]
        all_states = set(states) | {p for p, _, _ in trans} | {q for _, _, q in trans}
        if initial is not None:
            all_states.add(initial)
        ins = {action(a) for a in inputs} | {a for _, a, _ in trans if a.is_input}
        outs = {action(a) for a in outputs} | {a for _, a, _ in trans if a.is_output}
        return cls(frozenset(all_states), frozenset(ins), frozenset(outs), frozenset(trans), initial)

    @property
    def alphabet(self):
        return self.inputs | self.outputs

    def _check(self, p):
        if p not in self.states:
            raise UnknownStateError(p)

    def successors(self, p, a):
        self._check(p)
        return self._succ.get(p, {}).get(action(a), ())

    def predecessors(self, q, a):
        return self._pred.get(q, {}).get(action(a), ())

    def initials(self, p):
        self._check(p)
        return frozenset(self._succ.get(p, {}))

    def ins(self, p):
        return frozenset(a for a in self.initials(p) if a.is_input)

    def outs(self, p):
        return frozenset(a for a in self.initials(p) if a.is_output)

    def moves(self, p):
        """All (action, target) pairs leaving p, in lexicographic order."""
        self._check(p)
        d = self._succ.get(p, {})
        return [(a, q) for a in sort_actions(d) for q in d[a]]

    def after(self, start, trace):
        """The set of states reachable from ``start`` (a state or a set of
        states) by the trace."""
        current = frozenset([start]) if isinstance(start, str) else frozenset(start)
        for s in current:
            self._check(s)
        for a in trace:
            a = action(a)
            current = frozenset(q for p in current for q in self._succ.get(p, {}).get(a, ()))
            if not current:
                break
        return current

    def out_of(self, states):
        if isinstance(states, str):
            states = [states]
        return frozenset(a for p in states for a in self.outs(p))

    def reachable(self, roots):
        if isinstance(roots, str):
            roots = [roots]
        seen = set()
        stack = list(roots)
        for r in stack:
            self._check(r)
        while stack:
            p = stack.pop()
            if p in seen:
                continue
            seen.add(p)
            for qs in self._succ.get(p, {}).values():
                stack.extend(q for q in qs if q not in seen)
        return frozenset(seen)

    def restrict(self, roots):
        """The sub-LTS reachable from ``roots`` (same alphabet)."""
        keep = self.reachable(roots)
        trans = frozenset(t for t in self.transitions if t[0] in keep)
        init = self.initial if self.initial in keep else None
        return Lts(keep, self.inputs, self.outputs, trans, init)

    def is_input_enabled(self, p):
        return all(self.ins(q) == self.inputs for q in self.reachable(p))

    def is_deterministic(self, p):
        return all(len(qs) <= 1 for q in self.reachable(p) for qs in self._succ.get(q, {}).values())

    def classify(self, p):
        return {"input_enabled": self.is_input_enabled(p), "deterministic": self.is_deterministic(p)}

    def traces(self, p, max_length):
        """All traces of p up to the given length (explicitly bounded)."""
        out = [()]
        frontier = [((), frozenset([p]))]
        for _ in range(max_length):
            nxt = []
            for sigma, cur in frontier:
                labels = sort_actions({a for s in cur for a in self._succ.get(s, {})})
                for a in labels:
                    nxt.append((sigma + (a,), self.after(cur, [a])))
            out.extend(s for s, _ in nxt)
            frontier = nxt
        return out

    def validate_quiescence(self):
        """Report violations of quiescence coherence, sorted by state."""
        report = []
        for p in sorted(self.states):
            d = self._succ.get(p, {})
            deltas = d.get(DELTA, ())
            other = any(a.is_output and a != DELTA for a in d)
            if not other and p not in deltas:
                report.append((p, "missing-delta-loop"))
            for q in deltas:
                if q != p:
                    report.append((p, "delta-to-other-state"))
                    break
            if other and deltas:
                report.append((p, "delta-alongside-output"))
        return report

    def close_quiescence(self):
        """Add delta! self-loops to states with no output and no delta!."""
        extra = set()
        for p in self.states:
            d = self._succ.get(p, {})
            if not any(a.is_output for a in d):
                extra.add((p, DELTA, p))
        if not extra:
            return self
        return Lts(self.states, self.inputs, self.outputs, self.transitions | extra, self.initial)

    def union(self, other):
        """Union of two LTSs (states with the same id are identified)."""
        return Lts(self.states | other.states, self.inputs | other.inputs,
                   self.outputs | other.outputs, self.transitions | other.transitions,
                   self.initial)

    def renamed(self, prefix):
        ren = {p: prefix + p for p in self.states}
        return Lts(frozenset(ren.values()), self.inputs, self.outputs,
                   frozenset((ren[p], a, ren[q]) for p, a, q in self.transitions),
                   ren.get(self.initial))


def parse_lts(text, close_quiescence=False, strict=True):
    """Parse the line-based LTS format.

    Directives: ``inputs``, ``outputs``, ``state``, ``init``, ``trans``.
    With ``strict`` the result must be quiescence coherent (after optional
    closure), otherwise a ValidationError lists the violations.
    """
    inputs, outputs, states, trans = [], [], [], []
    declared = set()
    initial = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        words = line.split()
        if not words:
            continue
        cols = []
        pos = 0
        for w in words:
            pos = line.index(w, pos)
            cols.append(pos + 1)
            pos += len(w)
        head, args = words[0], words[1:]

        def err(msg, k=0):
            raise ParseError(msg, lineno, cols[k])

        if head in ("inputs", "outputs"):
            for k, name in enumerate(args, start=1):
                if name.endswith(("?", "!")):
                    name = name[:-1]
                if not _NAME.match(name):
                    err(f"bad action name {name!r}", k)
                if head == "inputs" and name == DELTA.name:
                    err("delta is reserved for the quiescence output", k)
                (inputs if head == "inputs" else outputs).append(name)
        elif head == "state":
            if not args:
                err("state needs at least one id")
            for k, s in enumerate(args, start=1):
                if s in declared:
                    err(f"duplicate state {s!r}", k)
                declared.add(s)
                states.append(s)
        elif head == "init":
            if len(args) != 1:
                err("init takes exactly one state")
            if initial is not None:
                err("init given twice")
            initial = args[0]
        elif head == "trans":
            if len(args) != 3:
                err("trans takes: source action destination")
            src, act, dst = args
            try:
                a = Action.parse(act)
            except ValueError as e:
                err(str(e), 2)
            trans.append((src, a, dst, lineno, cols))
        else:
            err(f"unknown directive {head!r}")

    in_actions = {Action(n, INPUT) for n in inputs}
    out_actions = {Action(n, OUTPUT) for n in outputs} | {DELTA}
    for src, a, dst, lineno, cols in trans:
        if a not in in_actions | out_actions:
            raise ParseError(f"unknown action {a}", lineno, cols[2])
        for s, k in ((src, 1), (dst, 3)):
            if s not in declared:
                raise ParseError(f"unknown state {s!r}", lineno, cols[k])
    if initial is not None and initial not in declared:
        raise ParseError(f"unknown initial state {initial!r}")
    lts = Lts(frozenset(states), frozenset(in_actions), frozenset(out_actions),
              frozenset((s, a, d) for s, a, d, _, _ in trans), initial)
    if close_quiescence:
        lts = lts.close_quiescence()
    if strict:
        report = lts.validate_quiescence()
        if report:
            shown = ", ".join(f"{p}: {kind}" for p, kind in report)
            raise ValidationError(f"quiescence is not coherent ({shown})")
    return lts


def load_lts(path, close_quiescence=False, strict=True):
    with open(path, encoding="utf-8") as fh:
        return parse_lts(fh.read(), close_quiescence=close_quiescence, strict=strict)


def format_lts(lts):
    """Render an LTS in the format read by parse_lts."""
    lines = ["inputs " + " ".join(a.name for a in sort_actions(lts.inputs))]
    lines[0] = lines[0].rstrip()
    outs = [a.name for a in sort_actions(lts.outputs) if a != DELTA]
    lines.append(("outputs " + " ".join(outs)).rstrip())
    lines.append("state " + " ".join(sorted(lts.states)))
    if lts.initial is not None:
        lines.append(f"init {lts.initial}")
    for p, a, q in sorted(lts.transitions, key=lambda t: (t[0], str(t[1]), t[2])):
        lines.append(f"trans {p} {a} {q}")
    return "\n".join(lines) + "\n"
