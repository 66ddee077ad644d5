"""The iocos rule format and quiescent consistency of GSOS languages."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..lts import DELTA
from .rules import Op, StateLeaf, Variable

DELTA2_CAP = 4096


@dataclass
class Violation:
    clause: str
    op: str
    rules: tuple
    detail: str = ""

    @property
    def top_clause(self):
        return self.clause.split("(")[0]

    def __str__(self):
        head = f"clause {self.top_clause} violated"
        if self.clause != self.top_clause:
            head += f" ({self.clause})"
        body = "; ".join(f"[{r}]" for r in self.rules)
        return f"{head} by {self.op}: {self.detail} {body}".replace("  ", " ")

    def to_dict(self):
        return {"clause": self.clause, "operator": self.op, "detail": self.detail,
                "rules": [str(r) for r in self.rules]}


@dataclass
class FormatReport:
    violations: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)

    @property
    def passes(self):
        return not self.violations and not self.inconclusive

    @property
    def clauses(self):
        return sorted({v.clause for v in self.violations})

    @property
    def top_clauses(self):
        return sorted({v.top_clause for v in self.violations})

    def to_dict(self):
        return {"passes": self.passes, "violations": [v.to_dict() for v in self.violations],
                "inconclusive": list(self.inconclusive)}

    def __str__(self):
        if self.passes:
            return "format satisfied"
        lines = [str(v) for v in self.violations]
        lines += [f"inconclusive: {msg}" for msg in self.inconclusive]
        return "\n".join(lines)


# iocos format

def _match(t1, r1, t2, r2, m):
    """Match target t1 of r1 against t2 of r2, renaming bound variables.

    Source variables correspond by position; a bound variable may only map to
    a bound variable of r2 attached to the same argument. ``m`` collects the
    renaming and is updated in place.
    """
    if isinstance(t1, Variable):
        if not isinstance(t2, Variable):
            return False
        a, b = t1.name, t2.name
        if a in r1.sources:
            return b in r2.sources and r1.sources.index(a) == r2.sources.index(b)
        if b in r2.sources or r1.bound_arg(a) != r2.bound_arg(b):
            return False
        if a in m:
            return m[a] == b
        if b in m.values():
            return False
        m[a] = b
        return True
    if isinstance(t1, Op):
        return (isinstance(t2, Op) and t1.name == t2.name and len(t1.args) == len(t2.args)
                and all(_match(x, r1, y, r2, m) for x, y in zip(t1.args, t2.args)))
    return isinstance(t2, StateLeaf) and t1 == t2


def _clause2_failures(r, r2, cand):
    """Sub-clauses of clause 2 that candidate ``cand`` violates for the pair
    (r, r2), or None when its target does not match r2's."""
    m = {}
    if not _match(cand.target, cand, r2.target, r2, m):
        return None
    failed = set()
    n = r.arity
    if any(not cand.positive_trigger(i) <= r.positive_trigger(i) for i in range(n)):
        failed.add("a")
    if any(not cand.negative_trigger(i) <= r.negative_trigger(i) for i in range(n)):
        failed.add("b")
    in_t2 = {v.name for v in _vars(r2.target)}
    have = {(p.arg, p.action, p.target) for p in r2.premises if p.positive}
    for p in cand.premises:
        if p.positive and p.action.is_input and p.target in m and m[p.target] in in_t2:
            if (p.arg, p.action, m[p.target]) not in have:
                failed.add("c")
    return failed


def _vars(t):
    if isinstance(t, Variable):
        yield t
    elif isinstance(t, Op):
        for a in t.args:
            yield from _vars(a)


def check_iocos_format(lang):
    """Check the three clauses of the iocos format for every operator.

    Clause 1: rules emitting an input have only output labels on negative
    premises and only input labels on positive ones. Clause 3 is the mirror
    image for output-emitting rules. Clause 2: for every pair of rules r, r'
    emitting the same input, some rule r'' emitting it with the target of r'
    has (a) positive and (b) negative triggers included in those of r, and
    (c) every input premise of r'' binding a variable of the target also
    occurs in r'. A failing pair is blamed on (a) if no candidate meets (a),
    on (b) if none meets (a) and (b), and on (c) otherwise.
    """
    report = FormatReport()
    for op in lang.operators:
        rules = lang.rules_for(op)
        for r in rules:
            want_neg, want_pos = ("output", "input") if r.action.is_input else ("input", "output")
            clause = "1" if r.action.is_input else "3"
            for p in r.premises:
                kind = "output" if p.action.is_output else "input"
                if (not p.positive and kind != want_neg) or (p.positive and kind != want_pos):
                    sign = "negative" if not p.positive else "positive"
                    report.violations.append(Violation(
                        clause, op, (r,), f"{sign} {kind} premise {r.premise_text(p)} in a rule emitting {r.action}"))
        for a in lang.actions_of(op):
            if not a.is_input:
                continue
            emitting = lang.rules_for(op, a)
            for r, r2 in itertools.product(emitting, repeat=2):
                results = [f for f in (_clause2_failures(r, r2, c) for c in emitting) if f is not None]
                if any(not f for f in results):
                    continue
                if not any("a" not in f for f in results):
                    sub = "a"
                elif not any(not (f & {"a", "b"}) for f in results):
                    sub = "b"
                else:
                    sub = "c"
                report.violations.append(Violation(
                    f"2({sub})", op, (r, r2), f"no rule for {a} with target {r2.target} matches the pair"))
    return report


# contradictory premise sets

def contradicts(h1, h2, outputs):
    """Whether premise sets h1 and h2 (over shared argument positions) have
    contradictory subsets.

    Three ways to contradict: x -a-> y against x -/a->; x -b!-> y against
    x -delta!-> z for b! other than delta!; non-empty negative output
    premises on x whose union refuses every output.
    """
    outputs = frozenset(outputs) | {DELTA}
    for first, second in ((h1, h2), (h2, h1)):
        for p in first:
            if not p.positive:
                continue
            for q in second:
                if q.arg != p.arg:
                    continue
                if not q.positive and q.action == p.action:
                    return True
                if (q.positive and q.action == DELTA and p.action.is_output
                        and p.action != DELTA):
                    return True
    args = {p.arg for p in h1} | {p.arg for p in h2}
    for x in args:
        n1 = {p.action for p in h1 if p.arg == x and not p.positive and p.action.is_output}
        n2 = {p.action for p in h2 if p.arg == x and not p.positive and p.action.is_output}
        if n1 and n2 and n1 | n2 == outputs:
            return True
    return False


# quiescent consistency

def _premise_keys(premises):
    return frozenset(p.key() for p in premises)


def check_quiescent_consistent(lang, cap=DELTA2_CAP):
    """Check conditions [delta1] and [delta2] for every operator.

    [delta1]: each delta!-rule contradicts every other output-emitting rule
    and has a target f(y1..yn) with y_i = x_i or x_i -delta!-> y_i among
    its premises. [delta2]: for every choice of one negated premise per
    non-delta output rule that is not self-contradictory, the rule with
    those premises and conclusion f(x) -delta!-> f(x) is present (premise
    sets compared up to renaming of bound variables). Selection spaces
    larger than ``cap`` are reported as inconclusive.
    """
    report = FormatReport()
    outputs = lang.outputs
    for op in lang.operators:
        rules = lang.rules_for(op)
        delta_rules = [r for r in rules if r.action == DELTA]
        others = [r for r in rules if r.action.is_output and r.action != DELTA]
        for r in delta_rules:
            for r2 in others:
                if not contradicts(r.premises, r2.premises, outputs):
                    report.violations.append(Violation(
                        "delta1", op, (r, r2), "delta rule premises do not contradict an output rule"))
            if not _quiescent_target(r):
                report.violations.append(Violation(
                    "delta1", op, (r,), f"target {r.target} must be {op} over sources or delta-derivatives"))
        size = 1
        for r in others:
            size *= len(r.premises)
        if size > cap:
            report.inconclusive.append(f"{op}: {size} premise selections exceed the cap of {cap}")
            continue
        existing = {_premise_keys(r.premises) for r in delta_rules if r.target == r.source}
        for choice in itertools.product(*(r.premises for r in others)):
            neg = [p.negated(f"z{k}") for k, p in enumerate(choice)]
            if contradicts(neg, neg, outputs):
                continue
            if _premise_keys(neg) not in existing:
                sources = _sources(lang, op)
                shown = ", ".join(_premise_text(sources, p) for p in _dedupe(neg))
                report.violations.append(Violation(
                    "delta2", op, tuple(others),
                    f"missing rule {shown + ' ' if shown else ''}|- {op}(...) -delta!-> {op}(...)"))
    return report


def complete_quiescence(lang):
    """Add the delta!-rules that [delta2] asks for, leaving other rules alone."""
    from .rules import Language, Rule

    rules = list(lang.rules)
    for op in lang.operators:
        own = lang.rules_for(op)
        others = [r for r in own if r.action.is_output and r.action != DELTA]
        sources = _sources(lang, op)
        existing = {_premise_keys(r.premises) for r in own if r.action == DELTA and r.target == r.source}
        for choice in itertools.product(*(r.premises for r in others)):
            neg = [p.negated(f"z{k}") for k, p in enumerate(choice)]
            if contradicts(neg, neg, lang.outputs) or _premise_keys(neg) in existing:
                continue
            prem = _dedupe(neg)
            used = set(sources)
            fixed = []
            for k, p in enumerate(prem):
                if p.positive:
                    name = f"z{k + 1}"
                    while name in used:
                        name += "_"
                    used.add(name)
                    p = type(p)(p.arg, p.action, name)
                fixed.append(p)
            existing.add(_premise_keys(neg))
            rules.append(Rule(op, sources, tuple(fixed), DELTA, Op(op, tuple(map(Variable, sources)))))
    return Language(dict(lang.signature), rules, lang.inputs, lang.outputs)


def _sources(lang, op):
    rules = lang.rules_for(op)
    if rules:
        return rules[0].sources
    return tuple(f"x{k}" for k in range(1, lang.signature[op] + 1))


def _dedupe(premises):
    seen = {}
    for p in premises:
        seen.setdefault(p.key(), p)
    return [seen[k] for k in sorted(seen)]


def _premise_text(sources, p):
    x = sources[p.arg]
    return f"{x} -{p.action}-> {p.target}" if p.positive else f"{x} -/{p.action}->"


def _quiescent_target(r):
    t = r.target
    if not isinstance(t, Op) or t.name != r.op or len(t.args) != r.arity:
        return False
    delta_targets = {(p.arg, p.target) for p in r.premises if p.positive and p.action == DELTA}
    for i, y in enumerate(t.args):
        if not isinstance(y, Variable):
            return False
        if y.name != r.sources[i] and (i, y.name) not in delta_targets:
            return False
    return True


def negate(p, fresh="z"):
    """Negation of a premise: x -a-> y becomes x -/a->, and x -/a-> becomes
    x -a-> fresh."""
    return p.negated(fresh)
