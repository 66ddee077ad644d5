import itertools
from collections import deque

from ..errors import CapExceeded, IoconfError
from ..lts import Lts
from .rules import Op, StateLeaf, substitute

DEFAULT_CAP = 10_000


class Deriver:
    """Transitions of closed terms, computed by structural induction and
    memoised per instance."""

    def __init__(self, lang, base):
        self.lang = lang
        self.base = base
        self._memo = {}

    def transitions(self, term):
        hit = self._memo.get(term)
        if hit is not None:
            return hit
        if isinstance(term, StateLeaf):
            out = [(a, StateLeaf(q)) for a, q in self.base.moves(term.state)]
        elif isinstance(term, Op):
            out = self._op_transitions(term)
        else:
            raise IoconfError(f"{term} is not a closed term")
        self._memo[term] = out
        return out

    def _op_transitions(self, term):
        args = term.args
        moves = [self.transitions(a) for a in args]
        result = set()
        for rule in self.lang.rules_for(term.name):
            if any(p.action in {a for a, _ in moves[p.arg]} for p in rule.premises if not p.positive):
                continue
            positives = [p for p in rule.premises if p.positive]
            options = [[t for a, t in moves[p.arg] if a == p.action] for p in positives]
            for choice in itertools.product(*options):
                sigma = {x: args[i] for i, x in enumerate(rule.sources)}
                sigma.update({p.target: t for p, t in zip(positives, choice)})
                result.add((rule.action, substitute(rule.target, sigma)))
        return sorted(result, key=lambda m: (str(m[0]), str(m[1])))


def derive_lts(lang, base, roots, cap=DEFAULT_CAP):
    """The LTS of closed terms reachable from ``roots``.

    State ids are the printed terms (``and2(@p,@q)``). Raises CapExceeded
    once more than ``cap`` distinct terms are reached.
    """
    if isinstance(roots, (Op, StateLeaf)):
        roots = [roots]
    d = Deriver(lang, base)
    seen = set()
    queue = deque()
    for r in roots:
        if r not in seen:
            seen.add(r)
            queue.append(r)
    trans = set()
    while queue:
        t = queue.popleft()
        for a, u in d.transitions(t):
            trans.add((str(t), a, str(u)))
            if u not in seen:
                seen.add(u)
                if len(seen) > cap:
                    raise CapExceeded(f"more than {cap} reachable terms")
                queue.append(u)
    return Lts(frozenset(str(t) for t in seen), base.inputs | lang.inputs,
               base.outputs | lang.outputs, frozenset(trans),
               str(roots[0]) if roots else None)


def closed_terms(lang, states, depth, ops=None):
    """All closed terms of operator depth <= depth over the given base states."""
    ops = sorted(ops or lang.signature)
    level = [StateLeaf(s) for s in sorted(states)]
    every = list(level)
    known = set(every)
    for _ in range(depth):
        new = []
        for f in ops:
            for args in itertools.product(every, repeat=lang.signature[f]):
                t = Op(f, tuple(args))
                if t not in known:
                    known.add(t)
                    new.append(t)
        every.extend(new)
    return every
