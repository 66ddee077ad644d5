"""Modal decomposition of L_iocos formulas through GSOS rules.

A decomposition of a formula over a term t is a set of maps from the
variables of t to formulas; a substitution satisfies the formula at t
exactly when some map is satisfied pointwise. Terms are variables or
operators over distinct variables; rule targets must have the same shape.
"""

from __future__ import annotations

import itertools

from .errors import CapExceeded, FragmentError, IoconfError
from .gsos.derive import derive_lts
from .gsos.rules import Op, Premise, Rule, StateLeaf, Variable, is_flat, substitute, term_vars
from .lts import action
from .logic.formula import FF, TT, And, Dia, Ff, NfDia, Or, Tt, canonical, conj, format_formula
from .logic.fragments import is_iocos_formula
from .logic.semantics import Evaluator

CHI_CAP = 4096


class _Fresh:
    def __init__(self):
        self.n = 0

    def __call__(self, base):
        self.n += 1
        return f"{base}#{self.n}"


def _check_flat(t):
    if not is_flat(t):
        raise IoconfError(f"{t} is not a variable or an operator over distinct variables")


def ruloids(lang, t, a, fresh=None):
    """The rules R(t, a) instantiated at t.

    For a variable x this is the single rule x -a-> x' |- x -a-> x'. For
    f(z1..zn) it is every f-rule emitting a, with sources renamed to the
    z_i and bound variables renamed apart.
    """
    fresh = fresh or _Fresh()
    a = action(a)
    _check_flat(t)
    if isinstance(t, Variable):
        y = fresh(t.name)
        return [Rule("_", (t.name,), (Premise(0, a, y),), a, Variable(y))]
    zs = tuple(v.name for v in t.args)
    out = []
    for r in lang.rules_for(t.name, a):
        ren = {x: Variable(z) for x, z in zip(r.sources, zs)}
        prem = []
        for p in r.premises:
            if p.positive:
                y = fresh(p.target)
                ren[p.target] = Variable(y)
                prem.append(Premise(p.arg, p.action, y))
            else:
                prem.append(p)
        target = substitute(r.target, ren)
        _check_flat(target)
        out.append(Rule(t.name, zs, tuple(prem), r.action, target, name=str(r)))
    return out


rules_emitting = ruloids


def neg_premise(rule, p, x):
    """The formula on x that rules out premise p of the rule."""
    if rule.sources[p.arg] != x:
        return TT
    if p.positive:
        if not p.action.is_input:
            raise FragmentError(f"cannot negate output premise {rule.premise_text(p)} in L_iocos")
        return NfDia(p.action, FF)
    if not p.action.is_output:
        raise FragmentError(f"cannot negate input premise {rule.premise_text(p)} in L_iocos")
    return Dia(p.action, TT)


def chi_functions(lang, t, a, cap=CHI_CAP, fresh=None):
    """All choices of one premise per rule of R(t, a)."""
    rules = ruloids(lang, t, a, fresh)
    size = 1
    for r in rules:
        size *= len(r.premises)
    if size > cap:
        raise CapExceeded(f"{size} premise choices exceed the cap of {cap}")
    return rules, [dict(zip(range(len(rules)), pick)) for pick in itertools.product(*(r.premises for r in rules))]


def psi_of(rules, eta, t):
    """psi_eta: the conjunction of negated chosen premises, per variable."""
    return {x: canonical(conj(*(neg_premise(r, eta[k], x) for k, r in enumerate(rules))))
            for x in sorted(term_vars(t))}


def _normalise(maps, t):
    xs = sorted(term_vars(t))
    out = {}
    for m in maps:
        norm = {x: canonical(m.get(x, TT)) for x in xs}
        if any(f == FF for f in norm.values()):
            continue
        key = tuple(format_formula(norm[x]) for x in xs)
        out.setdefault(key, norm)
    return [out[k] for k in sorted(out)]


def _rule_map(rule, psi2, t, tilde_inputs):
    """Lift a decomposition map psi2 of the target u to the source t."""
    u_vars = term_vars(rule.target)
    out = {}
    for x in term_vars(t):
        parts = []
        for p in rule.premises:
            if rule.sources[p.arg] != x:
                continue
            if p.positive and p.action.is_input and tilde_inputs:
                body = canonical(psi2.get(p.target, TT))
                if p.target in u_vars and body != TT:
                    parts.append(NfDia(p.action, body))
            elif p.positive and p.action.is_output and not tilde_inputs:
                parts.append(Dia(p.action, psi2.get(p.target, TT)))
            elif not p.positive and p.action.is_input and not tilde_inputs:
                parts.append(NfDia(p.action, FF))
        if x in u_vars:
            parts.append(psi2.get(x, TT))
        out[x] = canonical(conj(*parts))
    return out


def rule_map(rule, psi2):
    """Map for one rule and one map of its target, at the rule's source."""
    return _rule_map(rule, psi2, rule.source, rule.action.is_input)


class Decomposer:
    """Decomposition with memo tables for one language.

    Ruloids are instantiated once per (term, action), so targets are stable
    terms and decompositions of (target, body) pairs can be shared.
    """

    def __init__(self, lang, cap=CHI_CAP):
        self.lang = lang
        self.cap = cap
        self._fresh = _Fresh()
        self._ruloids = {}
        self._chi = {}
        self._memo = {}
        self._meets = {}

    def _meet(self, f, g):
        key = (f, g)
        hit = self._meets.get(key)
        if hit is None:
            hit = self._meets[key] = canonical(conj(f, g))
        return hit

    def ruloids(self, t, a):
        key = (t, a)
        if key not in self._ruloids:
            self._ruloids[key] = ruloids(self.lang, t, a, self._fresh)
        return self._ruloids[key]

    def chi_maps(self, t, a):
        key = (t, a)
        if key not in self._chi:
            rules = self.ruloids(t, a)
            size = 1
            for r in rules:
                size *= len(r.premises)
            if size > self.cap:
                raise CapExceeded(f"{size} premise choices exceed the cap of {self.cap}")
            picks = itertools.product(*(r.premises for r in rules))
            self._chi[key] = [psi_of(rules, dict(enumerate(pick)), t) for pick in picks]
        return self._chi[key]

    def decompose(self, t, phi):
        """The decomposition t^-1(phi) as a list of {variable: formula} maps.

        Maps are canonical, deduplicated and sorted; variables of t absent
        from a map are implicitly tt.
        """
        self._admit(phi)
        _check_flat(t)
        return self._decompose(t, canonical(phi))

    @staticmethod
    def _admit(phi):
        if not is_iocos_formula(phi):
            raise FragmentError(f"{format_formula(phi)} is not an L_iocos formula")

    def _decompose(self, t, phi):
        key = (t, phi)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = self._compute(t, phi)
        return hit

    def _compute(self, t, phi):
        if isinstance(phi, Tt):
            return _normalise([{}], t)
        if isinstance(phi, Ff):
            return []
        if isinstance(phi, Or):
            return _normalise([m for c in phi.children for m in self._decompose(t, c)], t)
        if isinstance(phi, And):
            acc = [{}]
            for c in phi.children:
                parts = self._decompose(t, c)
                xs = term_vars(t)
                acc = _normalise([{x: self._meet(m1.get(x, TT), m2.get(x, TT)) for x in xs}
                                  for m1 in acc for m2 in parts], t)
                if not acc:
                    break
            return acc
        a, body = phi.action, phi.body
        maps = []
        if isinstance(phi, NfDia):
            maps.extend(self.chi_maps(t, a))
        for r in self.ruloids(t, a):
            for psi2 in self._decompose(r.target, body):
                maps.append(_rule_map(r, psi2, t, isinstance(phi, NfDia)))
        return _normalise(maps, t)

    def decompose_term(self, t, phi):
        """Decomposition for an arbitrary open term.

        Nested arguments and repeated variables are replaced by fresh
        variables, the flat term is decomposed, and each fresh variable's
        formula is then decomposed over the argument it stands for.
        """
        self._admit(phi)
        return self._decompose_any(t, canonical(phi))

    def _decompose_any(self, t, phi):
        if is_flat(t):
            return self._decompose(t, phi)
        key = (t, phi)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = self._compute_nested(t, phi)
        return hit

    def _compute_nested(self, t, phi):
        args, sub, seen = [], {}, []
        for k, arg in enumerate(t.args):
            if isinstance(arg, Variable) and arg.name not in seen:
                seen.append(arg.name)
                args.append(arg)
            else:
                z = f"_z{k}"
                sub[z] = arg
                args.append(Variable(z))
        result = []
        for m in self._decompose(Op(t.name, tuple(args)), phi):
            partial = [{x: m.get(x, TT) for x in seen}]
            for z, u in sub.items():
                inner = self._decompose_any(u, m.get(z, TT))
                partial = [{x: self._meet(p.get(x, TT), q.get(x, TT)) for x in set(p) | set(q)}
                           for p in partial for q in inner]
            result.extend(partial)
        return _normalise(result, t)


def decompose(lang, t, phi, cap=CHI_CAP):
    """The decomposition t^-1(phi) for a variable or flat term t."""
    return Decomposer(lang, cap).decompose(t, phi)


def decompose_term(lang, t, phi, cap=CHI_CAP):
    """The decomposition t^-1(phi) for an arbitrary open term t."""
    return Decomposer(lang, cap).decompose_term(t, phi)


def _closed(t, sigma):
    return substitute(t, {x: StateLeaf(s) if isinstance(s, str) else s for x, s in sigma.items()})


def direct_check(lang, base, t, sigma, phi):
    """Whether the closed term sigma(t) satisfies phi in the derived LTS."""
    closed = _closed(t, sigma)
    lts = derive_lts(lang, base, closed)
    return Evaluator(lts).satisfies(str(closed), phi)


def decomposed_check(maps, base, sigma):
    ev = Evaluator(base)
    return any(all(ev.satisfies(sigma[x], f) for x, f in m.items()) for m in maps)


def verify_decomposition(lang, base, t, sigma, phi, maps=None):
    """Return ``(direct, decomposed)`` for the closing substitution sigma
    (variables to base states)."""
    if maps is None:
        maps = decompose_term(lang, t, phi)
    return direct_check(lang, base, t, sigma, phi), decomposed_check(maps, base, sigma)


def no_rules_check(lang, base, t, a, sigma):
    """``(cannot_move, some_eta_holds)`` for the input a at sigma(t)."""
    closed = _closed(t, sigma)
    lts = derive_lts(lang, base, closed)
    cannot = not lts.successors(str(closed), a)
    rules, etas = chi_functions(lang, t, a)
    ev = Evaluator(base)
    some = any(all(ev.satisfies(sigma[x], f) for x, f in psi_of(rules, eta, t).items()) for eta in etas)
    return cannot, some


def maps_to_json(maps):
    return [{x: format_formula(f) for x, f in sorted(m.items())} for m in maps]


def maps_to_text(maps):
    if not maps:
        return "(empty: no substitution satisfies the formula)"
    lines = []
    for m in maps:
        lines.append("{" + ", ".join(f"{x}: {format_formula(f)}" for x, f in sorted(m.items())) + "}")
    return "\n".join(lines)
