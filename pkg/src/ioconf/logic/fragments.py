"""Logic fragments: membership, the duality transform, HML translation and
exhaustive bounded enumeration."""

from __future__ import annotations

import enum
import itertools

from ..errors import CapExceeded, FragmentError
from ..lts import action, sort_actions
from .formula import (FF, TT, And, Box, BoxTrace, Dia, FBox, Ff, ForceTrace,
                      NfDia, Or, Tt, Var, canonical, conj, disj, to_text)


class Fragment(enum.Enum):
    HML = "HML"
    L_IOCOS = "L_iocos"
    LT_IOCOS = "Lt_iocos"
    L_EQUIV = "L_equiv"
    L_S = "L_s"
    L_RS = "L_rs"
    L_CC = "L_CC"
    BM_FORCE = "BM_force"
    BM_BOX = "BM_box"

    @classmethod
    def named(cls, name):
        for f in cls:
            if f.value.lower() == name.lower() or f.name.lower() == name.lower():
                return f
        raise FragmentError(f"unknown fragment {name!r}")


def _boolean(f):
    return isinstance(f, (Tt, Ff, And, Or))


def _in_grammar(f, allowed):
    """allowed(f) decides the modal constructors; booleans and variables are
    always admitted."""
    if isinstance(f, (Tt, Ff, Var)):
        return True
    if isinstance(f, (And, Or)):
        return all(_in_grammar(c, allowed) for c in f.children)
    return allowed(f) and _in_grammar(f.body, allowed)


def _iocos_modal(f):
    return (isinstance(f, NfDia) and f.action.is_input) or (isinstance(f, Dia) and f.action.is_output)


def _tilde_modal(f):
    return (isinstance(f, FBox) and f.action.is_input) or (isinstance(f, Box) and f.action.is_output)


def _bm_atom(f, trace_type):
    return (isinstance(f, trace_type) and isinstance(f.body, Box)
            and f.body.action.is_output and isinstance(f.body.body, Ff))


def _bm(f, trace_type):
    if isinstance(f, Tt):
        return True
    if isinstance(f, And):
        return all(_bm_atom(c, trace_type) for c in f.children)
    return _bm_atom(f, trace_type)


def _has_var(f):
    if isinstance(f, Var):
        return True
    if isinstance(f, (And, Or)):
        return any(_has_var(c) for c in f.children)
    return hasattr(f, "body") and _has_var(f.body)


def default_partition(inputs=(), outputs=()):
    """Diamonds over inputs, boxes over outputs, nothing bidirectional."""
    return {"r": frozenset(map(action, inputs)), "l": frozenset(map(action, outputs)), "bi": frozenset()}


def fragment_of(f, partition=None):
    """Every fragment whose grammar generates f.

    HML is taken up to definability: the non-standard and trace modalities
    are all expressible in it. BM_force and BM_box are conjunctions of their
    respective trace atoms (the empty conjunction tt included). For L_CC the
    partition maps "r", "l", "bi" to action sets; by default diamonds range
    over inputs and boxes over outputs.
    """
    out = set()
    if not _has_var(f):
        out.add(Fragment.HML)
    if is_iocos_formula(f):
        out.add(Fragment.L_IOCOS)
    if _in_grammar(f, _tilde_modal):
        out.add(Fragment.LT_IOCOS)
    if _in_equiv(f):
        out.add(Fragment.L_EQUIV)
    if _in_grammar(f, lambda g: isinstance(g, Dia)):
        out.add(Fragment.L_S)
    if _in_grammar(f, lambda g: isinstance(g, Dia) or (isinstance(g, Box) and isinstance(g.body, Ff))):
        out.add(Fragment.L_RS)

    def cc(g):
        if partition is None:
            return (isinstance(g, Dia) and g.action.is_input) or (isinstance(g, Box) and g.action.is_output)
        if isinstance(g, Dia):
            return g.action in partition["r"] | partition["bi"]
        if isinstance(g, Box):
            return g.action in partition["l"] | partition["bi"]
        return False

    if _in_grammar(f, cc):
        out.add(Fragment.L_CC)
    if _bm(f, ForceTrace):
        out.add(Fragment.BM_FORCE)
    if _bm(f, BoxTrace):
        out.add(Fragment.BM_BOX)
    return frozenset(out)


def is_iocos_formula(f):
    """Membership in L_iocos, cached on the formula."""
    return f._cached("_in_iocos", lambda g: _in_grammar(g, _iocos_modal))


def _in_equiv(f):
    if isinstance(f, (Tt, Ff, Var)):
        return True
    if isinstance(f, (And, Or)):
        return all(_in_equiv(c) for c in f.children)
    return _in_grammar(f, _iocos_modal) or _in_grammar(f, _tilde_modal)


def in_fragment(f, fragment, partition=None):
    return fragment in fragment_of(f, partition)


def dual_transform(f):
    """Swap L_iocos and its dual: tt/ff, and/or, <<a?>>/[[a?]], <a!>/[a!].

    The map is an involution, so it is also its own inverse; for every state
    p, p satisfies f exactly when p fails dual_transform(f).
    """
    if isinstance(f, Tt):
        return FF
    if isinstance(f, Ff):
        return TT
    if isinstance(f, And):
        return Or(tuple(dual_transform(c) for c in f.children))
    if isinstance(f, Or):
        return And(tuple(dual_transform(c) for c in f.children))
    if isinstance(f, NfDia):
        return FBox(f.action, dual_transform(f.body))
    if isinstance(f, FBox):
        return NfDia(f.action, dual_transform(f.body))
    if isinstance(f, Dia) and f.action.is_output:
        return Box(f.action, dual_transform(f.body))
    if isinstance(f, Box) and f.action.is_output:
        return Dia(f.action, dual_transform(f.body))
    raise FragmentError(f"{to_text(f)} is outside L_iocos and its dual")


inverse_dual_transform = dual_transform


def to_hml(f):
    """Rewrite into plain HML using the definability equivalences."""
    if isinstance(f, (Tt, Ff, Var)):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(tuple(to_hml(c) for c in f.children))
    if isinstance(f, (Dia, Box)):
        return type(f)(f.action, to_hml(f.body))
    if isinstance(f, NfDia):
        return disj(Dia(f.action, to_hml(f.body)), Box(f.action, FF))
    if isinstance(f, FBox):
        return conj(Dia(f.action, TT), Box(f.action, to_hml(f.body)))
    body = to_hml(f.body)
    boxed = body
    for a in reversed(f.trace):
        boxed = Box(a, boxed)
    if isinstance(f, BoxTrace):
        return boxed
    possible = TT
    for a in reversed(f.trace):
        possible = Dia(a, possible)
    return conj(possible, boxed)


# enumeration

def modal_constructors(fragment, inputs, outputs, partition=None):
    """(constructor, labels) pairs and extra depth-one atoms for a fragment."""
    ins = sort_actions(map(action, inputs))
    outs = sort_actions(set(map(action, outputs)) | {action("delta!")})
    every = sort_actions(set(ins) | set(outs))
    extra = []
    if fragment is Fragment.L_IOCOS:
        cons = [(NfDia, ins), (Dia, outs)]
    elif fragment is Fragment.LT_IOCOS:
        cons = [(FBox, ins), (Box, outs)]
    elif fragment is Fragment.L_S:
        cons = [(Dia, every)]
    elif fragment is Fragment.L_RS:
        cons = [(Dia, every)]
        extra = [Box(a, FF) for a in every]
    elif fragment is Fragment.HML:
        cons = [(Dia, every), (Box, every)]
    elif fragment is Fragment.L_CC:
        part = partition or default_partition(ins, outs)
        cons = [(Dia, sort_actions(part["r"] | part["bi"])), (Box, sort_actions(part["l"] | part["bi"]))]
    else:
        raise FragmentError(f"enumeration is not supported for {fragment.value}")
    return cons, extra


def _combine(items, width, builder):
    for k in range(1, width + 1):
        for combo in itertools.combinations(items, k):
            yield canonical(builder(combo))


def enumerate_fragment(inputs, outputs, fragment, depth, width, cap=1_000_000, partition=None):
    """Yield every formula of the fragment up to modal depth and width.

    Level 0 is {tt, ff}. Level d takes the atoms tt, ff and m(phi) for every
    modality m and phi of level d-1, forms conjunctions of at most ``width``
    atoms and then disjunctions of at most ``width`` such conjunctions.
    Formulas are yielded once each, up to canonical form.
    """
    fragment = Fragment.named(fragment) if isinstance(fragment, str) else fragment
    cons, extra = modal_constructors(fragment, inputs, outputs, partition)
    seen = set()
    count = 0

    def emit(f):
        nonlocal count
        key = to_text(f)
        if key in seen:
            return False
        seen.add(key)
        count += 1
        if count > cap:
            raise CapExceeded(f"more than {cap} formulas")
        return True

    level = [TT, FF]
    for f in level:
        if emit(f):
            yield f
    for _ in range(depth):
        atoms = {to_text(g): g for g in [TT, FF] + extra}
        for ctor, labels in cons:
            for a in labels:
                for phi in level:
                    g = ctor(a, phi)
                    atoms.setdefault(to_text(g), g)
        atom_list = [atoms[k] for k in sorted(atoms)]
        conjs = {to_text(c): c for c in _combine(atom_list, width, lambda cs: And(cs))}
        if len(conjs) > cap:
            raise CapExceeded(f"more than {cap} formulas")
        conj_list = [conjs[k] for k in sorted(conjs)]
        new_level = {}
        for g in _combine(conj_list, width, lambda ds: Or(ds)):
            new_level.setdefault(to_text(g), g)
            if len(new_level) > cap:
                raise CapExceeded(f"more than {cap} formulas")
        level = [new_level[k] for k in sorted(new_level)]
        for f in level:
            if emit(f):
                yield f


def formula_classes(key, inputs, outputs, fragment, depth, width, partition=None):
    """The same enumeration as enumerate_fragment, quotiented by ``key``.

    ``key`` must be compositional (for instance the denotation in a fixed
    LTS): then the set of keys reached equals the set of keys of all
    enumerated formulas, while only one representative per key is kept at
    every stage. Returns {key: representative formula}.
    """
    fragment = Fragment.named(fragment) if isinstance(fragment, str) else fragment
    cons, extra = modal_constructors(fragment, inputs, outputs, partition)

    def quotient(formulas):
        reps = {}
        for f in formulas:
            k = key(f)
            old = reps.get(k)
            if old is None or len(to_text(f)) < len(to_text(old)):
                reps[k] = f
        return reps

    level = quotient([TT, FF])
    found = dict(level)
    for _ in range(depth):
        atom_cands = [TT, FF] + extra
        for ctor, labels in cons:
            for a in labels:
                atom_cands.extend(ctor(a, phi) for phi in level.values())
        atoms = list(quotient(atom_cands).values())
        conjs = list(quotient(_combine(atoms, width, lambda cs: And(cs))).values())
        level = quotient(_combine(conjs, width, lambda ds: Or(ds)))
        for k, f in level.items():
            found.setdefault(k, f)
    return found
