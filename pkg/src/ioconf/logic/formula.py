"""Formula syntax tree, canonical form and printing."""

from __future__ import annotations

from dataclasses import dataclass

from ..lts import Action


class Formula:
    __slots__ = ()

    # Subclasses are frozen dataclasses; hash, text and canonical form are
    # cached in the instance dict since formulas are shared heavily.
    def _cached(self, key, make):
        try:
            return self.__dict__[key]
        except KeyError:
            value = make(self)
            object.__setattr__(self, key, value)
            return value

    def __and__(self, other):
        return And((self, other))

    def __or__(self, other):
        return Or((self, other))

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Tt(Formula):
    pass


@dataclass(frozen=True)
class Ff(Formula):
    pass


TT = Tt()
FF = Ff()


@dataclass(frozen=True)
class And(Formula):
    children: tuple


@dataclass(frozen=True)
class Or(Formula):
    children: tuple


@dataclass(frozen=True)
class Dia(Formula):
    """<a> body: some a-successor satisfies body."""
    action: Action
    body: Formula


@dataclass(frozen=True)
class Box(Formula):
    """[a] body: every a-successor satisfies body."""
    action: Action
    body: Formula


@dataclass(frozen=True)
class NfDia(Formula):
    """<<a?>> body: either a? is refused or some a?-successor satisfies body."""
    action: Action
    body: Formula


@dataclass(frozen=True)
class FBox(Formula):
    """[[a?]] body: a? is possible and every a?-successor satisfies body."""
    action: Action
    body: Formula


@dataclass(frozen=True)
class ForceTrace(Formula):
    """<| trace |> body: the trace is possible and every derivative satisfies body."""
    trace: tuple
    body: Formula


@dataclass(frozen=True)
class BoxTrace(Formula):
    """[| trace |] body: every derivative after the trace satisfies body."""
    trace: tuple
    body: Formula


@dataclass(frozen=True)
class Var(Formula):
    name: str


def _memo_hash(cls):
    plain = cls.__hash__
    cls.__hash__ = lambda self: self._cached("_hash", plain)
    return cls


for _cls in (Tt, Ff, And, Or, Dia, Box, NfDia, FBox, ForceTrace, BoxTrace, Var):
    _memo_hash(_cls)

MODALITIES = (Dia, Box, NfDia, FBox)
TRACE_MODALITIES = (ForceTrace, BoxTrace)


def conj(*fs):
    return And(tuple(fs))


def disj(*fs):
    return Or(tuple(fs))


def is_modal(f):
    return isinstance(f, MODALITIES + TRACE_MODALITIES)


def modal_depth(f):
    if isinstance(f, (And, Or)):
        return max((modal_depth(c) for c in f.children), default=0)
    if isinstance(f, MODALITIES):
        return 1 + modal_depth(f.body)
    if isinstance(f, TRACE_MODALITIES):
        return len(f.trace) + modal_depth(f.body)
    return 0


def max_width(f):
    if isinstance(f, (And, Or)):
        return max([len(f.children)] + [max_width(c) for c in f.children])
    if is_modal(f):
        return max_width(f.body)
    return 1


def free_vars(f):
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, (And, Or)):
        return set().union(*(free_vars(c) for c in f.children))
    if is_modal(f):
        return free_vars(f.body)
    return set()


def is_closed(f):
    """No free variables (cached on the formula)."""
    return f._cached("_closed", lambda g: not free_vars(g))


# canonical form

def canonical(f):
    """Flatten, drop units, collapse absorbing elements, dedupe and sort."""
    return f._cached("_canonical", _canonical)


def _canonical(f):
    if isinstance(f, (And, Or)):
        is_and = isinstance(f, And)
        unit, zero = (TT, FF) if is_and else (FF, TT)
        kids = {}
        stack = [canonical(c) for c in f.children]
        for c in stack:
            if type(c) is type(f):
                for g in c.children:
                    kids.setdefault(to_text(g), g)
            elif c == zero:
                return zero
            elif c != unit:
                kids.setdefault(to_text(c), c)
        if not kids:
            return unit
        if len(kids) == 1:
            return next(iter(kids.values()))
        return type(f)(tuple(kids[k] for k in sorted(kids)))
    if isinstance(f, MODALITIES):
        return type(f)(f.action, canonical(f.body))
    if isinstance(f, TRACE_MODALITIES):
        return type(f)(f.trace, canonical(f.body))
    return f


# printing

_OPEN = {Dia: "<", Box: "[", NfDia: "<<", FBox: "[["}
_CLOSE = {Dia: ">", Box: "]", NfDia: ">>", FBox: "]]"}


def _trace_text(trace):
    return ".".join(str(a) for a in trace) if trace else "eps"


def _raw(f):
    if not isinstance(f, Formula):
        raise TypeError(f"not a formula: {f!r}")
    return f._cached("_text", _raw_text)


def _raw_text(f):
    if isinstance(f, Tt):
        return "tt"
    if isinstance(f, Ff):
        return "ff"
    if isinstance(f, Var):
        return f.name
    if isinstance(f, And):
        if not f.children:
            return "tt"
        return " & ".join(_wrap(c, (And, Or)) for c in f.children)
    if isinstance(f, Or):
        if not f.children:
            return "ff"
        return " | ".join(_wrap(c, Or) for c in f.children)
    if isinstance(f, MODALITIES):
        t = type(f)
        return f"{_OPEN[t]}{f.action}{_CLOSE[t]}{_body(f.body)}"
    if isinstance(f, ForceTrace):
        return f"<|{_trace_text(f.trace)}|>{_body(f.body)}"
    if isinstance(f, BoxTrace):
        return f"[|{_trace_text(f.trace)}|]{_body(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def _wrap(f, kinds):
    s = _raw(f)
    return f"({s})" if isinstance(f, kinds) and len(f.children) > 1 else s


def _body(f):
    if isinstance(f, (And, Or)) and len(f.children) > 1:
        return f"({_raw(f)})"
    return _raw(f)


def to_text(f):
    """Text of f exactly as given (no canonicalisation)."""
    return _raw(f)


def format_formula(f):
    """Deterministic canonical text: the printer used by all outputs."""
    return to_text(canonical(f))
