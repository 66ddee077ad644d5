"""Ready-made operators: merge, choice, interleaving, relabelling,
restriction, plus nil and action prefixes."""

from ..errors import IoconfError
from ..lts import DELTA, action, sort_actions
from .rules import Language, Op, Premise, Rule, Variable


def _alphabet(inputs, outputs):
    ins = sort_actions(set(map(action, inputs)))
    outs = sort_actions(set(map(action, outputs)) | {DELTA})
    return ins, outs


def merge(inputs, outputs, n=2, name=None):
    """n-ary synchronous merge: every argument performs the same action."""
    name = name or f"and{n}"
    ins, outs = _alphabet(inputs, outputs)
    xs = tuple(f"x{k}" for k in range(1, n + 1))
    ys = tuple(f"y{k}" for k in range(1, n + 1))
    rules = []
    for a in ins + outs:
        prem = tuple(Premise(k, a, ys[k]) for k in range(n))
        rules.append(Rule(name, xs, prem, a, Op(name, tuple(map(Variable, ys)))))
    return Language({name: n}, rules, frozenset(ins), frozenset(outs))


def choice(inputs, outputs, name="choice"):
    """Nondeterministic choice with a joint quiescence rule."""
    ins, outs = _alphabet(inputs, outputs)
    xs = ("x1", "x2")
    rules = []
    for a in ins + outs:
        if a == DELTA:
            continue
        rules.append(Rule(name, xs, (Premise(0, a, "y1"),), a, Variable("y1")))
        rules.append(Rule(name, xs, (Premise(1, a, "y2"),), a, Variable("y2")))
    rules.append(Rule(name, xs, (Premise(0, DELTA, "y1"), Premise(1, DELTA, "y2")), DELTA,
                      Op(name, (Variable("y1"), Variable("y2")))))
    return Language({name: 2}, rules, frozenset(ins), frozenset(outs))


def interleave(inputs, outputs, name="par"):
    """Interleaving parallel composition (without quiescence rules)."""
    ins, outs = _alphabet(inputs, outputs)
    xs = ("x1", "x2")
    rules = []
    for a in ins + outs:
        if a == DELTA:
            continue
        rules.append(Rule(name, xs, (Premise(0, a, "y1"),), a, Op(name, (Variable("y1"), Variable("x2")))))
        rules.append(Rule(name, xs, (Premise(1, a, "y2"),), a, Op(name, (Variable("x1"), Variable("y2")))))
    return Language({name: 2}, rules, frozenset(ins), frozenset(outs))


def relabel(inputs, outputs, mapping, name="relabel"):
    """Relabelling by ``mapping`` (unlisted actions are left unchanged).

    The mapping must preserve the kind of every action and fix delta!.
    """
    ins, outs = _alphabet(inputs, outputs)
    f = {action(k): action(v) for k, v in dict(mapping).items()}
    for a, b in f.items():
        if a.kind != b.kind:
            raise IoconfError(f"relabelling {a} to {b} changes the action kind")
    if f.get(DELTA, DELTA) != DELTA:
        raise IoconfError("relabelling must map delta! to delta!")
    rules = []
    for a in ins + outs:
        b = f.get(a, a)
        rules.append(Rule(name, ("x",), (Premise(0, a, "y"),), b, Op(name, (Variable("y"),))))
    targets = {f.get(a, a) for a in ins + outs}
    return Language({name: 1}, rules, frozenset(ins) | {a for a in targets if a.is_input},
                    frozenset(outs) | {a for a in targets if a.is_output})


def restrict(inputs, outputs, blocked, name="restrict"):
    """Restriction: actions in ``blocked`` are removed."""
    ins, outs = _alphabet(inputs, outputs)
    blocked = set(map(action, blocked))
    if DELTA in blocked:
        raise IoconfError("delta! cannot be restricted")
    rules = [Rule(name, ("x",), (Premise(0, a, "y"),), a, Op(name, (Variable("y"),)))
             for a in ins + outs if a not in blocked]
    return Language({name: 1}, rules, frozenset(ins), frozenset(outs))


def nil(name="0"):
    """The quiescent deadlock process."""
    return Language({name: 0}, [Rule(name, (), (), DELTA, Op(name))])


def prefixes(inputs, outputs):
    """Unary prefix operators ``in_a`` / ``out_b``; input prefixes are
    quiescent, output prefixes are not."""
    ins, outs = _alphabet(inputs, outputs)
    sig, rules = {}, []
    for a in ins:
        op = f"in_{a.name}"
        sig[op] = 1
        rules.append(Rule(op, ("x",), (), a, Variable("x")))
        rules.append(Rule(op, ("x",), (), DELTA, Op(op, (Variable("x"),))))
    for a in outs:
        if a == DELTA:
            continue
        op = f"out_{a.name}"
        sig[op] = 1
        rules.append(Rule(op, ("x",), (), a, Variable("x")))
    return Language(sig, rules, frozenset(ins), frozenset(outs))


BUILTINS = {
    "merge": merge,
    "choice": choice,
    "interleave": interleave,
    "relabel": relabel,
    "restrict": restrict,
}


def builtin(name, inputs, outputs, *args, **kwargs):
    try:
        make = BUILTINS[name]
    except KeyError:
        raise IoconfError(f"unknown builtin {name!r}") from None
    return make(inputs, outputs, *args, **kwargs)
