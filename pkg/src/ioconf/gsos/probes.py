from dataclasses import dataclass

from ..conformance import distinguishing_formula, iocos_relation
from ..errors import IoconfError
from ..lts import DELTA
from .derive import DEFAULT_CAP, derive_lts
from .rules import Op, StateLeaf


def _leaf(x):
    if isinstance(x, (Op, StateLeaf)):
        return x
    return StateLeaf(x)


@dataclass
class ProbeResult:
    holds: bool
    left: str
    right: str
    witness: object = None


def precongruence_probe(lang, base, op, pairs, cap=DEFAULT_CAP):
    """Check whether op(p1..pn) iocos op(q1..qn) given p_k iocos q_k.

    ``pairs`` lists (p_k, q_k) per argument, as base states or closed terms.
    On failure the witness is an L_iocos formula true of the left term and
    false of the right one.
    """
    pairs = [tuple(map(_leaf, pq)) for pq in pairs]
    if len(pairs) != lang.signature[op]:
        raise IoconfError(f"{op} takes {lang.signature[op]} arguments")
    args_lts = derive_lts(lang, base, [t for pq in pairs for t in pq], cap)
    rel = iocos_relation(args_lts)
    for p, q in pairs:
        if (str(p), str(q)) not in rel:
            raise IoconfError(f"precondition fails: {p} is not iocos {q}")
    left = Op(op, tuple(p for p, _ in pairs))
    right = Op(op, tuple(q for _, q in pairs))
    lts = derive_lts(lang, base, [left, right], cap)
    phi = distinguishing_formula(lts, str(left), str(right))
    return ProbeResult(phi is None, str(left), str(right), phi)


def quiescence_property_probe(lang, base, op, args, cap=DEFAULT_CAP):
    """Whether op(args) has a delta! self-loop exactly when it has no other
    output (and no delta!-move elsewhere)."""
    term = Op(op, tuple(map(_leaf, args)))
    return cbq_holds(derive_lts(lang, base, term, cap), str(term))


def cbq_holds(lts, state):
    deltas = set(lts.successors(state, DELTA))
    other = any(a != DELTA for a in lts.outs(state))
    if other:
        return not deltas
    return deltas == {state}
