"""ioco through trace-modality formulas, for explicit trace bounds."""

from ..lts import sort_actions
from .formula import FF, Box, BoxTrace, ForceTrace
from .semantics import Evaluator


def bm_ioco_bounded(lts, i, s, trace_bound):
    """Decide ioco restricted to traces of length <= trace_bound.

    For every trace sigma of s and every output b, s satisfying
    <|sigma|>[b]ff must imply that i satisfies [|sigma|][b]ff. Returns
    ``(holds, counterexample)`` where the counterexample is (sigma, b).
    """
    ev = Evaluator(lts)
    outputs = sort_actions(lts.outputs)
    for sigma in lts.traces(s, trace_bound):
        for b in outputs:
            refused = Box(b, FF)
            if ev.satisfies(s, ForceTrace(sigma, refused)) and not ev.satisfies(i, BoxTrace(sigma, refused)):
                return False, (sigma, b)
    return True, None
