"""The iocos and ioco relations, distinguishing formulas and the bridge
between them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .lts import sort_actions
from .logic.formula import FF, TT, Dia, NfDia, canonical, conj, format_formula
from .logic.fragments import dual_transform

INFINITY = None  # rank of pairs that survive refinement


def fio_pair(lts, p, q, rel):
    """Whether (p, q) belongs to F_io(rel)."""
    ins_q = lts.ins(q)
    if not ins_q <= lts.ins(p):
        return False
    for a in ins_q:
        targets = lts.successors(q, a)
        for p2 in lts.successors(p, a):
            if not any((p2, q2) in rel for q2 in targets):
                return False
    for a in lts.outs(p):
        targets = lts.successors(q, a)
        for p2 in lts.successors(p, a):
            if not any((p2, q2) in rel for q2 in targets):
                return False
    return True


def fio_step(lts, rel):
    """One application of F_io restricted to the pairs of rel."""
    rel = frozenset(rel)
    return frozenset(pair for pair in rel if fio_pair(lts, *pair, rel))


@dataclass
class IocosRelation:
    """The greatest fixed point of F_io together with removal ranks.

    ``rank[(p, q)]`` is the refinement round in which the pair left the
    relation; pairs of the relation itself have no entry.
    """

    relation: frozenset
    rank: dict
    lts: object

    def __contains__(self, pair):
        return pair in self.relation

    def rank_of(self, p, q):
        return self.rank.get((p, q), INFINITY)


def iocos_relation(lts, states=None):
    """Compute iocos on ``states`` (default: all states).

    Refinement runs in synchronous rounds starting from states x states; a
    pair removed in round k fails F_io against the relation left after round
    k-1. Only pairs depending on a pair removed in the previous round are
    re-examined.
    """
    states = sorted(lts.states if states is None else lts.reachable(states))
    rel = {(p, q) for p in states for q in states}
    rank = {}
    removed = [pair for pair in sorted(rel) if not fio_pair(lts, *pair, rel)]
    k = 1
    while removed:
        for pair in removed:
            rank[pair] = k
        rel.difference_update(removed)
        suspects = set()
        for p2, q2 in removed:
            for a in lts.alphabet:
                for p in lts.predecessors(p2, a):
                    for q in lts.predecessors(q2, a):
                        if (p, q) in rel:
                            suspects.add((p, q))
        removed = [pair for pair in sorted(suspects) if not fio_pair(lts, *pair, rel)]
        k += 1
    return IocosRelation(frozenset(rel), rank, lts)


@dataclass
class Verdict:
    holds: bool
    witness: object = None
    rank: int | None = None
    pair: tuple | None = None
    relation: str = "iocos"

    def to_dict(self):
        return {
            "holds": self.holds,
            "witness": None if self.witness is None else format_formula(self.witness),
            "rank": self.rank,
        }


class _Witnesses:
    """Distinguishing L_iocos formulas built by induction on rank."""

    def __init__(self, rel):
        self.rel = rel
        self.lts = rel.lts
        self.memo = {}

    def below(self, pair, k):
        r = self.rel.rank.get(pair)
        return r is not None and r < k

    def formula(self, i, s):
        key = (i, s)
        if key in self.memo:
            return self.memo[key]
        k = self.rel.rank[key]
        lts = self.lts
        missing = sort_actions(lts.ins(s) - lts.ins(i))
        if missing:
            phi = NfDia(missing[0], FF)
        else:
            phi = self._moves(i, s, k, sort_actions(lts.ins(s)), NfDia)
            if phi is None:
                phi = self._moves(i, s, k, sort_actions(lts.outs(i)), Dia)
        if phi is None:
            raise AssertionError(f"pair {key} has rank {k} but no unmatched move")
        phi = canonical(phi)
        self.memo[key] = phi
        return phi

    def _moves(self, i, s, k, actions, modality):
        lts = self.lts
        for a in actions:
            targets = sorted(lts.successors(s, a))
            for i2 in sorted(lts.successors(i, a)):
                if all(self.below((i2, s2), k) for s2 in targets):
                    return modality(a, conj(*(self.formula(i2, s2) for s2 in targets)))
        return None


def distinguishing_formula(lts, i, s, fragment="L_iocos", relation=None):
    """A formula separating i from s, or None when i iocos s.

    For L_iocos the result holds in i and fails in s; for its dual
    (``"Lt_iocos"``) it holds in s and fails in i.
    """
    rel = relation or iocos_relation(lts, [i, s])
    if (i, s) in rel:
        return None
    phi = _Witnesses(rel).formula(i, s)
    if fragment.lower() in ("lt_iocos", "l~iocos", "ltilde"):
        return canonical(dual_transform(phi))
    return phi


def iocos_holds(lts, i, s, mode="preorder", fragment="L_iocos"):
    """Decide i iocos s (``mode="equivalence"`` checks both directions).

    A failing verdict carries an L_iocos witness for the failing ordered
    pair (recorded in ``pair``): the first component satisfies it, the
    second does not.
    """
    rel = iocos_relation(lts, [i, s])
    pairs = [(i, s)] if mode == "preorder" else [(i, s), (s, i)]
    for p, q in pairs:
        if (p, q) not in rel:
            return Verdict(False, distinguishing_formula(lts, p, q, fragment, rel),
                           rel.rank[(p, q)], (p, q))
    return Verdict(True)


def ioco_counterexample(lts, i, s):
    """A shortest trace sigma of s with Out(i after sigma) not within
    Out(s after sigma), paired with an offending output; None if i ioco s.

    Breadth-first over synchronised pairs of state sets, each visited once.
    """
    start = (frozenset([i]), frozenset([s]))
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (left, right), sigma = queue.popleft()
        extra = lts.out_of(left) - lts.out_of(right)
        if extra:
            return sigma, sort_actions(extra)[0]
        labels = sort_actions({a for q in right for a in lts.initials(q)})
        for a in labels:
            nl = lts.after(left, [a]) if left else left
            nr = lts.after(right, [a])
            if not nl:
                continue
            nxt = (nl, nr)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, sigma + (a,)))
    return None


def ioco_holds(lts, i, s):
    cex = ioco_counterexample(lts, i, s)
    if cex is None:
        return Verdict(True, relation="ioco")
    return Verdict(False, cex, None, (i, s), relation="ioco")


def ioco_bounded(lts, i, s, depth):
    """ioco checked by enumerating the traces of s up to ``depth``."""
    for sigma in lts.traces(s, depth):
        if not lts.out_of(lts.after(i, sigma)) <= lts.out_of(lts.after(s, sigma)):
            return False
    return True


CHARFORM_NOTE = ("the characteristic formula of s only refutes iocos: when i fails it, "
                 "i may still be ioco-conformant to s")


def ioco_iocos_bridge(lts, i, s):
    """Compare ioco and iocos on (i, s) and check the known implications."""
    ioco = ioco_holds(lts, i, s).holds
    iocos = iocos_holds(lts, i, s).holds
    det = lts.is_deterministic(s)
    enabled = lts.is_input_enabled(i)
    applicable = det and enabled
    violations = []
    if iocos and not ioco:
        violations.append("iocos without ioco")
    if applicable and ioco and not iocos:
        violations.append("ioco without iocos for input-enabled i and deterministic s")
    report = {
        "ioco": ioco,
        "iocos": iocos,
        "deterministic_s": det,
        "input_enabled_i": enabled,
        "coincidence_applicable": applicable,
        "violations": violations,
    }
    if ioco and not iocos:
        report["note"] = CHARFORM_NOTE
    return report
