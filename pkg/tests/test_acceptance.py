"""Acceptance suite.

Every criterion records named checks; the terminal summary prints one
PASS/FAIL line per criterion followed by its checks. All tolerances are
exact (boolean agreement); the parameters below are pinned.
"""

import glob
import itertools
import random
import time
from collections import defaultdict
from pathlib import Path

import pytest

from ioconf.conformance import (distinguishing_formula, ioco_bounded, ioco_holds, iocos_holds,
                                iocos_relation)
from ioconf.decomposition import Decomposer, no_rules_check, verify_decomposition
from ioconf.gsos import (Op, Premise, StateLeaf, Variable, cbq_holds, check_iocos_format,
                         check_quiescent_consistent, closed_terms, contradicts, derive_lts,
                         load_gsos, merge, nil, parse_term, precongruence_probe, prefixes,
                         substitute, term_vars)
from ioconf.logic import (Dia, Evaluator, NfDia, characteristic_formula, dual_transform,
                          enumerate_fragment, eval_declaration, format_formula, formula_classes,
                          max_width, modal_depth, parse_formula)
from ioconf.lts import DELTA, Lts, action, load_lts, parse_lts

from conftest import FIXTURES, fixture_path
from gen import input_enabled_variant, random_alphabet, random_deterministic, random_lts

# criterion 3
CHAR_SEED = 2024
CHAR_SAMPLES = 200
CHAR_MAX_STATES = 4
CHAR_DEPTH = 3
CHAR_WIDTH = 2
CHAR_SECONDS = 60.0
# criterion 4
DECOMP_INPUTS = ["a?", "b?"]
DECOMP_OUTPUTS = ["a!", "b!"]
# criterion 5
CBQ_SEED = 5
CBQ_BASES = 30
CBQ_DEPTH = 2
# criterion 6
IOCO_SEED = 6
IOCO_SAMPLES = 200
IOCO_BOUND = 6
# criterion 7
COIN_SEED = 7
COIN_SAMPLES = 50

RESULTS = defaultdict(list)

TITLES = {
    1: "worked examples",
    2: "rule-format checker",
    3: "logical characterisation (randomised)",
    4: "decomposition theorem (exhaustive)",
    5: "quiescence suite",
    6: "oracle cross-checks",
    7: "coincidence proposition",
}


class Checks:
    """Checks of one test, recorded under their criterion."""

    def __init__(self, criterion):
        self.criterion = criterion
        self.failed = []

    def __call__(self, name, ok, detail=""):
        RESULTS[self.criterion].append((name, bool(ok), detail))
        if not ok:
            self.failed.append(f"{name}: {detail}")

    def done(self):
        assert not self.failed, "\n".join(self.failed)


def summary_lines():
    lines = []
    for c in sorted(RESULTS):
        checks = RESULTS[c]
        verdict = "PASS" if all(ok for _, ok, _ in checks) else "FAIL"
        lines.append(f"{verdict} criterion {c}: {TITLES[c]}")
        for name, ok, detail in checks:
            lines.append(f"    {'ok  ' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
    return lines


# 1. worked examples

def test_criterion_1_examples():
    check = Checks(1)
    ex2 = load_lts(fixture_path("ex2.lts"))
    ex6 = load_lts(fixture_path("ex6.lts"))
    check("two-state example: i iocos s", iocos_holds(ex2, "i", "s").holds)
    v = iocos_holds(ex2, "s", "i")
    check("two-state example: s iocos i", v.holds,
          "" if v.holds else f"fails with witness {format_formula(v.witness)} (ins(i) is not within ins(s))")
    check("ioco example: i ioco s", ioco_holds(ex6, "i", "s").holds)
    v = iocos_holds(ex6, "i", "s")
    check("ioco example: not i iocos s", not v.holds,
          f"witness {format_formula(v.witness)}" if v.witness else "")
    w = parse_formula("[[a?]]([a!]ff | [b!]ff)")
    ev = Evaluator(ex6)
    check("s satisfies [[a?]]([a!]ff | [b!]ff)", ev.satisfies("s", w))
    check("i does not satisfy [[a?]]([a!]ff | [b!]ff)", not ev.satisfies("i", w))
    check.done()


# 2. rule-format checker

def _header(path, key):
    for line in Path(path).read_text().splitlines():
        if line.startswith(f"# {key}:"):
            return line.split(":", 1)[1].split()
    raise AssertionError(f"{path} has no {key} line")


def test_criterion_2_formats():
    check = Checks(2)
    for name in ["merge", "restrict"]:
        report = check_iocos_format(load_gsos(fixture_path(f"{name}.gsos")))
        check(f"{name} passes", report.passes, "" if report.passes else str(report))
    for name in ["choice", "interleave", "relabel_merging"]:
        report = check_iocos_format(load_gsos(fixture_path(f"{name}.gsos")))
        check(f"{name} fails condition 2", not report.passes and report.top_clauses == ["2"],
              ", ".join(report.clauses))
    base = load_lts(fixture_path("ce_bases.lts"))
    for path in sorted(glob.glob(str(FIXTURES / "ce*.gsos"))):
        name = Path(path).stem
        lang = load_gsos(path)
        (clause,) = _header(path, "expect-clause")
        p, q = _header(path, "probe")
        report = check_iocos_format(lang)
        check(f"{name} fails clause {clause}",
              clause in report.clauses and report.top_clauses == [clause.split("(")[0]],
              ", ".join(report.clauses))
        probe = precongruence_probe(lang, base, "f", [(p, q)])
        detail = f"{probe.left} vs {probe.right}"
        if probe.witness is not None:
            detail += f", witness {format_formula(probe.witness)}"
        check(f"{name} probe {p} iocos {q} not preserved", not probe.holds, detail)
    check.done()


# 3. logical characterisation

CHAR_ELAPSED = {}


@pytest.fixture(scope="module")
def char_sample():
    rng = random.Random(CHAR_SEED)
    return [random_lts(rng, max_states=CHAR_MAX_STATES) for _ in range(CHAR_SAMPLES)]


def _distinguishes(classes, i, s):
    return any(i in den and s not in den for den in classes)


def test_criterion_3a_characterisation(char_sample):
    check = Checks(3)
    start = time.perf_counter()
    pairs = misses = unsound = 0
    short = []
    for lts in char_sample:
        ev = Evaluator(lts)
        classes = formula_classes(ev.denote, lts.inputs, lts.outputs, "L_iocos", CHAR_DEPTH, CHAR_WIDTH)
        rel = iocos_relation(lts)
        for i, s in itertools.product(sorted(lts.states), repeat=2):
            pairs += 1
            related = (i, s) in rel
            found = _distinguishes(classes, i, s)
            if related and found:
                unsound += 1
            if not related and not found:
                misses += 1
                w = distinguishing_formula(lts, i, s, relation=rel)
                depth, width = modal_depth(w), max_width(w)
                deeper = formula_classes(ev.denote, lts.inputs, lts.outputs, "L_iocos",
                                         max(depth, CHAR_DEPTH), max(width, CHAR_WIDTH))
                short.append((format_formula(w), _distinguishes(deeper, i, s)))
    CHAR_ELAPSED["a"] = time.perf_counter() - start
    check(f"(a) iocos iff no formula of depth <= {CHAR_DEPTH}, width <= {CHAR_WIDTH} separates",
          misses == 0 and unsound == 0,
          f"{pairs} pairs, {misses} non-iocos pairs without a witness at this bound"
          + (f" (e.g. {short[0][0]})" if short else ""))
    check("(a) a separating formula at this bound refutes iocos", unsound == 0, f"{unsound} violations")
    check("(a) every refuted pair is separated at its witness depth",
          all(ok for _, ok in short), f"{len(short)} pairs re-checked")
    check.done()


def test_criterion_3b_duality(char_sample):
    check = Checks(3)
    start = time.perf_counter()
    bad = checked = 0
    for lts in char_sample:
        ev = Evaluator(lts)
        everything = frozenset(lts.states)
        classes = formula_classes(lambda f: (ev.denote(f), ev.denote(dual_transform(f))),
                                  lts.inputs, lts.outputs, "L_iocos", CHAR_DEPTH, CHAR_WIDTH)
        for den, dual in classes:
            checked += 1
            if den & dual or den | dual != everything:
                bad += 1
    CHAR_ELAPSED["b"] = time.perf_counter() - start
    check("(b) p satisfies exactly one of phi and its dual", bad == 0,
          f"{checked} (phi, dual) classes, {bad} violations")
    check.done()


def test_criterion_3c_characteristic_formula(char_sample):
    check = Checks(3)
    start = time.perf_counter()
    bad = pairs = 0
    for lts in char_sample:
        rel = iocos_relation(lts)
        for s in sorted(lts.states):
            decl, root = characteristic_formula(lts, s)
            env = eval_declaration(lts, decl)
            for i in sorted(lts.states):
                pairs += 1
                if (i in env[root]) != ((i, s) in rel):
                    bad += 1
    CHAR_ELAPSED["c"] = time.perf_counter() - start
    check("(c) i satisfies the characteristic formula of s iff i iocos s", bad == 0,
          f"{pairs} pairs, {bad} violations")
    total = sum(CHAR_ELAPSED.values())
    check(f"runtime of (a)-(c) under {CHAR_SECONDS:.0f} s",
          len(CHAR_ELAPSED) == 3 and total < CHAR_SECONDS, f"{total:.1f} s")
    check.done()


# 4. decomposition theorem

def _formula_grid():
    d1 = list(enumerate_fragment(DECOMP_INPUTS, DECOMP_OUTPUTS, "L_iocos", 1, 2))
    grid = set(enumerate_fragment(DECOMP_INPUTS, DECOMP_OUTPUTS, "L_iocos", 2, 1)) | set(d1)
    for a in map(action, DECOMP_INPUTS):
        grid |= {NfDia(a, f) for f in d1}
    for a in [*map(action, DECOMP_OUTPUTS), DELTA]:
        grid |= {Dia(a, f) for f in d1}
    return sorted(grid, key=format_formula)


def _flat(lang, op, names):
    n = lang.signature[op]
    return Op(op, tuple(Variable(next(names)) for _ in range(n)))


def _term_grid(lang):
    """Flat terms and terms with one operator nested in one argument."""
    ops = sorted(lang.signature)
    out = []
    for f in ops:
        out.append(_flat(lang, f, iter("xyzw")))
        for k in range(lang.signature[f]):
            for g in ops:
                names = iter("xyzw")
                args = [_flat(lang, g, names) if j == k else Variable(next(names))
                        for j in range(lang.signature[f])]
                out.append(Op(f, tuple(args)))
    return out


def _format_languages():
    langs = {}
    for path in sorted(glob.glob(str(FIXTURES / "*.gsos"))):
        lang = load_gsos(path)
        if check_iocos_format(lang).passes:
            langs[Path(path).stem] = lang
    langs["prefixes+nil"] = prefixes(DECOMP_INPUTS, DECOMP_OUTPUTS).combine(nil())
    return langs


def test_criterion_4_decomposition():
    check = Checks(4)
    base = load_lts(fixture_path("decomp_bases.lts"))
    base_ev = Evaluator(base)
    grid = _formula_grid()
    for name, lang in _format_languages().items():
        dec = Decomposer(lang)
        checks = bad = 0
        example = ""
        for term in _term_grid(lang):
            xs = sorted(term_vars(term))
            subs = list(itertools.product(sorted(base.states), repeat=len(xs)))
            closed = [substitute(term, {x: StateLeaf(p) for x, p in zip(xs, sub)}) for sub in subs]
            derived = Evaluator(derive_lts(lang, base, closed))
            roots = [str(c) for c in closed]
            for phi in grid:
                direct = derived.denote(phi)
                maps = [[base_ev.denote(m[x]) for x in xs] for m in dec.decompose_term(term, phi)]
                for sub, root in zip(subs, roots):
                    checks += 1
                    split = any(all(p in den for p, den in zip(sub, m)) for m in maps)
                    if (root in direct) != split:
                        bad += 1
                        example = example or f"{root} with {format_formula(phi)}"
        check(f"{name}: direct = decomposed", bad == 0,
              f"{checks} checks over {len(grid)} formulas" + (f", first mismatch {example}" if bad else ""))
    lang = load_gsos(fixture_path("decomp_nonformat.gsos"))
    quiet = parse_lts("state s\ntrans s delta! s\n")
    direct, split = verify_decomposition(lang, quiet, parse_term("f(x)", lang.signature), {"x": "s"},
                                         parse_formula("<<a?>><<a?>>ff"))
    check("non-format rules: f(s) and <<a?>><<a?>>ff disagree", direct != split,
          f"direct {direct}, decomposed {split}")
    check.done()


# 5. quiescence suite

def test_criterion_5_quiescence():
    check = Checks(5)
    rng = random.Random(CBQ_SEED)
    for path in sorted(glob.glob(str(FIXTURES / "*.gsos"))):
        lang = load_gsos(path)
        if not check_quiescent_consistent(lang).passes:
            continue
        ins = sorted(lang.inputs, key=str)
        outs = sorted((a for a in lang.outputs if a != DELTA), key=str)
        checked = bad = 0
        for _ in range(CBQ_BASES):
            base = random_lts(rng, n_states=2, inputs=ins, outputs=outs)
            terms = [t for t in closed_terms(lang, base.states, CBQ_DEPTH) if isinstance(t, Op)]
            lts = derive_lts(lang, base, terms)
            for p in sorted(lts.states):
                if not p.startswith("@"):
                    checked += 1
                    bad += not cbq_holds(lts, p)
        check(f"{Path(path).stem} satisfies CBQ", bad == 0,
              f"{checked} derived states over {CBQ_BASES} two-state bases, {bad} violations")

    lang = prefixes(DECOMP_INPUTS, DECOMP_OUTPUTS).combine(nil(), merge(DECOMP_INPUTS, DECOMP_OUTPUTS))
    empty = Lts(frozenset(), frozenset(), frozenset(), frozenset())
    args = closed_terms(lang, [], 3, ops=[op for op in lang.signature if op != "and2"])
    wrong = failures = 0
    for p, q in itertools.product(args, repeat=2):
        t = Op("and2", (p, q))
        lts = derive_lts(lang, empty, [t, p, q])
        incompatible = not lts.outs(str(p)) & lts.outs(str(q))
        holds = cbq_holds(lts, str(t))
        failures += not holds
        wrong += holds == incompatible
    check("unextended merge fails CBQ exactly on output-incompatible arguments", wrong == 0,
          f"{len(args) ** 2} argument pairs, {failures} failures, {wrong} misclassified")
    t = parse_term("and2(out_a(0),out_b(0))", lang.signature)
    check("and2(out_a(0),out_b(0)) fails CBQ", not cbq_holds(derive_lts(lang, empty, t), str(t)))
    check.done()


# 6. oracle cross-checks

def test_criterion_6a_ioco_oracles():
    check = Checks(6)
    rng = random.Random(IOCO_SEED)
    pairs = bad = refuted = 0
    for _ in range(IOCO_SAMPLES):
        lts = random_lts(rng)
        for i, s in itertools.product(sorted(lts.states), repeat=2):
            pairs += 1
            exact = ioco_holds(lts, i, s).holds
            refuted += not exact
            bad += exact != ioco_bounded(lts, i, s, IOCO_BOUND)
    check(f"ioco by subset construction = trace enumeration to depth {IOCO_BOUND}", bad == 0,
          f"{IOCO_SAMPLES} LTSs, {pairs} pairs ({refuted} non-ioco), {bad} disagreements")
    check.done()


def test_criterion_6b_no_rules_lemma():
    check = Checks(6)
    base = load_lts(fixture_path("decomp_bases.lts"))
    checked = bad = 0
    for lang in _format_languages().values():
        for op in sorted(lang.signature):
            t = _flat(lang, op, iter("xyzw"))
            xs = [v.name for v in t.args]
            for a in sorted(lang.inputs, key=str):
                for states in itertools.product(sorted(base.states), repeat=len(xs)):
                    cannot, some = no_rules_check(lang, base, t, a, dict(zip(xs, states)))
                    checked += 1
                    bad += cannot != some
    check("no-rules lemma", bad == 0 and checked > 0, f"{checked} cases, {bad} violations")
    check.done()


def test_criterion_6c_contradictory_sets():
    check = Checks(6)
    labels = [action("a?"), action("b!"), action("c!"), DELTA]
    outputs = frozenset(a for a in labels if a.is_output)
    # one state per initial menu allowed by quiescence coherence
    states, trans = [], []
    for k, bits in enumerate(itertools.product([False, True], repeat=3)):
        menu = [a for a, keep in zip(labels[:3], bits) if keep]
        if not any(a.is_output for a in menu):
            menu.append(DELTA)
        states.append(f"m{k}")
        trans.extend((f"m{k}", a, f"m{k}") for a in menu)
    tiny = Lts.build(trans, inputs=[labels[0]], outputs=labels[1:3], states=states)
    assert not tiny.validate_quiescence()

    premises = [Premise(arg, a, "y") for arg in range(2) for a in labels]
    premises += [Premise(arg, a) for arg in range(2) for a in labels]
    sets = [h for k in range(3) for h in itertools.combinations(premises, k)]

    def sat(h, sigma):
        return all((p.action in tiny.initials(sigma[p.arg])) == p.positive for p in h)

    subs = list(itertools.product(sorted(tiny.states), repeat=2))
    contradicting = bad = 0
    for h1, h2 in itertools.product(sets, repeat=2):
        if contradicts(h1, h2, outputs):
            contradicting += 1
            bad += any(sat(h1, sigma) and sat(h2, sigma) for sigma in subs)
    check("contradictory premise sets have no common substitution", bad == 0 and contradicting > 0,
          f"{contradicting} contradicting pairs over 2 variables, {len(subs)} substitutions, {bad} violations")
    check.done()


# 7. coincidence proposition

def test_criterion_7_coincidence():
    check = Checks(7)
    rng = random.Random(COIN_SEED)
    instances = applicable = ioco_true = 0
    forward = backward = 0
    while applicable < COIN_SAMPLES:
        ins, outs = random_alphabet(rng)
        if not ins:
            continue
        spec = random_deterministic(rng, rng.randint(1, 3), ins, outs, "s")
        impl = input_enabled_variant(rng, spec, "i", ins, outs)
        lts = spec.union(impl)
        rel = iocos_relation(lts)
        for s in sorted(spec.states):
            i = "i" + s
            instances += 1
            ioco = ioco_holds(lts, i, s).holds
            iocos = (i, s) in rel
            backward += iocos and not ioco
            if lts.is_input_enabled(i) and lts.is_deterministic(s):
                applicable += 1
                ioco_true += ioco
                forward += ioco and not iocos
    check("ioco implies iocos for input-enabled i and deterministic s", forward == 0,
          f"{applicable} applicable instances ({ioco_true} with ioco), {forward} violations")
    check("iocos implies ioco", backward == 0, f"{instances} instances, {backward} violations")
    check.done()
