from .derive import DEFAULT_CAP, Deriver, closed_terms, derive_lts
from .formats import (DELTA2_CAP, FormatReport, Violation, check_iocos_format,
                      check_quiescent_consistent, complete_quiescence, contradicts, negate)
from .library import builtin, choice, interleave, merge, nil, prefixes, relabel, restrict
from .parser import load_gsos, parse_gsos, parse_rule, parse_term
from .probes import ProbeResult, cbq_holds, precongruence_probe, quiescence_property_probe
from .rules import Language, Op, Premise, Rule, StateLeaf, Variable, format_language, is_flat, substitute, term_vars

__all__ = [
    "DEFAULT_CAP", "DELTA2_CAP", "Deriver", "FormatReport", "Language", "Op", "Premise",
    "ProbeResult", "Rule", "StateLeaf", "Variable", "Violation", "builtin", "cbq_holds",
    "check_iocos_format", "complete_quiescence", "check_quiescent_consistent", "choice", "closed_terms", "contradicts",
    "derive_lts", "format_language", "interleave", "is_flat", "load_gsos", "merge", "negate",
    "nil", "parse_gsos", "parse_rule", "parse_term", "precongruence_probe", "prefixes",
    "quiescence_property_probe", "relabel", "restrict", "substitute", "term_vars",
]
