from .fixpoint import Declaration, characteristic_formula, eval_declaration, state_variables
from .formula import (FF, TT, And, Box, BoxTrace, Dia, FBox, Ff, ForceTrace, Formula,
                      NfDia, Or, Tt, Var, canonical, conj, disj, format_formula,
                      free_vars, is_closed, max_width, modal_depth, to_text)
from .fragments import (Fragment, default_partition, dual_transform, enumerate_fragment,
                        formula_classes, fragment_of, in_fragment, is_iocos_formula, inverse_dual_transform,
                        to_hml)
from .parser import parse_declaration, parse_formula
from .semantics import Evaluator, denote, satisfies
from .traces import bm_ioco_bounded

__all__ = [
    "FF", "TT", "And", "Box", "BoxTrace", "Declaration", "Dia", "Evaluator", "FBox", "Ff",
    "ForceTrace", "Formula", "Fragment", "NfDia", "Or", "Tt", "Var", "bm_ioco_bounded",
    "canonical", "characteristic_formula", "conj", "default_partition", "denote", "disj",
    "dual_transform", "enumerate_fragment", "eval_declaration", "format_formula",
    "formula_classes", "fragment_of", "free_vars", "in_fragment", "inverse_dual_transform",
    "is_closed", "is_iocos_formula",
    "max_width", "modal_depth", "parse_declaration", "parse_formula", "satisfies",
    "state_variables", "to_hml", "to_text",
]
