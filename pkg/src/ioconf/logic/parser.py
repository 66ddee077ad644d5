"""Recursive-descent parser for formulas and fixed-point declarations.

``&`` binds tighter than ``|``; modalities bind tightest. ``/\\`` and
``\\/`` are accepted as aliases of ``&`` and ``|``.
"""

import re

from ..errors import ParseError
from ..lts import Action
from .formula import (FF, TT, And, Box, BoxTrace, Dia, FBox, ForceTrace, NfDia,
                      Or, Var)

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<sym><<|>>|\[\[|\]\]|<\||\|>|\[\||\|\]|/\\|\\/|[&|<>\[\]().=;])
  | (?P<act>[A-Za-z_][A-Za-z0-9_]*[?!])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)

KEYWORDS = {"tt", "ff", "eps", "max", "min"}


def _tokenize(text):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind == "ws":
            for k, ch in enumerate(value):
                if ch == "\n":
                    line += 1
                    line_start = pos + k + 1
        else:
            if value == "/\\":
                value = "&"
            elif value == "\\/":
                value = "|"
            tokens.append((kind, value, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], tok[3])

    def expect(self, value):
        tok = self.next()
        if tok[1] != value or tok[0] not in ("sym", "ident"):
            self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def at(self, value):
        tok = self.peek()
        return tok[0] in ("sym", "ident") and tok[1] == value

    def formula(self):
        kids = [self.conjunction()]
        while self.at("|"):
            self.next()
            kids.append(self.conjunction())
        return kids[0] if len(kids) == 1 else Or(tuple(kids))

    def conjunction(self):
        kids = [self.unary()]
        while self.at("&"):
            self.next()
            kids.append(self.unary())
        return kids[0] if len(kids) == 1 else And(tuple(kids))

    def action(self, kind=None):
        tok = self.next()
        if tok[0] != "act":
            self.error(f"expected an action, found {tok[1] or 'end of input'!r}", tok)
        a = Action.parse(tok[1])
        if kind == "input" and not a.is_input:
            self.error(f"{a} must be an input action", tok)
        return a

    def trace(self, close):
        acts = []
        if self.at("eps"):
            self.next()
        elif not self.at(close):
            acts.append(self.action())
            while self.at("."):
                self.next()
                acts.append(self.action())
        self.expect(close)
        return tuple(acts)

    def unary(self):
        tok = self.next()
        kind, value = tok[0], tok[1]
        if kind == "ident":
            if value == "tt":
                return TT
            if value == "ff":
                return FF
            if value in KEYWORDS:
                self.error(f"unexpected keyword {value!r}", tok)
            return Var(value)
        if kind != "sym":
            self.error(f"unexpected {value or 'end of input'!r}", tok)
        if value == "(":
            f = self.formula()
            self.expect(")")
            return f
        if value == "<":
            a = self.action()
            self.expect(">")
            return Dia(a, self.unary())
        if value == "[":
            a = self.action()
            self.expect("]")
            return Box(a, self.unary())
        if value == "<<":
            a = self.action("input")
            self.expect(">>")
            return NfDia(a, self.unary())
        if value == "[[":
            a = self.action("input")
            self.expect("]]")
            return FBox(a, self.unary())
        if value == "<|":
            return ForceTrace(self.trace("|>"), self.unary())
        if value == "[|":
            return BoxTrace(self.trace("|]"), self.unary())
        self.error(f"unexpected {value!r}", tok)

    def end(self):
        if self.peek()[0] != "eof":
            self.error(f"unexpected {self.peek()[1]!r} after formula")


def parse_formula(text):
    p = _Parser(text)
    f = p.formula()
    p.end()
    return f


def parse_declaration(text):
    """Parse ``max X = phi; Y = psi;`` (or ``min ...``)."""
    from .fixpoint import Declaration

    p = _Parser(text)
    tok = p.next()
    if tok[1] not in ("max", "min"):
        p.error("a declaration starts with max or min", tok)
    polarity = "greatest" if tok[1] == "max" else "least"
    eqs = []
    while p.peek()[0] != "eof":
        name_tok = p.next()
        if name_tok[0] != "ident" or name_tok[1] in KEYWORDS:
            p.error("expected a variable name", name_tok)
        p.expect("=")
        body = p.formula()
        eqs.append((name_tok[1], body))
        if p.at(";"):
            p.next()
        elif p.peek()[0] != "eof":
            p.error("expected ';' between equations")
    return Declaration(tuple(eqs), polarity)
