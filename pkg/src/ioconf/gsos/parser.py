import re

from ..errors import IoconfError, ParseError
from ..lts import Action
from .rules import Language, Op, Premise, Rule, StateLeaf, Variable

_TERM_TOKEN = re.compile(r"\s*(?:(?P<leaf>@[^\s,()]+)|(?P<name>[A-Za-z0-9_]+)|(?P<sym>[(),]))")
_PREMISE = re.compile(r"\s*(?P<x>[A-Za-z_][A-Za-z0-9_]*)\s*-(?P<neg>/?)(?P<act>[A-Za-z_][A-Za-z0-9_]*[?!])->\s*(?P<y>[A-Za-z_][A-Za-z0-9_]*)?\s*\Z")
_CONCLUSION = re.compile(r"(?P<src>.*?)\s*-(?P<act>[A-Za-z_][A-Za-z0-9_]*[?!])->\s*(?P<tgt>.*)\Z")


def parse_term(text, signature, line=None, offset=0):
    """Parse ``f(t1,...,tn)``, variables and ``@state`` leaves."""
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TERM_TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected {text[pos:].strip()[:1]!r} in term", line, offset + pos + 1)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), offset + start + 1))
        pos = m.end()
    tokens.append(("eof", "", offset + len(text) + 1))
    i = 0

    def term():
        nonlocal i
        kind, value, col = tokens[i]
        i += 1
        if kind == "leaf":
            return StateLeaf(value[1:])
        if kind != "name":
            raise ParseError(f"expected a term, found {value or 'end of input'!r}", line, col)
        if tokens[i][1] == "(":
            i += 1
            args = []
            if tokens[i][1] != ")":
                args.append(term())
                while tokens[i][1] == ",":
                    i += 1
                    args.append(term())
            if tokens[i][1] != ")":
                raise ParseError("expected ')'", line, tokens[i][2])
            i += 1
            _check_op(value, len(args), signature, line, col)
            return Op(value, tuple(args))
        if signature.get(value) == 0:
            return Op(value)
        if value in signature:
            raise ParseError(f"operator {value} needs {signature[value]} arguments", line, col)
        if not re.match(r"[A-Za-z_]", value):
            raise ParseError(f"unknown operator {value!r}", line, col)
        return Variable(value)

    t = term()
    if tokens[i][0] != "eof":
        raise ParseError(f"unexpected {tokens[i][1]!r} after term", line, tokens[i][2])
    return t


def _check_op(name, n, signature, line, col):
    if name not in signature:
        raise ParseError(f"unknown operator {name!r}", line, col)
    if signature[name] != n:
        raise ParseError(f"arity mismatch: {name} has arity {signature[name]}, got {n}", line, col)


def _split_top(text, sep):
    """Split on sep outside parentheses, returning (piece, offset) pairs."""
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((text[start:k], start))
            start = k + 1
    parts.append((text[start:], start))
    return parts


def parse_rule(text, signature, line=None):
    if "|-" not in text:
        raise ParseError("a rule needs '|-'", line, 1)
    head, concl = text.split("|-", 1)
    concl_off = len(head) + 2
    m = _CONCLUSION.match(concl)
    if not m:
        raise ParseError("conclusion must read: source -action-> target", line, concl_off + 1)
    src = parse_term(m.group("src"), signature, line, concl_off)
    if not isinstance(src, Op):
        raise ParseError("rule source must be an operator application", line, concl_off + 1)
    if not all(isinstance(a, Variable) for a in src.args):
        raise ParseError("rule source arguments must be variables", line, concl_off + 1)
    sources = tuple(a.name for a in src.args)
    if len(set(sources)) != len(sources):
        raise ParseError("repeated variable in rule source", line, concl_off + 1)
    act = Action.parse(m.group("act"))
    tgt_off = concl_off + m.start("tgt")
    target = parse_term(m.group("tgt"), signature, line, tgt_off)
    premises = []
    seen_vars = set(sources)
    if head.strip():
        for piece, off in _split_top(head, ","):
            pm = _PREMISE.match(piece)
            if not pm:
                raise ParseError(f"malformed premise {piece.strip()!r}", line, off + 1)
            x = pm.group("x")
            if x not in sources:
                raise ParseError(f"premise subject {x} is not a source variable", line, off + 1)
            a = Action.parse(pm.group("act"))
            y = pm.group("y")
            if pm.group("neg"):
                if y:
                    raise ParseError("negative premise has no target", line, off + 1)
                premises.append(Premise(sources.index(x), a))
            else:
                if not y:
                    raise ParseError("positive premise needs a target variable", line, off + 1)
                if y in seen_vars:
                    raise ParseError(f"repeated variable {y}", line, off + 1)
                seen_vars.add(y)
                premises.append(Premise(sources.index(x), a, y))
    try:
        return Rule(src.name, sources, tuple(premises), act, target)
    except IoconfError as e:
        raise ParseError(str(e), line, 1) from None


def parse_gsos(text):
    """Parse ``sig``/``inputs``/``outputs`` directives and one rule per line."""
    signature = {}
    rules = []
    inputs, outputs = set(), set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        words = line.split()
        if words[0] == "sig":
            for w in words[1:]:
                m = re.fullmatch(r"([A-Za-z0-9_]+)/(\d+)", w)
                if not m:
                    raise ParseError(f"bad signature entry {w!r}", lineno, line.index(w) + 1)
                if m.group(1) in signature:
                    raise ParseError(f"operator {m.group(1)} declared twice", lineno, line.index(w) + 1)
                signature[m.group(1)] = int(m.group(2))
        elif words[0] in ("inputs", "outputs"):
            for w in words[1:]:
                name = w.rstrip("?!")
                kind = "?" if words[0] == "inputs" else "!"
                try:
                    (inputs if kind == "?" else outputs).add(Action(name, kind))
                except ValueError as e:
                    raise ParseError(str(e), lineno, line.index(w) + 1) from None
        else:
            rules.append(parse_rule(line, signature, lineno))
    return Language(signature, rules, frozenset(inputs), frozenset(outputs))


def load_gsos(path):
    with open(path, encoding="utf-8") as fh:
        return parse_gsos(fh.read())
