"""Text syntax for the CLI: Lie/tensor expressions, group words, permutations
and bracket shapes.

Grammar for algebra expressions (column numbers in errors are 1-based):

    expr   := ['-'] term (('+' | '-') term)*
    term   := [int '*'] dotted
    dotted := factor ('.' factor)*
    factor := 'x' int | '[' expr ',' expr ']'

Group words are space-separated generators with optional integer exponents,
as in ``x1 x2^-1 x1``.  Permutations are cycles ``(1 2 3)(4 5)`` or one-line
``[2,3,1]``.  A bracket shape is nested square brackets with empty leaves,
as in ``[[,],]``; the empty string is the single leaf.
"""

import re

from .errors import DimensionMismatch, IndexOutOfRange, InvalidArgument, ParseError
from .freelie import LEAF, lie_bracket, generator
from .words import TensorElement, check_perm, perm_from_cycles, tensor_product

_TOKEN = re.compile(r"x\d+|\d+|\[|\]|[+\-*.,]")


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return None, len(self.text) + 1
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            raise ParseError(f"unexpected character {self.text[self.pos]!r}", self.pos + 1)
        return m.group(0), self.pos + 1

    def next(self):
        tok, col = self.peek()
        if tok is not None:
            self.pos += len(tok)
        return tok, col

    def expect(self, symbol):
        tok, col = self.next()
        if tok != symbol:
            raise ParseError(f"expected {symbol!r}, found {tok!r}" if tok is not None
                             else f"expected {symbol!r}, found end of input", col)


# AST nodes: ("gen", i) ("bracket", a, b) ("tensor", [..]) ("scale", k, e)
# ("sum", [(sign, e), ...])

def parse_expression(text):
    toks = _Tokens(text)
    ast = _parse_sum(toks)
    tok, col = toks.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok!r}", col)
    return ast


def _parse_sum(toks):
    terms = []
    sign = 1
    tok, _ = toks.peek()
    if tok == "-":
        toks.next()
        sign = -1
    terms.append((sign, _parse_term(toks)))
    while True:
        tok, _ = toks.peek()
        if tok not in ("+", "-"):
            break
        toks.next()
        terms.append((1 if tok == "+" else -1, _parse_term(toks)))
    if len(terms) == 1 and terms[0][0] == 1:
        return terms[0][1]
    return ("sum", terms)


def _parse_term(toks):
    tok, col = toks.peek()
    if tok is not None and tok.isdigit():
        toks.next()
        toks.expect("*")
        return ("scale", int(tok), _parse_dotted(toks))
    return _parse_dotted(toks)


def _parse_dotted(toks):
    factors = [_parse_factor(toks)]
    while True:
        tok, _ = toks.peek()
        if tok != ".":
            break
        toks.next()
        factors.append(_parse_factor(toks))
    if len(factors) == 1:
        return factors[0]
    return ("tensor", factors)


def _parse_factor(toks):
    tok, col = toks.next()
    if tok is None:
        raise ParseError("expected a generator or '['", col)
    if tok.startswith("x"):
        index = int(tok[1:])
        if index < 1:
            raise ParseError(f"generator index must be >= 1, got {index}", col)
        return ("gen", index)
    if tok == "[":
        left = _parse_sum(toks)
        toks.expect(",")
        right = _parse_sum(toks)
        toks.expect("]")
        return ("bracket", left, right)
    raise ParseError(f"expected a generator or '[', found {tok!r}", col)


def max_generator(ast):
    kind = ast[0]
    if kind == "gen":
        return ast[1]
    if kind == "bracket":
        return max(max_generator(ast[1]), max_generator(ast[2]))
    if kind == "tensor":
        return max(max_generator(e) for e in ast[1])
    if kind == "scale":
        return max_generator(ast[2])
    if kind == "sum":
        return max(max_generator(e) for _, e in ast[1])
    raise InvalidArgument(f"unknown node {kind!r}")


def check_rank(ast, n):
    top = max_generator(ast)
    if top > n:
        raise IndexOutOfRange(f"generator x{top} exceeds the configured rank {n}")


def eval_tensor(ast, n):
    """Evaluate to a tensor; brackets are expanded through the embedding."""
    kind = ast[0]
    if kind == "gen":
        return TensorElement.from_word((ast[1],))
    if kind == "bracket":
        left = eval_tensor(ast[1], n)
        right = eval_tensor(ast[2], n)
        return tensor_product(left, right) - tensor_product(right, left)
    if kind == "tensor":
        out = TensorElement.from_word(())
        for e in ast[1]:
            out = tensor_product(out, eval_tensor(e, n))
        return out
    if kind == "scale":
        return eval_tensor(ast[2], n).scale(ast[1])
    if kind == "sum":
        parts = [eval_tensor(e, n).scale(s) for s, e in ast[1]]
        degrees = {p.degree for p in parts}
        if len(degrees) != 1:
            raise DimensionMismatch(f"sum mixes degrees {sorted(degrees)}")
        out = parts[0]
        for p in parts[1:]:
            out = out + p
        return out
    raise InvalidArgument(f"unknown node {kind!r}")


def eval_lie(ast, n):
    """Evaluate to a Lie element; tensor nodes are rejected."""
    kind = ast[0]
    if kind == "gen":
        return generator(n, ast[1])
    if kind == "bracket":
        return lie_bracket(eval_lie(ast[1], n), eval_lie(ast[2], n))
    if kind == "tensor":
        raise InvalidArgument("'.' products are tensors, not Lie elements")
    if kind == "scale":
        return eval_lie(ast[2], n).scale(ast[1])
    if kind == "sum":
        parts = [eval_lie(e, n).scale(s) for s, e in ast[1]]
        degrees = {p.degree for p in parts}
        if len(degrees) != 1:
            raise DimensionMismatch(f"sum mixes degrees {sorted(degrees)}")
        out = parts[0]
        for p in parts[1:]:
            out = out + p
        return out
    raise InvalidArgument(f"unknown node {kind!r}")


# ---------------------------------------------------------------------------
# group words, permutations, shapes

_GROUP_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?$")


def parse_group_word(text):
    letters = []
    for piece in text.split():
        m = _GROUP_TOKEN.match(piece)
        if m is None:
            raise InvalidArgument(f"bad group-word factor {piece!r}")
        index = int(m.group(1))
        power = int(m.group(2)) if m.group(2) else 1
        if index < 1:
            raise InvalidArgument(f"generator index must be >= 1, got {index}")
        letter = index if power > 0 else -index
        letters.extend([letter] * abs(power))
    from .freegroup import reduce_word
    return reduce_word(letters)


def format_group_word(w):
    if not w:
        return "1"
    parts = []
    for a in w:
        parts.append(f"x{a}" if a > 0 else f"x{-a}^-1")
    return " ".join(parts)


def parse_permutation(text, size=None):
    text = text.strip()
    if text.startswith("["):
        body = text[1:-1] if text.endswith("]") else None
        if body is None:
            raise InvalidArgument(f"unclosed one-line permutation {text!r}")
        images = tuple(int(a) for a in body.split(",") if a.strip())
        return check_perm(images)
    cycles = []
    rest = text
    while rest:
        rest = rest.lstrip()
        if not rest:
            break
        if not rest.startswith("("):
            raise InvalidArgument(f"expected '(' in cycle notation: {rest!r}")
        close = rest.index(")") if ")" in rest else None
        if close is None:
            raise InvalidArgument(f"unclosed cycle in {text!r}")
        entries = tuple(int(a) for a in rest[1:close].replace(",", " ").split())
        cycles.append(entries)
        rest = rest[close + 1:]
    q = size if size is not None else max((max(c) for c in cycles if c), default=0)
    if q == 0:
        raise InvalidArgument("cannot infer the permutation size; pass it explicitly")
    return perm_from_cycles(cycles, q)


def parse_shape(text):
    text = text.strip()
    pos = 0

    def parse():
        nonlocal pos
        if pos < len(text) and text[pos] == "[":
            pos += 1
            left = parse()
            if pos >= len(text) or text[pos] != ",":
                raise ParseError("expected ',' in shape", pos + 1)
            pos += 1
            right = parse()
            if pos >= len(text) or text[pos] != "]":
                raise ParseError("expected ']' in shape", pos + 1)
            pos += 1
            return (left, right)
        return LEAF

    shape = parse()
    if pos != len(text):
        raise ParseError(f"trailing input in shape {text!r}", pos + 1)
    return shape


# ---------------------------------------------------------------------------
# formatters

def format_lie(elem):
    return str(elem)


def format_tensor(t):
    if t.is_zero():
        return "0"
    parts = []
    for w, c in t.items():
        text = ".".join(f"x{a}" for a in w) if w else "1"
        if abs(c) != 1:
            text = f"{abs(c)}*{text}"
        parts.append(("- " if c < 0 else "+ ") + text)
    joined = " ".join(parts)
    return joined[2:] if joined.startswith("+ ") else "-" + joined[2:]
