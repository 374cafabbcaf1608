"""Expression grammar shared by scalars, Ore polynomials and PBW elements.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' exponent)?
    atom   := INT | NAME | '(' expr ')'

Products are evaluated in the order written, so `x*t` and `t*x` differ in a
non-commutative ring.
"""

import re

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at position {pos}")
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, m.start(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.i += 1
        return tok

    def at_op(self, *ops):
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] in ops

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        node = self.expr()
        if self.peek() is not None:
            tok = self.peek()
            raise ParseError(f"unexpected token {tok[1]!r} at position {tok[2]} in {self.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.at_op("+", "-"):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.at_op("*", "/"):
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.at_op("-"):
            self.take()
            return ("neg", self.unary())
        if self.at_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.take()
            sign = 1
            paren = False
            if self.at_op("("):
                self.take()
                paren = True
            if self.at_op("-"):
                self.take()
                sign = -1
            tok = self.take()
            if tok[0] != "int":
                raise ParseError(f"exponent must be an integer at position {tok[2]}")
            if paren:
                if not self.at_op(")"):
                    raise ParseError("missing ')' after exponent")
                self.take()
            return ("pow", base, sign * tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return ("num", value)
        if kind == "name":
            return ("var", value)
        if value == "(":
            node = self.expr()
            if not self.at_op(")"):
                raise ParseError(f"missing ')' in {self.text!r}")
            self.take()
            return node
        raise ParseError(f"unexpected token {value!r} at position {pos} in {self.text!r}")


def parse_expr(text):
    return _Parser(text).parse()


def evaluate(node, ctx):
    """Evaluate a parsed tree.

    `ctx` supplies const(int), var(name), div(a, b) and inverse(a); the values
    it returns must support +, - and *.
    """
    kind = node[0]
    if kind == "num":
        return ctx.const(node[1])
    if kind == "var":
        return ctx.var(node[1])
    if kind == "neg":
        return -evaluate(node[1], ctx)
    if kind == "add":
        return evaluate(node[1], ctx) + evaluate(node[2], ctx)
    if kind == "sub":
        return evaluate(node[1], ctx) - evaluate(node[2], ctx)
    if kind == "mul":
        return evaluate(node[1], ctx) * evaluate(node[2], ctx)
    if kind == "div":
        return ctx.div(evaluate(node[1], ctx), evaluate(node[2], ctx))
    if kind == "pow":
        base = evaluate(node[1], ctx)
        e = node[2]
        if e < 0:
            base = ctx.inverse(base)
            e = -e
        result = ctx.const(1)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result
    raise ParseError(f"bad node {kind}")


_ATOM = re.compile(r"^-?(\d+|[A-Za-z_][A-Za-z_0-9]*)(\^\d+)?$")


def is_atomic(text):
    """True when `text` can be followed by `*monomial` without parentheses."""
    return bool(_ATOM.match(text))


def join_terms(terms):
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        if t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


def format_term(coeff_text, mono_text):
    """Render coefficient times monomial; `mono_text` empty means a constant."""
    if not mono_text:
        return coeff_text
    if coeff_text == "1":
        return mono_text
    if coeff_text == "-1":
        return "-" + mono_text
    if is_atomic(coeff_text):
        return coeff_text + "*" + mono_text
    return "(" + coeff_text + ")*" + mono_text
