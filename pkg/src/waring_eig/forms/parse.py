"""Form expressions: parsing and printing.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") INT)?
    atom   := NUMBER | "i" | VAR | "(" expr ")"

Variables are ``x0`` .. ``x9`` with aliases ``x`` = x0 and ``y`` = x1.  Division
is only allowed by nonzero constants, so ``3/2`` and ``(2+i)/5`` are literals.
Powers are expanded symbolically.
"""

from __future__ import annotations

import re

from ..exactnum import ONE, ZERO, GaussRat
from .binary import BForm
from .nform import NForm

MAXVARS = 10

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d|x|y)|(i)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            name = m.group(2)
            idx = {"x": 0, "y": 1}.get(name)
            if idx is None:
                idx = int(name[1:])
            out.append(("var", idx, start))
        elif m.group(3):
            out.append(("i", None, start))
        else:
            out.append(("op", m.group(4), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


# polynomials during parsing: dict exponent tuple (length MAXVARS) -> GaussRat

def _const(c) -> dict:
    c = GaussRat.coerce(c)
    return {(0,) * MAXVARS: c} if c else {}


def _padd(p, q, sign=1):
    out = dict(p)
    for a, c in q.items():
        v = out.get(a, ZERO) + (c if sign > 0 else -c)
        if v:
            out[a] = v
        else:
            out.pop(a, None)
    return out


def _pmul(p, q):
    out: dict = {}
    for a, c in p.items():
        for b, e in q.items():
            k = tuple(x + y for x, y in zip(a, b))
            v = out.get(k, ZERO) + c * e
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _ppow(p, e):
    out = _const(1)
    base = p
    while e:
        if e & 1:
            out = _pmul(out, base)
        base = _pmul(base, base)
        e >>= 1
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])

    def parse(self):
        p = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError("unexpected trailing input", t[2])
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = _padd(p, q, 1 if op == "+" else -1)
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            q = self.unary()
            if op == "*":
                p = _pmul(p, q)
            else:
                if any(any(a) for a in q) or not q:
                    raise ParseError("division only by nonzero constants", pos)
                inv = next(iter(q.values())).inverse()
                p = {a: c * inv for a, c in p.items()}
        return p

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            p = self.unary()
            return p if t[1] == "+" else {a: -c for a, c in p.items()}
        return self.power()

    def power(self):
        p = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] in ("^", "**"):
            self.take()
            e = self.take()
            if e[0] != "num":
                raise ParseError("exponent must be a nonnegative integer literal", e[2])
            p = _ppow(p, e[1])
        return p

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return _const(val)
        if kind == "i":
            return _const(GaussRat(0, 1))
        if kind == "var":
            a = [0] * MAXVARS
            a[val] = 1
            return {tuple(a): ONE}
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError("expected a number, variable, 'i' or '('", pos)


def parse_poly(text: str) -> dict:
    return _Parser(text).parse()


def parse_form(text: str, nvars: int | None = None) -> NForm:
    """Parse a homogeneous form; ``nvars`` defaults to max(2, highest index + 1)."""
    p = parse_poly(text)
    if not p:
        raise ParseError("the zero polynomial has no degree; not a form", 0)
    used = max((i for a in p for i, k in enumerate(a) if k), default=-1)
    n = nvars if nvars is not None else max(2, used + 1)
    if used >= n:
        raise ParseError(f"variable x{used} exceeds nvars={n}", 0)
    degrees = {sum(a) for a in p}
    if len(degrees) != 1:
        raise ParseError(f"expression is not homogeneous (degrees {sorted(degrees)})", 0)
    d = degrees.pop()
    return NForm(n, d, {a[:n]: c for a, c in p.items()})


def parse_binary(text: str) -> BForm:
    F = parse_form(text, nvars=2)
    return BForm.from_nform(F)


def parse_constant(text: str) -> GaussRat:
    p = parse_poly(text)
    if any(any(a) for a in p):
        raise ParseError("expected a constant", 0)
    return next(iter(p.values()), ZERO)


def parse_linear(text: str, nvars: int | None = None):
    from .nform import LinForm

    F = parse_form(text, nvars)
    if F.degree != 1:
        raise ParseError("expected a linear form", 0)
    return LinForm(F.coeff(tuple(1 if j == i else 0 for j in range(F.nvars))) for i in range(F.nvars))


def format_form(F: NForm) -> str:
    if hasattr(F, "to_nform"):
        F = F.to_nform()
    if F.is_zero():
        return "0"
    parts = []
    for a, c in F.items():
        mono = "*".join(f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(a) if k)
        if not mono:
            parts.append(str(c))
            continue
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    out = parts[0]
    for p in parts[1:]:
        out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
    return out
