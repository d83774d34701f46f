"""Text expressions over the quantum group, for ``uqtorus eval``.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | INT '/' INT | 'E' | 'F' | 'K' | 'Kinv' | 'Khalf' | 'q' | 'i' | 'zeta'
            | '(' expr ')'

Division is allowed only by scalars.  Negative powers use the algebra inverse.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .hopf import AlgElem, Uq

_TOKEN = re.compile(r"\s*(?:(\d+)|(Khalf|Kinv|zeta|[EFKqi])|(.))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        elif m.group(3) in "+-*/^()":
            out.append(("op", m.group(3), start))
        else:
            raise ParseError(f"unexpected character {m.group(3)!r}", start)
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, alg: Uq, text: str):
        self.alg = alg
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise ParseError(f"expected {value!r}", tok[2])

    def parse(self) -> AlgElem:
        out = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return out

    def expr(self):
        out = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, _, pos = self.take()[1], None, self.peek()[2]
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                c = _scalar_part(rhs)
                if c is None:
                    raise ParseError("division by a non-scalar", pos)
                if c.is_zero():
                    raise ParseError("division by zero", pos)
                out = out * c.inv()
        return out

    def unary(self):
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok[0] != "int":
                raise ParseError("expected an integer exponent", tok[2])
            n = int(tok[1])
            if sign < 0:
                try:
                    base = base.inverse()
                except ZeroDivisionError:
                    raise ParseError("negative power of a non-invertible element", tok[2]) from None
            base = base ** n if n else self.alg.one()
        return base

    def atom(self):
        alg, ctx = self.alg, self.alg.ctx
        kind, value, pos = self.take()
        if kind == "int":
            num = int(value)
            nxt = self.peek()
            # a/b between integer literals is a rational literal
            if nxt[0] == "op" and nxt[1] == "/" and self.toks[self.i + 1][0] == "int":
                self.take()
                den = int(self.take()[1])
                if den == 0:
                    raise ParseError("zero denominator", nxt[2])
                return alg.scalar(ctx.rational(Fraction(num, den)))
            return alg.scalar(ctx.rational(num))
        if kind == "name":
            return {
                "E": alg.E,
                "F": alg.F,
                "K": alg.K,
                "Kinv": alg.Kinv,
                "Khalf": alg.Khalf,
                "q": alg.scalar(ctx.q),
                "i": alg.scalar(ctx.i),
                "zeta": alg.scalar(ctx.zeta_pow(1)),
            }[value]
        if kind == "op" and value == "(":
            out = self.expr()
            self.expect(")")
            return out
        raise ParseError("unexpected end of input" if kind == "end" else f"unexpected {value!r}", pos)


def _scalar_part(x: AlgElem):
    zero_key = x.alg.key(0, 0, 0)
    if any(k != zero_key for k in x.terms):
        return None
    return x.terms.get(zero_key, x.alg.ctx.zero)


def parse_element(alg: Uq, text: str) -> AlgElem:
    """Parse and PBW-normalize an expression in E, F, K^{+-1}, K^{1/2} and scalars."""
    return _Parser(alg, text).parse()
