"""Recursive-descent parser for the textual expression format.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | NAME | NAME "(" expr ("," expr)* ")" | "(" expr ")"

Plain ``*`` is the commutative product; the star product is only reachable
through an explicit ``star(a, b, ...)`` call.  Names are resolved by a
context object, so the same parser reads Weyl elements, cyclotomic scalars
and cohomology-ring classes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .scalars import CycloScalar, as_scalar, cyclo_embed_root
from .weyl import COMPLEX, REAL, WeylElement, WeylSpace, moyal_star

__all__ = ["ParseError", "DomainError", "parse", "parse_scalar", "parse_weyl",
           "weyl_space_for", "ScalarContext", "WeylContext"]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text

    def pointer(self) -> str:
        """The input with a caret under the failing position."""
        return f"{self.text}\n{' ' * self.position}^"


class DomainError(ValueError):
    """Well-formed input that makes no sense in the requested setting."""


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass
class _Tok:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            toks.append(_Tok("op", ch, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ctx):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str) -> _Tok:
        t = self.take()
        if t.kind != "op" or t.value != op:
            raise self.error(f"expected {op!r}", t)
        return t

    def error(self, msg: str, tok: _Tok) -> ParseError:
        found = "end of input" if tok.kind == "end" else repr(tok.value)
        return ParseError(f"{msg}, found {found}", tok.pos, self.text)

    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression", self.peek())
        v = self.expr()
        if self.peek().kind != "end":
            raise self.error("unexpected token", self.peek())
        return v

    def expr(self):
        v = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            w = self.term()
            v = self.ctx.add(v, w) if op == "+" else self.ctx.add(v, self.ctx.neg(w))
        return v

    def term(self):
        v = self.unary()
        while self.peek().kind == "op" and self.peek().value in "*/":
            tok = self.take()
            w = self.unary()
            v = self.ctx.mul(v, w) if tok.value == "*" else self._div(v, w, tok)
        return v

    def _div(self, v, w, tok):
        s = self.ctx.as_scalar(w)
        if s is None:
            raise ParseError("division only by scalars", tok.pos, self.text)
        if s.is_zero():
            raise ParseError("division by zero", tok.pos, self.text)
        return self.ctx.mul(v, s.inverse())

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.value in "+-":
            self.take()
            v = self.unary()
            return self.ctx.neg(v) if t.value == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t.kind == "op" and t.value == "^":
            self.take()
            neg = False
            if self.peek().kind == "op" and self.peek().value == "-":
                self.take()
                neg = True
            e = self.take()
            if e.kind != "int":
                raise self.error("expected integer exponent", e)
            k = int(e.value)
            if neg:
                s = self.ctx.as_scalar(base)
                if s is None or s.is_zero():
                    raise ParseError("negative power of a non-invertible value", e.pos, self.text)
                return s.inverse() ** k
            return self.ctx.pow(base, k)
        return base

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return self.ctx.number(int(t.value))
        if t.kind == "op" and t.value == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "name":
            if self.peek().kind == "op" and self.peek().value == "(":
                self.take()
                args = [self.expr()]
                while self.peek().kind == "op" and self.peek().value == ",":
                    self.take()
                    args.append(self.expr())
                self.expect(")")
                try:
                    return self.ctx.call(t.value, args)
                except (KeyError, TypeError, ValueError) as exc:
                    if isinstance(exc, (ParseError, DomainError)):
                        raise
                    raise ParseError(str(exc).strip("'\""), t.pos, self.text) from None
            try:
                return self.ctx.name(t.value)
            except KeyError as exc:
                raise ParseError(str(exc).strip("'\""), t.pos, self.text) from None
        raise self.error("expected a value", t)


def parse(text: str, ctx) -> Any:
    return _Parser(text, ctx).parse()


# ---------------------------------------------------------------------------
# contexts

class ScalarContext:
    """Cyclotomic scalars: integers, rationals and ``zeta(N)``."""

    def number(self, k: int):
        return CycloScalar.from_rational(k)

    def as_scalar(self, v):
        return v if isinstance(v, CycloScalar) else None

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, k):
        return a ** k

    def name(self, s: str):
        raise KeyError(f"unknown name {s!r}")

    def call(self, f: str, args: Sequence):
        if f == "zeta":
            if len(args) != 1:
                raise ValueError("zeta takes one argument")
            n = args[0]
            if not (isinstance(n, CycloScalar) and n.is_rational()):
                raise ValueError("zeta needs a positive integer order")
            q = n.to_fraction()
            if q.denominator != 1 or q <= 0:
                raise ValueError("zeta needs a positive integer order")
            return cyclo_embed_root(int(q), 1)
        raise KeyError(f"unknown function {f!r}")


def parse_scalar(text: str) -> CycloScalar:
    return parse(text, ScalarContext())


_GEN = re.compile(r"^(p|q|zb|z)([1-9]\d*)$")


def weyl_space_for(texts: Sequence[str], n: int | None = None) -> WeylSpace:
    """Smallest standard space containing the generators used in ``texts``.

    A pair is COMPLEX when written with ``z``/``zb`` and REAL with ``p``/``q``;
    mixing both on one index, or exceeding an explicit ``n``, is a domain error.
    """
    kinds: dict[int, str] = {}
    for text in texts:
        for tok in _tokenize(text):
            if tok.kind != "name":
                continue
            m = _GEN.match(tok.value)
            if not m:
                continue
            i = int(m.group(2))
            kind = COMPLEX if m.group(1) in ("z", "zb") else REAL
            if kinds.get(i, kind) != kind:
                raise DomainError(f"pair {i} used both as p/q and as z/zb")
            kinds[i] = kind
    top = max(kinds, default=0)
    if n is not None:
        if top > n:
            raise DomainError(f"generator index {top} exceeds dimension n = {n}")
        top = n
    return WeylSpace(tuple(kinds.get(i, REAL) for i in range(1, top + 1)))


class WeylContext(ScalarContext):
    """Weyl-algebra elements over a fixed space; ``h`` is hbar."""

    def __init__(self, space: WeylSpace):
        self.space = space

    def _lift(self, v):
        if isinstance(v, WeylElement):
            return v
        return WeylElement.const(self.space, v)

    def as_scalar(self, v):
        if isinstance(v, CycloScalar):
            return v
        if isinstance(v, WeylElement) and all(k == (self.space.zero_mono(), 0) for k in v.terms):
            return v.terms.get((self.space.zero_mono(), 0), CycloScalar.from_rational(0))
        return None

    def add(self, a, b):
        if isinstance(a, CycloScalar) and isinstance(b, CycloScalar):
            return a + b
        return self._lift(a) + self._lift(b)

    def mul(self, a, b):
        if isinstance(a, CycloScalar) and isinstance(b, CycloScalar):
            return a * b
        if isinstance(b, CycloScalar):
            return self._lift(a).scale(b)
        if isinstance(a, CycloScalar):
            return self._lift(b).scale(a)
        return a * b

    def pow(self, a, k):
        if isinstance(a, CycloScalar):
            return a ** k
        out = WeylElement.const(self.space)
        for _ in range(k):
            out = out * a
        return out

    def name(self, s: str):
        if s == "h":
            return WeylElement.from_hbar(self.space, _hbar())
        m = _GEN.match(s)
        if not m:
            raise KeyError(f"unknown name {s!r}")
        i = int(m.group(2)) - 1
        if i >= self.space.n:
            raise KeyError(f"generator {s} outside the space")
        first = m.group(1) in ("p", "z")
        kind = COMPLEX if m.group(1) in ("z", "zb") else REAL
        if self.space.kinds[i] != kind:
            raise KeyError(f"generator {s} does not match the kind of pair {i + 1}")
        return WeylElement.gen(self.space, i if first else self.space.n + i)

    def call(self, f: str, args: Sequence):
        if f == "star":
            if len(args) < 2:
                raise ValueError("star takes at least two arguments")
            out = self._lift(args[0])
            for a in args[1:]:
                out = moyal_star(out, self._lift(a))
            return out
        return super().call(f, args)


def _hbar():
    from .scalars import HbarSeries
    return HbarSeries.hbar(1)


def parse_weyl(text: str, space: WeylSpace) -> WeylElement:
    v = parse(text, WeylContext(space))
    return v if isinstance(v, WeylElement) else WeylElement.const(space, v)
