"""Recursive-descent parser for the concrete syntax.

Terms::

    0 | x | S t | t + t | t * t | t -. t      (* binds tighter than +, + than -.)

Formulas::

    T | F | t = t | t < t | f & f | f "|" f | E x. f
    ![x1,...,xn](f -> f) | (f -> f)

``&`` binds tighter than ``|``; ``E x.`` takes the smallest formula to its
right.  The LK connectives are written ``~f``, ``A x. f`` and ``(f ~> f)``.
A sequent is ``f => f``.
"""
from __future__ import annotations

import re

from .syntax import (
    Add, And, Block, Bot, Eq, Exists, ForallOne, Imp, Lt, Monus, Mul, Neg, Or,
    Sequent, Succ, Top, Var, Zero,
)

L = "L"
L_C = "L_c"

_TOKEN = re.compile(
    r"\s*(?:(?P<tok>!\[|->|-\.|=>|~>|[()\[\],.&|=<+*~]|[A-Z]|[a-z][A-Za-z0-9_']*|\d+))"
)
_KEYWORDS = {"S", "E", "T", "F", "A"}


class ParseError(ValueError):
    def __init__(self, msg, pos, text=""):
        self.pos = pos
        self.msg = msg
        super().__init__(f"{msg} at position {pos}" + (f": {text!r}" if text else ""))


def tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", pos, text)
        start = m.start("tok")
        toks.append((m.group("tok"), start))
        pos = m.end()
    toks.append(("<eof>", n))
    return toks


class _Parser:
    def __init__(self, text, language):
        if language not in (L, L_C):
            raise ValueError(f"unknown language {language!r}")
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.language = language

    # -- helpers
    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def advance(self):
        tok = self.toks[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok):
        if self.peek() != tok:
            raise ParseError(f"expected {tok!r}, found {self.peek()!r}", self.pos())
        return self.advance()

    def ident(self):
        tok = self.peek()
        if not re.fullmatch(r"[a-z][A-Za-z0-9_']*", tok):
            raise ParseError(f"expected variable, found {tok!r}", self.pos())
        return self.advance()

    def done(self):
        if self.peek() != "<eof>":
            raise ParseError(f"unexpected {self.peek()!r}", self.pos())

    # -- terms
    def term(self):
        t = self.add_term()
        while self.peek() == "-.":
            if self.language != L_C:
                raise ParseError("cut-off '-.' is not in language L", self.pos())
            self.advance()
            t = Monus(t, self.add_term())
        return t

    def add_term(self):
        t = self.mul_term()
        while self.peek() == "+":
            self.advance()
            t = Add(t, self.mul_term())
        return t

    def mul_term(self):
        t = self.prim_term()
        while self.peek() == "*":
            self.advance()
            t = Mul(t, self.prim_term())
        return t

    def prim_term(self):
        tok = self.peek()
        if tok == "0":
            self.advance()
            return Zero()
        if tok == "S":
            self.advance()
            return Succ(self.prim_term())
        if tok == "(":
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        if tok.isdigit():
            raise ParseError("only the numeral 0 is a constant; write S...0", self.pos())
        return Var(self.ident())

    # -- formulas
    def formula(self):
        a = self.and_f()
        while self.peek() == "|":
            self.advance()
            a = Or(a, self.and_f())
        return a

    def and_f(self):
        a = self.unary()
        while self.peek() == "&":
            self.advance()
            a = And(a, self.unary())
        return a

    def unary(self):
        tok = self.peek()
        if tok == "E" or tok == "A":
            self.advance()
            v = self.ident()
            self.expect(".")
            body = self.unary()
            return Exists(v, body) if tok == "E" else ForallOne(v, body)
        if tok == "~":
            self.advance()
            return Neg(self.unary())
        if tok == "T":
            self.advance()
            return Top()
        if tok == "F":
            self.advance()
            return Bot()
        if tok == "![":
            start = self.pos()
            self.advance()
            vs = []
            if self.peek() != "]":
                vs.append(self.ident())
                while self.peek() == ",":
                    self.advance()
                    vs.append(self.ident())
            self.expect("]")
            if len(set(vs)) != len(vs):
                raise ParseError("repeated variable in block", start)
            self.expect("(")
            a = self.formula()
            self.expect("->")
            b = self.formula()
            self.expect(")")
            return Block(tuple(vs), a, b)
        if tok == "(":
            save = self.i
            try:
                return self.atom()
            except ParseError as e:
                first_err = e
                self.i = save
            self.advance()
            try:
                a = self.formula()
                if self.peek() == "->":
                    self.advance()
                    b = self.formula()
                    self.expect(")")
                    return Block((), a, b)
                if self.peek() == "~>":
                    self.advance()
                    b = self.formula()
                    self.expect(")")
                    return Imp(a, b)
                self.expect(")")
                return a
            except ParseError as e:
                raise e if e.pos >= first_err.pos else first_err
        return self.atom()

    def atom(self):
        s = self.term()
        tok = self.peek()
        if tok == "=":
            self.advance()
            return Eq(s, self.term())
        if tok == "<":
            self.advance()
            return Lt(s, self.term())
        raise ParseError(f"expected '=' or '<', found {tok!r}", self.pos())


def parse_formula(text: str, language: str = L_C):
    p = _Parser(text, language)
    a = p.formula()
    p.done()
    return a


def parse_term(text: str, language: str = L_C):
    p = _Parser(text, language)
    t = p.term()
    p.done()
    return t


def parse_sequent(text: str, language: str = L_C) -> Sequent:
    """Parse ``A => B``; a bare formula ``A`` is read as ``T => A``."""
    p = _Parser(text, language)
    a = p.formula()
    if p.peek() == "=>":
        p.advance()
        b = p.formula()
        p.done()
        return Sequent(a, b)
    p.done()
    return Sequent(Top(), a)


def parse_formula_list(text: str, language: str = L_C):
    """Comma separated formulas (possibly empty), used for LK sequents."""
    p = _Parser(text, language)
    out = []
    if p.peek() == "<eof>":
        return out
    out.append(p.formula())
    while p.peek() == ",":
        p.advance()
        out.append(p.formula())
    p.done()
    return out


def parse_lk_sequent(text: str, language: str = L_C):
    """``A, B => C`` style sequent with formula lists on both sides."""
    p = _Parser(text, language)
    ante = []
    if p.peek() != "=>":
        ante.append(p.formula())
        while p.peek() == ",":
            p.advance()
            ante.append(p.formula())
    p.expect("=>")
    cons = []
    if p.peek() != "<eof>":
        cons.append(p.formula())
        while p.peek() == ",":
            p.advance()
            cons.append(p.formula())
    p.done()
    return tuple(ante), tuple(cons)
