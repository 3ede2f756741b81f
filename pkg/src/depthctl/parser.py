"""Tokenizer and recursive-descent parser for the input language.

    ring QQ[x,y,u,v];
    ideal J = x*u, x*v, y*u, y*v;
    module M = quot J;
    module N = coker [[x, y^2, 0], [0, x, y]];
    prime P = x, y;
    map phi : t -> x^2, x -> x, y -> y;

``#`` starts a comment running to the end of the line; every statement ends
with ``;``.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DuplicateName, InputSyntaxError, UnknownVariable
from .field import Field
from .poly import Poly, Ring, canonical_string

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[;,=\[\]()+\-*^/:])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise InputSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Stream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return InputSyntaxError(message, tok.line, tok.col)

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text):
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text):
        if not self.at(text):
            got = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, got {got!r}")
        return self.next()

    def ident(self):
        if self.tok.kind != "ident":
            raise self.error(f"expected a name, got {self.tok.text or 'end of input'!r}")
        return self.next()

    def integer(self):
        if self.tok.kind != "int":
            raise self.error(f"expected an integer, got {self.tok.text or 'end of input'!r}")
        return int(self.next().text)


class _PolyParser:
    def __init__(self, stream, ring):
        self.s = stream
        self.ring = ring

    def expr(self):
        s = self.s
        if s.at("-"):
            s.next()
            value = -self.term()
        else:
            if s.at("+"):
                s.next()
            value = self.term()
        while s.at("+") or s.at("-"):
            op = s.next().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        s = self.s
        value = self.power()
        while s.at("*") or s.at("/"):
            op = s.next()
            rhs = self.power()
            if op.text == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise s.error("division only by a nonzero constant", op)
                value = value.scale(self.ring.field.inv(rhs.constant_term()))
        return value

    def power(self):
        s = self.s
        if s.at("-"):
            s.next()
            return -self.power()
        base = self.atom()
        if s.at("^"):
            s.next()
            base = base ** s.integer()
        return base

    def atom(self):
        s = self.s
        tok = s.tok
        if tok.kind == "int":
            s.next()
            return self.ring.const(int(tok.text))
        if tok.kind == "ident":
            s.next()
            if tok.text not in self.ring.vars:
                raise UnknownVariable(
                    f"line {tok.line}, column {tok.col}: unknown variable {tok.text!r}")
            return self.ring.gen(tok.text)
        if s.at("("):
            s.next()
            value = self.expr()
            s.expect(")")
            return value
        raise s.error(f"expected a polynomial, got {tok.text or 'end of input'!r}")


def parse_poly(text, ring):
    s = _Stream(tokenize(text))
    value = _PolyParser(s, ring).expr()
    if s.tok.kind != "eof":
        raise s.error(f"trailing input {s.tok.text!r}")
    return value


@dataclass
class InputProgram:
    ring: Ring
    ideals: dict = field(default_factory=dict)     # name -> list[Poly]
    modules: dict = field(default_factory=dict)    # name -> ("quot", ideal) | ("coker", rows)
    primes: dict = field(default_factory=dict)     # name -> list[Poly]
    maps: dict = field(default_factory=dict)       # name -> list[(source var, Poly)]
    positions: dict = field(default_factory=dict)  # name -> (line, col)

    def names(self):
        return set(self.positions)

    def to_text(self):
        """Canonical source text; ``parse_input(p.to_text())`` reproduces ``p``."""
        r = self.ring
        lines = [f"ring {r.field}[{','.join(r.vars)}];"]
        order = sorted(self.positions, key=lambda k: self.positions[k])
        for name in order:
            if name in self.ideals:
                lines.append(f"ideal {name} = {_polys(self.ideals[name])};")
            elif name in self.primes:
                lines.append(f"prime {name} = {_polys(self.primes[name])};")
            elif name in self.modules:
                kind, body = self.modules[name]
                if kind == "quot":
                    lines.append(f"module {name} = quot {body};")
                else:
                    rows = ", ".join("[" + _polys(row) + "]" for row in body)
                    lines.append(f"module {name} = coker [{rows}];")
            elif name in self.maps:
                body = ", ".join(f"{v} -> {canonical_string(p)}" for v, p in self.maps[name])
                lines.append(f"map {name} : {body};")
        return "\n".join(lines) + "\n"


def _polys(ps):
    return ", ".join(canonical_string(p) for p in ps)


def _parse_field(s):
    tok = s.tok
    if tok.text == "QQ":
        s.next()
        return Field.QQ()
    if tok.text == "GF":
        s.next()
        s.expect("(")
        p = s.integer()
        s.expect(")")
        try:
            return Field.GF(p)
        except Exception as exc:
            raise InputSyntaxError(str(exc), tok.line, tok.col) from None
    raise s.error("expected a field: QQ or GF(p)")


def parse_input(text):
    s = _Stream(tokenize(text))
    if not s.at("ring"):
        raise s.error("the ring declaration must come first")
    s.next()
    fld = _parse_field(s)
    s.expect("[")
    names = [s.ident().text]
    while s.at(","):
        s.next()
        names.append(s.ident().text)
    s.expect("]")
    s.expect(";")
    if len(set(names)) != len(names):
        raise DuplicateName(f"duplicate variable in ring declaration: {names}")
    prog = InputProgram(Ring(fld, tuple(names)))
    pp = _PolyParser(s, prog.ring)

    def poly_list():
        out = [pp.expr()]
        while s.at(","):
            s.next()
            out.append(pp.expr())
        return out

    def declare(tok):
        if tok.text in prog.positions or tok.text in prog.ring.vars:
            raise DuplicateName(f"line {tok.line}, column {tok.col}: {tok.text!r} already defined")
        prog.positions[tok.text] = (tok.line, tok.col)

    if s.tok.kind == "eof":
        raise s.error("expected at least one statement after the ring declaration")
    while s.tok.kind != "eof":
        kw = s.tok
        if kw.text == "ring":
            raise s.error("only one ring declaration is allowed")
        if kw.text in ("ideal", "prime"):
            s.next()
            name = s.ident()
            s.expect("=")
            polys = poly_list()
            declare(name)
            (prog.ideals if kw.text == "ideal" else prog.primes)[name.text] = polys
        elif kw.text == "module":
            s.next()
            name = s.ident()
            s.expect("=")
            if s.at("quot"):
                s.next()
                ref = s.ident().text
                body = ("quot", ref)
            elif s.at("coker"):
                s.next()
                s.expect("[")
                rows = []
                while True:
                    s.expect("[")
                    rows.append(poly_list())
                    s.expect("]")
                    if not s.at(","):
                        break
                    s.next()
                s.expect("]")
                if len({len(r) for r in rows}) != 1:
                    raise s.error("matrix rows must have equal length", kw)
                body = ("coker", rows)
            else:
                raise s.error("expected 'quot' or 'coker'")
            declare(name)
            prog.modules[name.text] = body
        elif kw.text == "map":
            s.next()
            name = s.ident()
            s.expect(":")
            pairs = []
            while True:
                var = s.ident().text
                s.expect("->")
                pairs.append((var, pp.expr()))
                if not s.at(","):
                    break
                s.next()
            declare(name)
            prog.maps[name.text] = pairs
        else:
            raise s.error(f"unknown statement {kw.text or 'end of input'!r}")
        s.expect(";")
    for name, (kind, ref) in prog.modules.items():
        if kind == "quot" and ref not in prog.ideals and ref not in prog.primes:
            line, col = prog.positions[name]
            raise InputSyntaxError(f"module {name}: unknown ideal {ref!r}", line, col)
    return prog
