"""Recursive-descent parser for polynomial potentials over Q.

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor | '/' uint)*
    factor   := base ('^' uint)?
    base     := rational | ident | '(' expr ')'
    rational := int ('/' uint)?

Implicit multiplication is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Key = Tuple[Tuple[str, int], ...]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"{message} at line {line}, column {col}")


@dataclass(frozen=True)
class Token:
    kind: str  # int, ident, op, end
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    out = []
    line, line_start = 1, 0
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            line += 1
            pos += 1
            line_start = pos
            continue
        if ch.isspace():
            pos += 1
            continue
        col = pos - line_start + 1
        m = re.match(r"\d+", text[pos:])
        if m:
            out.append(Token("int", m.group(), line, col))
            pos += m.end()
            continue
        m = re.match(r"[A-Za-z_][A-Za-z0-9_]*", text[pos:])
        if m:
            out.append(Token("ident", m.group(), line, col))
            pos += m.end()
            continue
        if ch in "+-*/^()":
            out.append(Token("op", ch, line, col))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    out.append(Token("end", "", line, n - line_start + 1))
    return out


# polynomials keyed by sorted ((name, exp), ...)


def _pmul(a: Dict[Key, Fraction], b: Dict[Key, Fraction]) -> Dict[Key, Fraction]:
    out: Dict[Key, Fraction] = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            d = dict(ka)
            for v, e in kb:
                d[v] = d.get(v, 0) + e
            k = tuple(sorted(d.items()))
            out[k] = out.get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _padd(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


class _Parser:
    def __init__(self, text: str, declared: Optional[Sequence[str]]):
        self.toks = tokenize(text)
        self.i = 0
        self.declared = set(declared) if declared is not None else None
        self.seen: List[str] = []

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def expect_uint(self, what: str) -> Tuple[int, Token]:
        t = self.tok
        if t.kind != "int":
            self.error(f"expected an unsigned integer {what}")
        self.take()
        return int(t.text), t

    def parse(self):
        if self.tok.kind == "end":
            self.error("empty expression")
        p = self.expr()
        if self.tok.kind != "end":
            t = self.tok
            what = f"identifier {t.text!r}" if t.kind == "ident" else f"{t.text!r}"
            if t.kind in ("ident", "int") or t.text == "(":
                self.error(f"unexpected {what} (implicit multiplication is not allowed)")
            self.error(f"unexpected {what}")
        return p

    def expr(self):
        sign = 1
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = -1 if self.take().text == "-" else 1
        acc = _padd({}, self.term(), sign)
        while self.tok.kind == "op" and self.tok.text in "+-":
            s = -1 if self.take().text == "-" else 1
            acc = _padd(acc, self.term(), s)
        return acc

    def term(self):
        acc = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.take()
            if op.text == "*":
                acc = _pmul(acc, self.factor())
            else:
                d, t = self.expect_uint("after '/'")
                if d == 0:
                    self.error("zero denominator", t)
                acc = {k: v / d for k, v in acc.items()}
        return acc

    def factor(self):
        b = self.base()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.take()
            e, _ = self.expect_uint("exponent")
            out = {(): Fraction(1)}
            for _ in range(e):
                out = _pmul(out, b)
            return out
        return b

    def base(self):
        t = self.tok
        if t.kind == "int":
            self.take()
            val = Fraction(int(t.text))
            if self.tok.kind == "op" and self.tok.text == "/" and self.toks[self.i + 1].kind == "int":
                self.take()
                d, dt = self.expect_uint("denominator")
                if d == 0:
                    self.error("zero denominator", dt)
                val = val / d
            return {(): val} if val else {}
        if t.kind == "ident":
            self.take()
            if self.declared is not None and t.text not in self.declared:
                self.error(f"unknown identifier {t.text!r}", t)
            if t.text not in self.seen:
                self.seen.append(t.text)
            return {((t.text, 1),): Fraction(1)}
        if t.kind == "op" and t.text == "(":
            self.take()
            inner = self.expr()
            if not (self.tok.kind == "op" and self.tok.text == ")"):
                self.error("expected ')'")
            self.take()
            return inner
        if t.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {t.text!r}")


@dataclass(frozen=True)
class Potential:
    source: str
    vars: Tuple[str, ...]
    terms: Tuple[Tuple[Tuple[int, ...], Fraction], ...]

    def as_dict(self) -> Dict[Tuple[int, ...], Fraction]:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def canonical(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms:
            word = "*".join((v if e == 1 else f"{v}^{e}") for v, e in zip(self.vars, exps) if e)
            a = abs(c)
            sign = "-" if c < 0 else "+"
            if not word:
                body = str(a)
            elif a == 1:
                body = word
            elif a.denominator == 1:
                body = f"{a.numerator}*{word}"
            elif a.numerator == 1:
                body = f"{word}/{a.denominator}"
            else:
                body = f"{a.numerator}*{word}/{a.denominator}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def infer_vars(seen: Sequence[str], m: Optional[int]) -> Tuple[str, ...]:
    ys = re.compile(r"y([1-9]\d*)$")
    if m is None:
        if seen and all(ys.match(v) for v in seen):
            m = max(int(ys.match(v).group(1)) for v in seen)
        else:
            m = max(1, len(seen))
    standard = [f"y{i}" for i in range(1, m + 1)]
    if all(v in standard for v in seen):
        return tuple(standard)
    if len(seen) > m:
        raise ValueError(f"potential uses {len(seen)} variables but the dimension is {m}")
    pad = [y for y in standard if y not in seen]
    return tuple(list(seen) + pad[: m - len(seen)])


def parse_potential(text: str, vars: Optional[Sequence[str]] = None, m: Optional[int] = None) -> Potential:
    p = _Parser(text, vars)
    poly = p.parse()
    if vars is None:
        vars = infer_vars(p.seen, m)
    elif m is not None and len(vars) != m:
        raise ValueError(f"{len(vars)} variables declared but the dimension is {m}")
    vars = tuple(vars)
    idx = {v: i for i, v in enumerate(vars)}
    terms = {}
    for key, c in poly.items():
        exps = [0] * len(vars)
        for v, e in key:
            exps[idx[v]] = e
        terms[tuple(exps)] = c
    ordered = sorted(terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))
    return Potential(text, vars, tuple(ordered))
