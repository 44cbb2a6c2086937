"""Text parsing for polynomials, support profiles and basis files.

Polynomial grammar (whitespace is insignificant)::

    poly   := ['+'|'-'] term { ('+'|'-') term }
    term   := factor { ('*'|'/') factor }
    factor := atom ['^' nat]
    atom   := nat | 't' | 'D' nat '(' var ')' | var {"'"} | '(' poly ')'
    var    := 'y' nat | 'y'

``y`` without an index and the prime sugar ``y''`` are accepted only in
single-variable sessions.  Division is allowed by expressions in ``t``
alone, so coefficients such as ``(t^2-1)/(t+2)`` parse directly.

Support grammar, one entry per variable separated by top-level commas::

    entry := 'N' | nat 'N' | nat '+' nat 'N' | '{' [nat {',' nat}] '}' ['u' prog]
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .coefficients import RationalFunction, T, rf
from .diffpoly import DiffPolynomial
from .tropical import SupportProfile, SupportSet


class ParseError(SyntaxError):
    """Malformed input; ``span`` is the half-open character range at fault."""

    code = "SyntaxError"

    def __init__(self, message: str, text: str = "", span: Tuple[int, int] = (0, 0)):
        super().__init__(message)
        self.message = message
        self.text = text
        self.span = span

    def pretty(self) -> str:
        a, b = self.span
        caret = " " * a + "^" * max(b - a, 1)
        return f"{self.message}\n  {self.text}\n  {caret}"


class IndexOutOfRange(ParseError):
    code = "IndexOutOfRange"


class ZeroDenominator(ParseError):
    code = "ZeroDenominator"


class ZeroPeriod(ParseError):
    code = "ZeroPeriod"


class ArityMismatch(ParseError):
    code = "ArityMismatch"


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<deriv>D(?=\s*\d))
  | (?P<var>y)
  | (?P<t>t)
  | (?P<prime>')
  | (?P<op>[-+*/^()])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    start: int
    end: int


def _tokenize(text: str) -> List[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, (pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            out.append(_Tok(tok if kind == "op" else kind, tok, m.start(), m.end()))
        pos = m.end()
    out.append(_Tok("end", "", len(text), len(text)))
    return out


class _PolyParser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.toks = _tokenize(text)
        self.k = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.k]

    def take(self, kind: str) -> _Tok:
        tok = self.cur
        if tok.kind != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok.kind == "end" else repr(tok.text)
            raise ParseError(f"expected {want}, found {got}", self.text, (tok.start, tok.end))
        self.k += 1
        return tok

    def error(self, msg: str, start: int, end: int, cls=ParseError):
        return cls(msg, self.text, (start, end))

    def parse(self) -> DiffPolynomial:
        if self.cur.kind == "end":
            raise self.error("empty polynomial", 0, len(self.text))
        p = self.poly()
        self.take("end")
        return p

    def poly(self) -> DiffPolynomial:
        sign = 1
        if self.cur.kind in "+-":
            sign = -1 if self.take(self.cur.kind).kind == "-" else 1
        acc = self.term().scale(sign)
        while self.cur.kind in ("+", "-"):
            op = self.take(self.cur.kind).kind
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> DiffPolynomial:
        acc = self.factor()
        while self.cur.kind in ("*", "/"):
            op = self.take(self.cur.kind).kind
            start = self.cur.start
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
                continue
            end = self.toks[self.k - 1].end
            c = _as_coefficient(rhs)
            if c is None:
                raise self.error("can only divide by an expression in t", start, end)
            if not c:
                raise self.error("division by zero", start, end, ZeroDenominator)
            acc = acc.scale(c.inverse())
        return acc

    def factor(self) -> DiffPolynomial:
        base = self.atom()
        if self.cur.kind == "^":
            self.take("^")
            e = int(self.take("num").text)
            out = DiffPolynomial.constant(1, self.n)
            for _ in range(e):
                out = out * base
            return out
        return base

    def atom(self) -> DiffPolynomial:
        tok = self.cur
        if tok.kind == "num":
            self.k += 1
            return DiffPolynomial.constant(int(tok.text), self.n)
        if tok.kind == "t":
            self.k += 1
            return DiffPolynomial.constant(T, self.n)
        if tok.kind == "(":
            self.take("(")
            p = self.poly()
            self.take(")")
            return p
        if tok.kind == "deriv":
            self.k += 1
            order = int(self.take("num").text)
            self.take("(")
            var, _ = self.variable()
            self.take(")")
            return DiffPolynomial.var(var, order, self.n)
        if tok.kind == "var":
            var, start = self.variable()
            order = 0
            while self.cur.kind == "prime":
                if self.n != 1:
                    raise self.error("prime notation needs a single-variable session",
                                     self.cur.start, self.cur.end)
                self.k += 1
                order += 1
            return DiffPolynomial.var(var, order, self.n)
        got = "end of input" if tok.kind == "end" else repr(tok.text)
        raise self.error(f"unexpected {got}", tok.start, max(tok.end, tok.start + 1))

    def variable(self) -> Tuple[int, int]:
        tok = self.take("var")
        if self.cur.kind == "num" and self.cur.start == tok.end:
            num = self.take("num")
            idx = int(num.text)
            if not 1 <= idx <= self.n:
                raise self.error(f"variable index {idx} outside 1..{self.n}",
                                 tok.start, num.end, IndexOutOfRange)
            return idx, tok.start
        if self.n != 1:
            raise self.error("bare 'y' needs a single-variable session", tok.start, tok.end,
                             IndexOutOfRange)
        return 1, tok.start


def _as_coefficient(p: DiffPolynomial) -> Optional[RationalFunction]:
    if not p:
        return rf(0)
    if set(p.terms) == {()}:
        return p.terms[()]
    return None


def parse_polynomial(text: str, n: int = 1) -> DiffPolynomial:
    """Parse ``text`` into a :class:`DiffPolynomial` in ``n`` indeterminates."""
    if n < 1:
        raise ValueError("need at least one indeterminate")
    return _PolyParser(text, n).parse()


def parse_coefficient(text: str) -> RationalFunction:
    p = parse_polynomial(text, 1)
    c = _as_coefficient(p)
    if c is None:
        raise ParseError("coefficient must not involve y", text, (0, len(text)))
    return c


# -- supports ---------------------------------------------------------------------

_PROG = re.compile(r"^(?:(\d+)\s*\+\s*)?(\d*)\s*N$")


def _split_top(text: str) -> List[Tuple[str, int]]:
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((text[start:k], start))
            start = k + 1
    parts.append((text[start:], start))
    return parts


def _parse_progression(body: str, text: str, offset: int) -> Tuple[int, int]:
    m = _PROG.match(body)
    if not m:
        raise ParseError(f"bad progression {body!r}", text, (offset, offset + len(body)))
    l = int(m.group(1) or 0)
    period = int(m.group(2)) if m.group(2) else 1
    if period == 0:
        raise ZeroPeriod("progression period must be >= 1", text,
                         (offset, offset + len(body)))
    return l, period


def parse_support_set(entry: str, text: Optional[str] = None, offset: int = 0) -> SupportSet:
    text = entry if text is None else text
    stripped = entry.strip()
    off = offset + entry.find(stripped[:1]) if stripped else offset
    if not stripped:
        raise ParseError("empty support entry", text, (offset, offset + max(len(entry), 1)))
    if stripped.startswith("{"):
        close = stripped.find("}")
        if close < 0:
            raise ParseError("unclosed '{'", text, (off, off + len(stripped)))
        inner = stripped[1:close].strip()
        try:
            pts = [int(x) for x in inner.split(",")] if inner else []
        except ValueError:
            raise ParseError("finite set entries must be natural numbers", text,
                             (off, off + close + 1)) from None
        if any(p < 0 for p in pts):
            raise ParseError("finite set entries must be natural numbers", text,
                             (off, off + close + 1))
        rest = stripped[close + 1:].strip()
        if not rest:
            return SupportSet.of(pts)
        if not rest.startswith("u"):
            roff = off + stripped.find(rest, close + 1)
            raise ParseError("expected 'u' before the progression", text,
                             (roff, roff + len(rest)))
        prog = rest[1:].strip()
        poff = off + stripped.find(prog, close + 1)
        l, period = _parse_progression(prog, text, poff)
        return SupportSet(tuple(pts), l, period)
    l, period = _parse_progression(stripped, text, off)
    return SupportSet.progression(l, period)


def parse_support(text: str, n: int = 1) -> SupportProfile:
    """Parse ``n`` comma-separated support entries into a profile."""
    parts = _split_top(text)
    if len(parts) != n:
        raise ArityMismatch(f"expected {n} support entries, found {len(parts)}", text,
                            (0, len(text)))
    return SupportProfile(tuple(parse_support_set(p, text, off) for p, off in parts))


# -- basis files ------------------------------------------------------------------

@dataclass
class SourceLine:
    text: str
    origin: str


def read_basis_lines(content: str, origin: str) -> List[SourceLine]:
    """Nonblank lines with ``#`` comments stripped, tagged ``origin:line``."""
    out = []
    for k, line in enumerate(content.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if body:
            out.append(SourceLine(body, f"{origin}:{k}"))
    return out
