"""Differential polynomials in y_1..y_n and their derivatives over Q(t)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .coefficients import ONE, ZERO, RationalFunction, format_rf, rf
from .kernels import (mono_degree, mono_deriv, mono_key, mono_mul, mono_shift)

NEG_INF = float("-inf")
"""Order of a polynomial in which a variable does not occur."""

Monomial = Tuple[Tuple[int, int, int], ...]
Coeff = Union[RationalFunction, int, Fraction]


class ContextMismatch(ValueError):
    """Operands live in rings with different numbers of indeterminates."""


class NoVariables(ValueError):
    pass


def monomial(*factors: Tuple[int, int] | Tuple[int, int, int]) -> Monomial:
    """Build a monomial from ``(var, order)`` or ``(var, order, exp)`` factors."""
    exps: Dict[Tuple[int, int], int] = {}
    for f in factors:
        v, o = f[0], f[1]
        e = f[2] if len(f) > 2 else 1
        if v < 1 or o < 0 or e < 0:
            raise ValueError(f"bad factor {f!r}")
        if e:
            exps[(o, v)] = exps.get((o, v), 0) + e
    return tuple((o, v, e) for (o, v), e in sorted(exps.items()))


def format_derivvar(var: int, order: int) -> str:
    return f"y{var}" if order == 0 else f"D{order}(y{var})"


def format_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for o, v, e in m:
        s = format_derivvar(v, o)
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


@dataclass(frozen=True)
class PolyClass:
    is_homogeneous: bool
    is_linear: bool
    has_constant_coefficients: bool


class DiffPolynomial:
    """Finite sum of ``coeff * monomial`` with nonzero coefficients in Q(t).

    ``n`` is the number of differential indeterminates of the ambient ring.
    Instances are immutable; arithmetic returns new objects.
    """

    __slots__ = ("terms", "n", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None, n: int = 1):
        if n < 1:
            raise ValueError("need at least one indeterminate")
        clean: Dict[Monomial, RationalFunction] = {}
        for m, c in (terms or {}).items():
            c = rf(c)
            for _, v, _ in m:
                if not 1 <= v <= n:
                    raise IndexError(f"variable y{v} outside 1..{n}")
            if c:
                clean[m] = c
        self.terms = clean
        self.n = n
        self._hash = None

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, RationalFunction], n: int) -> "DiffPolynomial":
        p = object.__new__(cls)
        p.terms, p.n, p._hash = terms, n, None
        return p

    @classmethod
    def var(cls, i: int = 1, order: int = 0, n: int = 1) -> "DiffPolynomial":
        return cls({((order, i, 1),): ONE}, n)

    @classmethod
    def constant(cls, c: Coeff, n: int = 1) -> "DiffPolynomial":
        return cls({(): c}, n)

    @classmethod
    def zero(cls, n: int = 1) -> "DiffPolynomial":
        return cls._wrap({}, n)

    @classmethod
    def linear(cls, coeffs: Mapping[Tuple[int, int], Coeff], n: int = 1) -> "DiffPolynomial":
        """``{(var, order): coeff}`` -> sum of coeff * D^order(y_var)."""
        return cls({((o, v, 1),): c for (v, o), c in coeffs.items()}, n)

    # -- basic protocol ----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, RationalFunction]]:
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"DiffPolynomial({str(self)!r}, n={self.n})"

    def __str__(self) -> str:
        return format_poly(self)

    def coefficient(self, m: Monomial) -> RationalFunction:
        return self.terms.get(m, ZERO)

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, key=mono_key, reverse=True)

    def _check(self, other: "DiffPolynomial") -> None:
        if self.n != other.n:
            raise ContextMismatch(f"n={self.n} vs n={other.n}")

    # -- ring operations -------------------------------------------------------
    def __neg__(self) -> "DiffPolynomial":
        return DiffPolynomial._wrap({m: -c for m, c in self.terms.items()}, self.n)

    def __add__(self, other) -> "DiffPolynomial":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return DiffPolynomial._wrap(out, self.n)

    __radd__ = __add__

    def __sub__(self, other) -> "DiffPolynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "DiffPolynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "DiffPolynomial":
        if isinstance(other, DiffPolynomial):
            self._check(other)
            acc: Dict[Monomial, RationalFunction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    _acc(acc, mono_mul(m1, m2), c1 * c2)
            return DiffPolynomial._wrap(acc, self.n)
        return self.scale(other)

    def __rmul__(self, other) -> "DiffPolynomial":
        return self.scale(other)

    def scale(self, c: Coeff) -> "DiffPolynomial":
        c = rf(c)
        if not c:
            return DiffPolynomial.zero(self.n)
        if c == ONE:
            return self
        return DiffPolynomial._wrap({m: x * c for m, x in self.terms.items()}, self.n)

    def mul_term(self, c: Coeff, m: Monomial) -> "DiffPolynomial":
        c = rf(c)
        if not c:
            return DiffPolynomial.zero(self.n)
        return DiffPolynomial._wrap({mono_mul(m, k): x * c for k, x in self.terms.items()},
                                    self.n)

    def sub_mul_term(self, c: Coeff, m: Monomial, other: "DiffPolynomial") -> "DiffPolynomial":
        """``self - c*m*other`` in one pass."""
        self._check(other)
        c = -rf(c)
        out = dict(self.terms)
        for k, x in other.terms.items():
            _acc(out, mono_mul(m, k), x * c)
        return DiffPolynomial._wrap(out, self.n)

    def _lift(self, other) -> "DiffPolynomial":
        if isinstance(other, DiffPolynomial):
            self._check(other)
            return other
        return DiffPolynomial.constant(other, self.n)

    # -- derivation --------------------------------------------------------------
    def differentiate(self, k: int = 1) -> "DiffPolynomial":
        """Apply the derivation ``k`` times."""
        p = self
        for _ in range(k):
            p = p._delta()
        return p

    def _delta(self) -> "DiffPolynomial":
        acc: Dict[Monomial, RationalFunction] = {}
        if self.has_constant_coefficients():
            if self.is_linear():
                # shift every order by one
                return DiffPolynomial._wrap(
                    {mono_shift(m, 1): c for m, c in self.terms.items()}, self.n)
            for m, c in self.terms.items():
                for e, dm in mono_deriv(m):
                    _acc(acc, dm, c * e)
            return DiffPolynomial._wrap(acc, self.n)
        for m, c in self.terms.items():
            dc = c.deriv()
            if dc:
                _acc(acc, m, dc)
            for e, dm in mono_deriv(m):
                _acc(acc, dm, c * e)
        return DiffPolynomial._wrap(acc, self.n)

    def shift(self, k: int) -> "DiffPolynomial":
        """Order shift by ``k``; equals ``differentiate(k)`` for linear constant-coefficient input."""
        return DiffPolynomial._wrap({mono_shift(m, k): c for m, c in self.terms.items()},
                                    self.n)

    # -- statistics ----------------------------------------------------------------
    def order(self, i: int | None = None):
        """``ord(f, y_i)``, or ``ord(f)`` when ``i`` is None; ``NEG_INF`` if absent."""
        best = NEG_INF
        for m in self.terms:
            for o, v, _ in m:
                if (i is None or v == i) and o > best:
                    best = o
        return best

    def min_order(self) -> int:
        best = None
        for m in self.terms:
            for o, _, _ in m:
                if best is None or o < best:
                    best = o
        if best is None:
            raise NoVariables("polynomial involves no derivative variable")
        return best

    def degrees(self) -> set[int]:
        return {mono_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_linear(self) -> bool:
        return all(mono_degree(m) == 1 for m in self.terms)

    def has_constant_coefficients(self) -> bool:
        return all(c.den.degree == 0 and c.num.degree <= 0 for c in self.terms.values())

    def classify(self) -> PolyClass:
        return PolyClass(self.is_homogeneous(), self.is_linear(),
                         self.has_constant_coefficients())

    def t_degree(self) -> int:
        return max((c.num.degree for c in self.terms.values()), default=0)


def _acc(acc: Dict[Monomial, RationalFunction], m: Monomial, c: RationalFunction) -> None:
    s = acc.get(m)
    if s is None:
        if c:
            acc[m] = c
    else:
        s = s + c
        if s:
            acc[m] = s
        else:
            del acc[m]


def dp_differentiate(f: DiffPolynomial, k: int = 1) -> DiffPolynomial:
    return f.differentiate(k)


def dp_order(f: DiffPolynomial, i: int):
    return f.order(i)


def dp_ord(f: DiffPolynomial):
    return f.order()


def dp_min_order(f: DiffPolynomial) -> int:
    return f.min_order()


def dp_classify(f: DiffPolynomial) -> PolyClass:
    return f.classify()


def linear_combination(pairs: Iterable[Tuple[Coeff, DiffPolynomial]], n: int) -> DiffPolynomial:
    out = DiffPolynomial.zero(n)
    for c, p in pairs:
        out = out + p.scale(c)
    return out


def format_poly(f: DiffPolynomial) -> str:
    """Canonical text form, terms by descending degree-lex monomial."""
    if not f.terms:
        return "0"
    pieces = []
    for m in f.monomials():
        c = f.terms[m]
        neg = False
        if c.is_constant():
            v = c.constant_value()
            neg = v < 0
            mag = abs(v)
            if not m:
                body = str(mag)
            elif mag == 1:
                body = format_monomial(m)
            else:
                body = f"{mag}*{format_monomial(m)}"
        else:
            cs = format_rf(c)
            if _top_level_space(cs):
                cs = f"({cs})"
            elif cs.startswith("-"):
                neg, cs = True, cs[1:]
            body = cs if not m else f"{cs}*{format_monomial(m)}"
        pieces.append((neg, body))
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _top_level_space(s: str) -> bool:
    depth = 0
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == " " and depth == 0:
            return True
    return False
