"""Exact arithmetic in Q(t) with the t-adic valuation.

Elements of Frac(C[[t]]) are modelled by rational functions in ``t`` with
rational coefficients.  Every value is kept in canonical form: the numerator
and denominator are coprime and the denominator is monic, so structural
equality coincides with field equality.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Tuple, Union

INF = math.inf
"""Valuation of zero (and of empty supports)."""

Scalar = Union[int, Fraction]


class DivisionByZero(ZeroDivisionError):
    pass


class ZeroElement(ValueError):
    pass


def _trim(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class TPolynomial:
    """Dense univariate polynomial in ``t`` over Q, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs: Tuple[Fraction, ...] = _trim([Fraction(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple) -> "TPolynomial":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def monomial(cls, c: Scalar, k: int) -> "TPolynomial":
        if c == 0:
            return ZERO_POLY
        return cls._raw((Fraction(0),) * k + (Fraction(c),))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, TPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"TPolynomial({[str(c) for c in self.coeffs]})"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def low_degree(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ZeroElement("zero polynomial has no lowest term")

    def low_coeff(self) -> Fraction:
        return self.coeffs[self.low_degree()]

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __neg__(self) -> "TPolynomial":
        return TPolynomial._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other: "TPolynomial") -> "TPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return TPolynomial._raw(_trim(out))

    def __sub__(self, other: "TPolynomial") -> "TPolynomial":
        return self + (-other)

    def __mul__(self, other: "TPolynomial") -> "TPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return TPolynomial._raw(_trim(out))

    def scale(self, c: Scalar) -> "TPolynomial":
        if c == 0:
            return ZERO_POLY
        return TPolynomial._raw(tuple(x * c for x in self.coeffs))

    def divmod(self, other: "TPolynomial") -> tuple["TPolynomial", "TPolynomial"]:
        if not other:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return ZERO_POLY, self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lead
            if c:
                quot[k] = c
                for i, y in enumerate(other.coeffs):
                    rem[k + i] -= c * y
        return TPolynomial._raw(_trim(quot)), TPolynomial._raw(_trim(rem[:db]))

    def monic(self) -> "TPolynomial":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return TPolynomial._raw(tuple(c / lead for c in self.coeffs))

    def deriv(self) -> "TPolynomial":
        return TPolynomial._raw(_trim([c * k for k, c in enumerate(self.coeffs)][1:]))

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


ZERO_POLY = TPolynomial._raw(())
ONE_POLY = TPolynomial._raw((Fraction(1),))


def poly_gcd(a: TPolynomial, b: TPolynomial) -> TPolynomial:
    """Monic gcd over Q (Euclid)."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


class RationalFunction:
    """Element of Q(t) in canonical form: gcd(num, den) = 1 and den monic.

    Constants take a fast path: ``den`` is 1 and ``num`` has degree <= 0.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Union[TPolynomial, Scalar, Sequence[Scalar]] = 0,
                 den: Union[TPolynomial, Scalar, Sequence[Scalar]] = 1):
        num = _as_poly(num)
        den = _as_poly(den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            self.num, self.den = ZERO_POLY, ONE_POLY
        elif den.is_constant():
            self.num, self.den = num.scale(1 / den.coeffs[0]), ONE_POLY
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lead = den.lead()
            self.num, self.den = num.scale(1 / lead), den.monic()
        self._hash = None

    @classmethod
    def _canon(cls, num: TPolynomial, den: TPolynomial) -> "RationalFunction":
        if den is ONE_POLY or den.coeffs == ONE_POLY.coeffs:
            r = object.__new__(cls)
            r.num, r.den, r._hash = num, ONE_POLY, None
            return r
        return cls(num, den)

    @classmethod
    def constant(cls, c: Scalar) -> "RationalFunction":
        c = Fraction(c)
        r = object.__new__(cls)
        r.num = TPolynomial._raw((c,)) if c else ZERO_POLY
        r.den, r._hash = ONE_POLY, None
        return r

    @classmethod
    def t_power(cls, k: int, c: Scalar = 1) -> "RationalFunction":
        if k >= 0:
            return cls._canon(TPolynomial.monomial(c, k), ONE_POLY)
        return cls(TPolynomial.monomial(c, 0), TPolynomial.monomial(1, -k))

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.coeffs[0] if self.num else Fraction(0)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num.coeffs, self.den.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalFunction({format_rf(self)!r})"

    def __str__(self) -> str:
        return format_rf(self)

    # -- field operations --------------------------------------------------
    def __neg__(self) -> "RationalFunction":
        if self.den is ONE_POLY and len(self.num.coeffs) == 1:
            return _const(-self.num.coeffs[0])
        return RationalFunction._canon(-self.num, self.den)

    def __add__(self, other) -> "RationalFunction":
        other = _coerce(other)
        if self.den is ONE_POLY and other.den is ONE_POLY:
            a, b = self.num.coeffs, other.num.coeffs
            if len(a) == 1 and len(b) == 1:
                return _const(a[0] + b[0])
            return RationalFunction._canon(self.num + other.num, ONE_POLY)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        other = _coerce(other)
        if self.den is ONE_POLY and other.den is ONE_POLY:
            a, b = self.num.coeffs, other.num.coeffs
            if len(a) == 1 and len(b) == 1:
                return _const(a[0] - b[0])
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        return _coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = _coerce(other)
        if not self.num or not other.num:
            return ZERO
        if self.den is ONE_POLY and other.den is ONE_POLY:
            a, b = self.num.coeffs, other.num.coeffs
            if len(a) == 1 and len(b) == 1:
                return _const(a[0] * b[0])
            if self.num.degree == 0 or other.num.degree == 0:
                return RationalFunction._canon(self.num * other.num, ONE_POLY)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return _coerce(other) * self.inverse()

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise DivisionByZero("inverse of zero in Q(t)")
        if self.num.degree == 0 and self.den is ONE_POLY:
            return RationalFunction.constant(1 / self.num.coeffs[0])
        return RationalFunction(self.den, self.num)

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def deriv(self) -> "RationalFunction":
        """d/dt by the quotient rule."""
        if self.den is ONE_POLY or self.den.degree == 0:
            return RationalFunction._canon(self.num.deriv(), ONE_POLY)
        num = self.num.deriv() * self.den - self.num * self.den.deriv()
        return RationalFunction(num, self.den * self.den)

    def __call__(self, x: Scalar) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise DivisionByZero(f"pole at t={x}")
        return self.num(x) / d

    # -- valuation ----------------------------------------------------------
    def val(self):
        """t-adic valuation; ``INF`` for zero."""
        if not self.num:
            return INF
        if self.den is ONE_POLY:
            return self.num.low_degree()
        return self.num.low_degree() - self.den.low_degree()

    def bar(self) -> tuple[Fraction, int]:
        """Lowest Laurent term as ``(coeff, val)``."""
        if not self.num:
            raise ZeroElement("the zero element has no lowest term")
        if self.den is ONE_POLY:
            k = self.num.low_degree()
            return self.num.coeffs[k], k
        a, b = self.num.low_degree(), self.den.low_degree()
        return self.num.coeffs[a] / self.den.coeffs[b], a - b

    def bar_rf(self) -> "RationalFunction":
        c, s = self.bar()
        return RationalFunction.t_power(s, c)

    def t_degree(self) -> int:
        """Degree of the numerator (meaningful for polynomial elements)."""
        return self.num.degree


def _const(c: Fraction) -> RationalFunction:
    """Constant element from a Fraction, skipping canonicalization."""
    r = object.__new__(RationalFunction)
    r.num = TPolynomial._raw((c,)) if c else ZERO_POLY
    r.den, r._hash = ONE_POLY, None
    return r


def _as_poly(x) -> TPolynomial:
    if isinstance(x, TPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return TPolynomial._raw((Fraction(x),)) if x else ZERO_POLY
    return TPolynomial(x)


def _coerce(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")


ZERO = RationalFunction.constant(0)
ONE = RationalFunction.constant(1)
T = RationalFunction.t_power(1)


def rf(x) -> RationalFunction:
    """Coerce ints, Fractions and rational functions."""
    return _coerce(x)


def rf_val(a: RationalFunction):
    return a.val()


def rf_bar(a: RationalFunction) -> tuple[Fraction, int]:
    return a.bar()


def rf_deriv(a: RationalFunction) -> RationalFunction:
    return a.deriv()


# -- display ----------------------------------------------------------------

def _integerize(*polys: TPolynomial) -> tuple[list[int], ...]:
    """Scale polynomials by one common positive rational to coprime integers."""
    dens = [c.denominator for p in polys for c in p.coeffs]
    m = reduce(math.lcm, dens, 1)
    ints = [[int(c * m) for c in p.coeffs] for p in polys]
    g = reduce(math.gcd, (abs(c) for p in ints for c in p), 0) or 1
    return tuple([c // g for c in p] for p in ints)


def _format_int_poly(coeffs: list[int]) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "t" if k == 1 else f"t^{k}"
            body = var if mag == 1 else f"{mag}*{var}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _nterms(coeffs: list[int]) -> int:
    return sum(1 for c in coeffs if c)


def format_rf(a: RationalFunction) -> str:
    """Integer-normalized display, e.g. ``(t^2 - 1)/(t + 2)``, ``3/2``, ``t``."""
    if not a.num:
        return "0"
    num, den = _integerize(a.num, a.den)
    if den[-1] < 0:
        num, den = [-c for c in num], [-c for c in den]
    ns = _format_int_poly(num)
    if len(den) == 1 and den[0] == 1:
        return ns
    ds = _format_int_poly(den)
    if _nterms(num) > 1:
        ns = f"({ns})"
    if _nterms(den) > 1 or (len(den) > 1 and den[-1] != 1):
        ds = f"({ds})"
    return f"{ns}/{ds}"
