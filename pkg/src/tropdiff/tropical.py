"""Support profiles, the valuations Val_S, tropical initials and leading data."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterable, Optional, Sequence, Tuple

from .coefficients import INF, RationalFunction
from .diffpoly import DiffPolynomial, Monomial, format_monomial
from .kernels import mono_key, mono_val, val_support


class ZeroPolynomial(ValueError):
    pass


class AllTermsInfinite(ValueError):
    """Every term has infinite value, so the initial is undefined."""


class FiniteSupport(ValueError):
    pass


@dataclass(frozen=True)
class SupportSet:
    """``finite`` union the progression ``l + m*N`` (``m == 0``: no progression).

    Construction normalizes: finite points that lie on the progression are
    absorbed, and the progression is extended downwards while possible, so
    equal sets have equal representations.
    """

    finite: Tuple[int, ...] = ()
    l: int = 0
    m: int = 0

    def __post_init__(self):
        pts = sorted(set(self.finite))
        if any(p < 0 for p in pts) or self.l < 0 or self.m < 0:
            raise ValueError("support sets live in N")
        l, m = self.l, self.m
        if m:
            s = set(pts)
            while l - m >= 0 and (l - m) in s:
                l -= m
            pts = [p for p in pts if not (p >= l and (p - l) % m == 0)]
        else:
            l = 0
        object.__setattr__(self, "finite", tuple(pts))
        object.__setattr__(self, "l", l)

    @classmethod
    def progression(cls, l: int, m: int) -> "SupportSet":
        if m < 1:
            raise ValueError("progression period must be >= 1")
        return cls((), l, m)

    @classmethod
    def of(cls, points: Iterable[int]) -> "SupportSet":
        return cls(tuple(points))

    @property
    def is_finite(self) -> bool:
        return self.m == 0

    @property
    def is_progression(self) -> bool:
        return self.m > 0 and not self.finite

    def __contains__(self, j: int) -> bool:
        if j in self.finite:
            return True
        return bool(self.m) and j >= self.l and (j - self.l) % self.m == 0

    def kernel(self) -> tuple:
        return (self.finite, self.l, self.m)

    def val(self, j: int):
        return val_support(self.kernel(), j)

    def elements_upto(self, bound: int) -> list[int]:
        out = set(p for p in self.finite if p <= bound)
        if self.m:
            out.update(range(self.l, bound + 1, self.m))
        return sorted(out)

    def gap(self) -> int:
        if self.is_finite:
            raise FiniteSupport("gap is undefined for a finite support set")
        top = max(self.finite + (self.l,)) + self.m
        pts = self.elements_upto(top)
        diffs = [b - a for a, b in zip(pts, pts[1:])]
        return max(diffs + [self.m])

    def __str__(self) -> str:
        prog = ""
        if self.m:
            step = "N" if self.m == 1 else f"{self.m}N"
            prog = step if self.l == 0 else f"{self.l}+{step}"
        if not self.finite:
            return prog or "{}"
        fin = "{" + ",".join(map(str, self.finite)) + "}"
        return f"{fin} u {prog}" if prog else fin


@dataclass(frozen=True)
class SupportProfile:
    sets: Tuple[SupportSet, ...]
    kernel: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        if not self.sets:
            raise ValueError("profile needs at least one support set")
        object.__setattr__(self, "kernel", tuple(s.kernel() for s in self.sets))

    @classmethod
    def uniform(cls, s: SupportSet, n: int = 1) -> "SupportProfile":
        return cls((s,) * n)

    @property
    def n(self) -> int:
        return len(self.sets)

    def __getitem__(self, i: int) -> SupportSet:
        return self.sets[i]

    def is_progressions(self) -> bool:
        return all(s.is_progression for s in self.sets)

    def period(self) -> int:
        """``lcm`` of the progression periods."""
        if not all(s.m for s in self.sets):
            raise FiniteSupport("finite support set has no period")
        return reduce(math.lcm, (s.m for s in self.sets), 1)

    def __str__(self) -> str:
        return ", ".join(str(s) for s in self.sets)


@dataclass(frozen=True)
class OrderingSpec:
    """Admissible monomial ordering; only the degree-then-lex order is shipped.

    Variables are ranked by (derivative order, index), so a higher derivative
    always outranks a lower one.
    """

    kind: str = "dorder-deglex"

    def __post_init__(self):
        if self.kind != "dorder-deglex":
            raise ValueError(f"unknown ordering {self.kind!r}")

    def key(self, m: Monomial):
        return mono_key(m)


DEFAULT_ORDER = OrderingSpec()


def cmp_monomials(order: OrderingSpec, a: Monomial, b: Monomial) -> int:
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


@dataclass(frozen=True)
class TropicalLead:
    lm: Monomial
    lc: RationalFunction
    val: int

    def __str__(self) -> str:
        return f"lm={format_monomial(self.lm)} lc={self.lc} val={self.val}"


# -- valuations -----------------------------------------------------------------

def val_S(S: SupportSet, j: int):
    return S.val(j)


def val_monomial(profile: SupportProfile, m: Monomial):
    return mono_val(m, profile.kernel)


def _term_values(profile: SupportProfile, f: DiffPolynomial):
    kern = profile.kernel
    if f.n != profile.n:
        raise ValueError(f"profile has {profile.n} entries, polynomial has n={f.n}")
    for m, c in f.terms.items():
        mv = mono_val(m, kern)
        yield m, c, (INF if mv == INF else c.val() + mv)


def val_poly(profile: SupportProfile, f: DiffPolynomial):
    if not f:
        raise ZeroPolynomial("Val of the zero polynomial")
    return min(v for _, _, v in _term_values(profile, f))


def initial(profile: SupportProfile, f: DiffPolynomial) -> DiffPolynomial:
    """Terms of minimal value, each coefficient replaced by its lowest t-term."""
    if not f:
        raise ZeroPolynomial("initial of the zero polynomial")
    vals = list(_term_values(profile, f))
    best = min(v for _, _, v in vals)
    if best == INF:
        raise AllTermsInfinite(str(f))
    return DiffPolynomial._wrap({m: c.bar_rf() for m, c, v in vals if v == best}, f.n)


@lru_cache(maxsize=1 << 16)
def _leading(profile: SupportProfile, f: DiffPolynomial) -> TropicalLead:
    best = INF
    lm = None
    lkey = None
    for m, c, v in _term_values(profile, f):
        if v < best:
            best, lm, lkey = v, m, mono_key(m)
        elif v == best and v != INF:
            k = mono_key(m)
            if k > lkey:
                lm, lkey = m, k
    if best == INF:
        raise AllTermsInfinite(str(f))
    return TropicalLead(lm, f.terms[lm], best)


def leading(profile: SupportProfile, order: OrderingSpec, f: DiffPolynomial) -> TropicalLead:
    """Tropical leading data; ``lc`` is the full Q(t) coefficient in ``f``."""
    if not f:
        raise ZeroPolynomial("leading data of the zero polynomial")
    return _leading(profile, f)


def gap(profile: SupportProfile) -> int:
    return max(s.gap() for s in profile.sets)


LT, EQ, GT = -1, 0, 1


def cmp_tropical(profile: SupportProfile, order: OrderingSpec,
                 f: DiffPolynomial, g: DiffPolynomial) -> int:
    """``LT`` iff f precedes g: smaller Val, or equal Val and larger lm.

    Zero is the maximum element.
    """
    if not f and not g:
        return EQ
    if not g:
        return LT
    if not f:
        return GT
    a, b = leading(profile, order, f), leading(profile, order, g)
    if a.val != b.val:
        return LT if a.val < b.val else GT
    ka, kb = order.key(a.lm), order.key(b.lm)
    if ka == kb:
        return EQ
    return LT if ka > kb else GT
