"""Tropical S-polynomials and capped differential reduction."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .coefficients import INF, RationalFunction
from .diffpoly import DiffPolynomial, Monomial, format_monomial
from .kernels import mono_div, mono_divides, mono_key, mono_lcm, mono_val
from .tropical import (DEFAULT_ORDER, AllTermsInfinite, OrderingSpec, SupportProfile, TropicalLead,
                       leading)

DEFAULT_CAP = int(os.environ.get("TROPDIFF_CAP", "10000"))

REDUCED = "Reduced"
CAP_REACHED = "CapReached"


class NotDivisible(ValueError):
    pass


def divides(a: Monomial, b: Monomial) -> bool:
    return mono_divides(a, b)


def quotient_term(b: Monomial, a: Monomial) -> Monomial:
    q = mono_div(b, a)
    if q is None:
        raise NotDivisible(f"{format_monomial(a)} does not divide {format_monomial(b)}")
    return q


def tr_s_poly(profile: SupportProfile, order: OrderingSpec,
              f: DiffPolynomial, g: DiffPolynomial) -> DiffPolynomial:
    """lc(g)*(lcm/lm f)*f - lc(f)*(lcm/lm g)*g on tropical leading data."""
    a = leading(profile, order, f)
    b = leading(profile, order, g)
    w = mono_lcm(a.lm, b.lm)
    return (f.mul_term(b.lc, mono_div(w, a.lm))
            - g.mul_term(a.lc, mono_div(w, b.lm)))


def _max_order(m: Monomial) -> int:
    return max((o for o, _, _ in m), default=-1)


class Reducer:
    """A generator list with cached derivatives and tropical leading data.

    Reducer lookups pick the smallest generator index first, then the
    smallest shift.  Growing the list with :meth:`add` keeps earlier answers
    valid, since new generators sit at the end.  ``max_shift`` limits the
    derivatives searched; ``max_shift=0`` gives plain (non-differential)
    reduction.
    """

    def __init__(self, generators: Sequence[DiffPolynomial], profile: SupportProfile,
                 order: OrderingSpec = DEFAULT_ORDER, max_shift: Optional[int] = None):
        self.profile = profile
        self.order = order
        self.max_shift = max_shift
        self.gens: List[DiffPolynomial] = []
        self._shifts: List[List[DiffPolynomial]] = []
        self._leads: List[List[TropicalLead]] = []
        self._info: List[tuple] = []
        self._memo: Dict[Monomial, Optional[Tuple[int, int]]] = {}
        for g in generators:
            self.add(g)

    def add(self, g: DiffPolynomial) -> int:
        if not g:
            raise ValueError("zero generator")
        self.gens.append(g)
        self._shifts.append([g])
        self._leads.append([])
        linear = g.is_linear()
        const = g.has_constant_coefficients()
        try:
            low = g.min_order()
        except ValueError:
            low = 0
        if const:
            slack = 0
        elif all(c.is_polynomial() for _, c in g):
            slack = g.t_degree()
        else:
            slack = max(c.num.degree + c.den.degree for _, c in g) + 1
        deg = max(g.degrees())
        self._info.append((linear and const, low, slack, max(deg, 1)))
        self._memo = {m: r for m, r in self._memo.items() if r is not None}
        return len(self.gens) - 1

    def __len__(self) -> int:
        return len(self.gens)

    def shifted(self, i: int, j: int) -> DiffPolynomial:
        sh = self._shifts[i]
        if j >= len(sh):
            shift_only = self._info[i][0]
            g = self.gens[i]
            while len(sh) <= j:
                k = len(sh)
                sh.append(g.shift(k) if shift_only else sh[-1].differentiate())
        return sh[j]

    def lead(self, i: int, j: int) -> Optional[TropicalLead]:
        ld = self._leads[i]
        while len(ld) <= j:
            try:
                ld.append(leading(self.profile, self.order, self.shifted(i, len(ld))))
            except AllTermsInfinite:
                ld.append(None)
        return ld[j]

    def shift_bound(self, i: int, m: Monomial) -> int:
        """Largest shift worth trying for monomial ``m`` against generator ``i``."""
        _, low, slack, deg = self._info[i]
        bound = deg * (_max_order(m) - low) + slack
        return bound if self.max_shift is None else min(bound, self.max_shift)

    def find(self, m: Monomial) -> Optional[Tuple[int, int]]:
        if m in self._memo:
            return self._memo[m]
        hit = None
        for i in range(len(self.gens)):
            for j in range(0, max(self.shift_bound(i, m), 0) + 1):
                ld = self.lead(i, j)
                if ld is not None and mono_divides(ld.lm, m):
                    hit = (i, j)
                    break
            if hit:
                break
        self._memo[m] = hit
        return hit

    def first_reducible(self, r: DiffPolynomial):
        """Most significant reducible term of ``r`` (smallest value, then largest lm)."""
        kern = self.profile.kernel
        scored = []
        for m, c in r.terms.items():
            mv = mono_val(m, kern)
            v = INF if mv == INF else c.val() + mv
            scored.append((v, m, c))
        scored.sort(key=lambda x: mono_key(x[1]), reverse=True)
        scored.sort(key=lambda x: x[0])
        for v, m, c in scored:
            hit = self.find(m)
            if hit is not None:
                return m, c, hit
        return None

    def is_reduced(self, r: DiffPolynomial) -> bool:
        return all(self.find(m) is None for m in r.terms)


@dataclass
class QuotientTerm:
    generator: int
    shift: int
    coeff: RationalFunction
    monomial: Monomial


@dataclass
class ReductionTrace:
    quotients: List[QuotientTerm]
    remainder: DiffPolynomial
    steps_used: int
    status: str
    remainders: List[DiffPolynomial] = field(default_factory=list, repr=False)

    @property
    def reduced(self) -> bool:
        return self.status == REDUCED

    def reassemble(self, generators: Sequence[DiffPolynomial]) -> DiffPolynomial:
        """Sum of cofactor * D^shift(g) plus the remainder."""
        out = self.remainder
        for q in self.quotients:
            out = out + generators[q.generator].differentiate(q.shift).mul_term(
                q.coeff, q.monomial)
        return out

    def to_json(self) -> dict:
        return {
            "quotients": [
                {"generator": q.generator, "shift": q.shift, "coeff": str(q.coeff),
                 "monomial": format_monomial(q.monomial)}
                for q in self.quotients
            ],
            "remainder": str(self.remainder),
            "steps": self.steps_used,
            "status": self.status,
        }


def diff_reduce(profile: SupportProfile, order: OrderingSpec,
                G: Sequence[DiffPolynomial] | Reducer, f: DiffPolynomial,
                cap: int = DEFAULT_CAP, max_shift: Optional[int] = None) -> ReductionTrace:
    """Reduce ``f`` by all derivatives of ``G`` for at most ``cap`` steps.

    Each step cancels the most significant reducible term ``c*M`` of the
    current remainder with ``(c/lc) * (M/lm) * D^j g_i``.  Steps are counted
    exactly; if a reducible term remains after ``cap`` steps the status is
    ``CapReached``.  ``max_shift`` bounds the derivatives of ``G`` used, as
    in :class:`Reducer`.
    """
    red = G if isinstance(G, Reducer) else Reducer(G, profile, order, max_shift)
    r = f
    quotients: List[QuotientTerm] = []
    history = []
    steps = 0
    while True:
        hit = red.first_reducible(r) if r else None
        if hit is None:
            return ReductionTrace(quotients, r, steps, REDUCED, history)
        if steps >= cap:
            return ReductionTrace(quotients, r, steps, CAP_REACHED, history)
        m, c, (i, j) = hit
        ld = red.lead(i, j)
        coeff = c / ld.lc
        mono = mono_div(m, ld.lm)
        r = r.sub_mul_term(coeff, mono, red.shifted(i, j))
        quotients.append(QuotientTerm(i, j, coeff, mono))
        history.append(r)
        steps += 1


def find_reducer(profile: SupportProfile, order: OrderingSpec,
                 G: Sequence[DiffPolynomial], m: Monomial) -> Optional[Tuple[int, int]]:
    return Reducer(G, profile, order).find(m)


def is_reduced(profile: SupportProfile, order: OrderingSpec,
               f: DiffPolynomial, g: DiffPolynomial) -> bool:
    """No monomial of ``f`` is a multiple of lm(g)."""
    lm = leading(profile, order, g).lm
    return not any(mono_divides(lm, m) for m in f.terms)


def is_diff_reduced(profile: SupportProfile, order: OrderingSpec,
                    f: DiffPolynomial, g: DiffPolynomial) -> bool:
    """No monomial of ``f`` is a multiple of lm(D^j g) for any searched shift j."""
    return Reducer([g], profile, order).is_reduced(f)
