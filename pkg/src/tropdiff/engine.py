"""Completion algorithms and certificates for tropical differential Groebner bases."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

from .coefficients import INF, ONE, RationalFunction, rf
from .diffpoly import DiffPolynomial, Monomial, format_monomial
from .kernels import mono_coprime, mono_key, mono_shift
from .reduction import (CAP_REACHED, DEFAULT_CAP, Reducer, ReductionTrace,
                        diff_reduce, tr_s_poly)
from .tropical import (DEFAULT_ORDER, FiniteSupport, OrderingSpec, SupportProfile,
                       gap, initial, leading, val_poly)

CERTIFIED_COMPLETE = "CertifiedComplete"
BOUNDED_ONLY = "BoundedOnly"
FAILED = "Failed"

CERTIFIED = "Certified"
REFUTED = "Refuted"
INCONCLUSIVE = "Inconclusive"


class PreconditionViolated(ValueError):
    def __init__(self, what: str, element: Optional[DiffPolynomial] = None):
        self.what = what
        self.element = element
        msg = what if element is None else f"{what}: {element}"
        super().__init__(msg)


class NotCertified(ValueError):
    pass


class ReductionCapExceeded(RuntimeError):
    """A tr-S reduction inside a completion loop did not finish within ``cap`` steps."""


class BasisLimitExceeded(RuntimeError):
    """A completion loop grew the basis past ``max_basis`` elements.

    Over progressions with a positive offset the periodicity of leading
    monomials only starts at order ``l``, and completion can keep producing
    elements of ever higher order.
    """


class NonLinearGenerator(ValueError):
    pass


class NonPolynomialCoefficient(ValueError):
    pass


# -- ancestry -----------------------------------------------------------------

class Combination:
    """``sum cofactor * D^shift(F[index])`` over the input list ``F``."""

    __slots__ = ("parts", "n")

    def __init__(self, parts: Dict[Tuple[int, int], DiffPolynomial], n: int):
        self.parts = {k: p for k, p in parts.items() if p}
        self.n = n

    @classmethod
    def unit(cls, index: int, n: int) -> "Combination":
        return cls({(index, 0): DiffPolynomial.constant(1, n)}, n)

    def __add__(self, other: "Combination") -> "Combination":
        out = dict(self.parts)
        for k, p in other.parts.items():
            out[k] = out[k] + p if k in out else p
        return Combination(out, self.n)

    def mul_term(self, c, m: Monomial) -> "Combination":
        return Combination({k: p.mul_term(c, m) for k, p in self.parts.items()}, self.n)

    def differentiate(self, k: int = 1) -> "Combination":
        cur = self
        for _ in range(k):
            out: Dict[Tuple[int, int], DiffPolynomial] = {}
            for (idx, sh), p in cur.parts.items():
                for key, val in (((idx, sh), p.differentiate()), ((idx, sh + 1), p)):
                    out[key] = out[key] + val if key in out else val
            cur = Combination(out, self.n)
        return cur

    def evaluate(self, inputs: Sequence[DiffPolynomial]) -> DiffPolynomial:
        out = DiffPolynomial.zero(self.n)
        for (idx, sh), p in sorted(self.parts.items()):
            out = out + p * inputs[idx].differentiate(sh)
        return out

    def to_json(self) -> list:
        return [{"input": idx, "shift": sh, "cofactor": str(p)}
                for (idx, sh), p in sorted(self.parts.items())]


@dataclass
class Provenance:
    """Where a basis element came from: an input, or a reduced tr-S pair.

    For pairs, ``element = scale * (tr-S(D^i a, D^j b) - sum quotients)``.
    """

    input_index: Optional[int] = None
    pair: Optional[Tuple[int, int, int, int]] = None
    trace: Optional[ReductionTrace] = None
    scale: RationalFunction = ONE

    def to_json(self) -> dict:
        if self.input_index is not None:
            return {"input": self.input_index}
        a, i, b, j = self.pair
        return {"pair": {"left": a, "left_shift": i, "right": b, "right_shift": j},
                "reduction_steps": self.trace.steps_used, "scale": str(self.scale)}


@dataclass
class GBResult:
    basis: List[DiffPolynomial]
    status: str
    pairs_processed: int = 0
    reductions_to_zero: int = 0
    parameters: Dict[str, int] = field(default_factory=dict)
    provenance: List[Provenance] = field(default_factory=list)
    inputs: List[DiffPolynomial] = field(default_factory=list)
    profile: Optional[SupportProfile] = None
    order: OrderingSpec = DEFAULT_ORDER

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED_COMPLETE

    def expansion(self, k: int) -> Combination:
        """Ancestry of basis element ``k`` as a combination of shifted inputs."""
        cache: Dict[int, Combination] = {}
        n = self.basis[k].n

        def expand(idx: int) -> Combination:
            if idx in cache:
                return cache[idx]
            pv = self.provenance[idx]
            if pv.input_index is not None:
                comb = Combination.unit(pv.input_index, n)
            else:
                a, i, b, j = pv.pair
                la = leading(self.profile, self.order, _shift_of(self.basis[a], i))
                lb = leading(self.profile, self.order, _shift_of(self.basis[b], j))
                from .kernels import mono_div, mono_lcm
                w = mono_lcm(la.lm, lb.lm)
                comb = (expand(a).differentiate(i).mul_term(lb.lc, mono_div(w, la.lm))
                        + expand(b).differentiate(j).mul_term(-la.lc, mono_div(w, lb.lm)))
                for q in pv.trace.quotients:
                    comb = comb + expand(q.generator).differentiate(q.shift).mul_term(
                        -q.coeff, q.monomial)
                comb = comb.mul_term(pv.scale, ())
            cache[idx] = comb
            return comb

        return expand(k)

    def to_json(self, ancestry: bool = False) -> dict:
        out = {
            "basis": [str(b) for b in self.basis],
            "status": self.status,
            "pairs_processed": self.pairs_processed,
            "reductions_to_zero": self.reductions_to_zero,
            "parameters": dict(self.parameters),
            "provenance": [p.to_json() for p in self.provenance],
        }
        if ancestry:
            out["ancestry"] = [self.expansion(k).to_json() for k in range(len(self.basis))]
        return out


def _shift_of(p: DiffPolynomial, k: int) -> DiffPolynomial:
    if p.is_linear() and p.has_constant_coefficients():
        return p.shift(k)
    return p.differentiate(k)


# -- helpers --------------------------------------------------------------------

def normalize(p: DiffPolynomial, profile: SupportProfile,
              order: OrderingSpec = DEFAULT_ORDER) -> Tuple[DiffPolynomial, RationalFunction]:
    """Scale a new basis element canonically; returns ``(scaled, factor)``.

    Constant coefficients become coprime integers with positive tropical
    leading coefficient; otherwise the tropical leading coefficient becomes 1.
    """
    lc = leading(profile, order, p).lc
    if p.has_constant_coefficients():
        vals = [c.constant_value() for _, c in p]
        den = reduce(math.lcm, (v.denominator for v in vals), 1)
        num = reduce(math.gcd, (abs(v.numerator * (den // v.denominator)) for v in vals), 0)
        factor = Fraction(den, num)
        if lc.constant_value() < 0:
            factor = -factor
        factor = rf(factor)
    else:
        factor = lc.inverse()
    return p.scale(factor), factor


def _check_linear_const(F: Sequence[DiffPolynomial]) -> None:
    for f in F:
        if not f:
            raise PreconditionViolated("zero polynomial", f)
        if not f.is_linear():
            raise PreconditionViolated("not linear", f)
        if not f.is_homogeneous():
            raise PreconditionViolated("not homogeneous", f)
        if not f.has_constant_coefficients():
            raise PreconditionViolated("coefficients are not constant", f)


def _check_progressions(profile: SupportProfile) -> None:
    if not profile.is_progressions():
        raise PreconditionViolated(f"supports must be pure progressions l+mN, got {profile}")


def pair_window(G: Sequence[DiffPolynomial], profile: SupportProfile) -> Dict[str, int]:
    """Shift window of the finite pair check for linear constant-coefficient G.

    ``M = max ord(h1) - min_order(h2) = (q-1)L + r``; shifts run over
    ``0 .. (q+1)L - 1``.  When a progression starts at ``l > 0`` the values
    are periodic only from order ``l`` on, so the window is widened by a
    multiple of ``L`` covering ``l + M``.
    """
    L = profile.period()
    M = max(h1.order() - h2.min_order() for h1 in G for h2 in G)
    M = max(int(M), 0)
    q = M // L + 1
    top = (q + 1) * L - 1
    lmax = max(s.l for s in profile.sets)
    extra = 0 if lmax == 0 else L * (-(-(lmax + M) // L))
    return {"L": L, "M": M, "q": q, "window": top + extra}


def _lead_table(red: Reducer, idx: int, window: int) -> List[Monomial]:
    return [red.lead(idx, s).lm for s in range(window + 1)]


def _pairs(red: Reducer, count: int, window: int, seen: set) -> List[Tuple[int, int, int, int]]:
    """New non-coprime shifted pairs ``(a, i, b, j)`` with ``(a, i) < (b, j)``."""
    tables = [_lead_table(red, k, window) for k in range(count)]
    out = []
    for a in range(count):
        for b in range(a, count):
            for i in range(window + 1):
                la = tables[a][i]
                for j in range(i + 1 if a == b else 0, window + 1):
                    key = (a, i, b, j)
                    if key in seen:
                        continue
                    seen.add(key)
                    if not mono_coprime(la, tables[b][j]):
                        out.append(key)
    return out


# -- Tr-DGB ---------------------------------------------------------------------

DEFAULT_MAX_BASIS = 64


def tr_dgb(F: Sequence[DiffPolynomial], profile: SupportProfile,
           order: OrderingSpec = DEFAULT_ORDER, cap: int = DEFAULT_CAP,
           max_basis: int = DEFAULT_MAX_BASIS) -> GBResult:
    """Complete tropical differential Groebner basis of a linear constant-coefficient system.

    Pairs are processed first-in first-out; a pair generation is queued
    whenever the basis (and with it the shift window) grows, and processed
    pairs are never re-queued.  Pairs whose leading monomials are coprime
    reduce to zero and are skipped.  Termination is guaranteed for
    progressions ``mN``; with offsets ``l > 0`` growth beyond ``max_basis``
    elements raises :class:`BasisLimitExceeded`.
    """
    F = list(F)
    if not F:
        raise PreconditionViolated("empty input")
    _check_linear_const(F)
    _check_progressions(profile)
    if any(f.n != profile.n for f in F):
        raise PreconditionViolated("profile length differs from the number of variables")

    basis = list(F)
    prov = [Provenance(input_index=k) for k in range(len(F))]
    red = Reducer(basis, profile, order)
    seen: set = set()
    params = pair_window(basis, profile)
    queue = deque(_pairs(red, len(basis), params["window"], seen))
    processed = zeros = 0
    while queue:
        a, i, b, j = queue.popleft()
        spoly = tr_s_poly(profile, order, red.shifted(a, i), red.shifted(b, j))
        processed += 1
        trace = diff_reduce(profile, order, red, spoly, cap)
        if trace.status == CAP_REACHED:
            raise ReductionCapExceeded(f"reduction cap {cap} reached on pair {(a, i, b, j)}")
        if not trace.remainder:
            zeros += 1
            continue
        if len(basis) >= max_basis:
            raise BasisLimitExceeded(f"basis grew past {max_basis} elements")
        new, factor = normalize(trace.remainder, profile, order)
        basis.append(new)
        red.add(new)
        prov.append(Provenance(pair=(a, i, b, j), trace=trace, scale=factor))
        params = pair_window(basis, profile)
        queue.extend(_pairs(red, len(basis), params["window"], seen))
    return GBResult(basis, CERTIFIED_COMPLETE, processed, zeros, params, prov, F,
                    profile, order)


# -- criterion ------------------------------------------------------------------

@dataclass
class GBCheck:
    status: str
    witness: Optional[Tuple[int, int, int, int]] = None
    remainder: Optional[DiffPolynomial] = None
    pairs_checked: int = 0

    def to_json(self) -> dict:
        out = {"status": self.status, "pairs_checked": self.pairs_checked}
        if self.witness is not None:
            a, i, b, j = self.witness
            out["witness"] = {"left": a, "left_shift": i, "right": b, "right_shift": j}
            out["remainder"] = str(self.remainder)
        return out


LINEAR_CONST_PROGRESSION = "LinearConstProgression"


def check_gb_bounded(G: Sequence[DiffPolynomial], profile: SupportProfile,
                     order: OrderingSpec = DEFAULT_ORDER,
                     mode: str | int = LINEAR_CONST_PROGRESSION,
                     cap: int = DEFAULT_CAP) -> GBCheck:
    """Finite Buchberger-style check over shifted tr-S pairs.

    ``mode == "LinearConstProgression"`` decides the criterion on the
    periodicity window.  An integer ``mode`` checks shifts ``0..mode`` and can
    only refute; it never certifies.
    """
    G = list(G)
    if not G or any(not g for g in G):
        raise PreconditionViolated("basis must be nonempty and nonzero")
    for g in G:
        if not g.is_homogeneous():
            raise PreconditionViolated("not homogeneous", g)
    if mode == LINEAR_CONST_PROGRESSION:
        _check_linear_const(G)
        _check_progressions(profile)
        window = pair_window(G, profile)["window"]
    elif isinstance(mode, int) and not isinstance(mode, bool) and mode >= 0:
        window = mode
    else:
        raise ValueError(f"unknown mode {mode!r}")
    red = Reducer(G, profile, order)
    checked = 0
    inconclusive = False
    for a, i, b, j in _pairs(red, len(G), window, set()):
        spoly = tr_s_poly(profile, order, red.shifted(a, i), red.shifted(b, j))
        trace = diff_reduce(profile, order, red, spoly, cap)
        checked += 1
        if trace.remainder and trace.status != CAP_REACHED:
            return GBCheck(REFUTED, (a, i, b, j), trace.remainder, checked)
        if trace.status == CAP_REACHED:
            inconclusive = True
    if mode == LINEAR_CONST_PROGRESSION and not inconclusive:
        return GBCheck(CERTIFIED, pairs_checked=checked)
    return GBCheck(INCONCLUSIVE, pairs_checked=checked)


# -- reduced basis -----------------------------------------------------------------

def _lm_redundant(red: Reducer, k: int, others: Sequence[int]) -> bool:
    lm = red.lead(k, 0).lm
    sub = Reducer([red.gens[o] for o in others], red.profile, red.order)
    return sub.find(lm) is not None


def reduce_gb(G: GBResult | Sequence[DiffPolynomial], profile: SupportProfile,
              order: OrderingSpec = DEFAULT_ORDER, cap: int = DEFAULT_CAP) -> List[DiffPolynomial]:
    """Drop elements whose lm is a multiple of a shifted lm of another element.

    Elements are visited by descending tropical leading monomial.  An element
    is dropped only if it also reduces to zero by the remaining ones, so the
    output still generates the ideal.  For a :class:`GBResult` an input
    generator is kept unless another survivor has a leading monomial in the
    same variable with order congruent modulo ``L``; that keeps the size
    within ``n*L``.  A plain list must pass the linear constant-coefficient
    certificate.
    """
    if isinstance(G, GBResult):
        if not G.certified:
            raise NotCertified(f"basis status is {G.status}")
        basis = list(G.basis)
        protected = {k for k, p in enumerate(G.provenance) if p.input_index is not None}
    else:
        basis = list(G)
        check = check_gb_bounded(basis, profile, order, cap=cap)
        if check.status != CERTIFIED:
            raise NotCertified(f"basis check returned {check.status}")
        protected = set()
    red = Reducer(basis, profile, order)
    alive = list(range(len(basis)))
    by_lm = sorted(alive, key=lambda k: mono_key(red.lead(k, 0).lm), reverse=True)
    L = profile.period() if protected else 1
    lm_class = {k: tuple((o % L, v, e) for o, v, e in red.lead(k, 0).lm) for k in alive}
    for k in by_lm:
        if k in protected and not any(lm_class[o] == lm_class[k] for o in alive if o != k):
            continue
        others = [o for o in alive if o != k]
        if not others or not _lm_redundant(red, k, others):
            continue
        trace = diff_reduce(profile, order, [basis[o] for o in others], basis[k], cap)
        if trace.status != CAP_REACHED and not trace.remainder:
            alive.remove(k)
    return [basis[k] for k in alive]


# -- membership -----------------------------------------------------------------

@dataclass
class MembershipVerdict:
    verdict: str
    trace: ReductionTrace

    MEMBER = "Member"
    NOT_MEMBER = "NotMember"
    INCONCLUSIVE = "Inconclusive"

    @property
    def remainder(self) -> DiffPolynomial:
        return self.trace.remainder

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "trace": self.trace.to_json()}


def membership(G: GBResult, f: DiffPolynomial, profile: SupportProfile | None = None,
               order: OrderingSpec = DEFAULT_ORDER, cap: int = DEFAULT_CAP) -> MembershipVerdict:
    if not G.certified:
        raise NotCertified(f"basis status is {G.status}")
    profile = profile or G.profile
    trace = diff_reduce(profile, order, G.basis, f, cap)
    if trace.status == CAP_REACHED:
        return MembershipVerdict(MembershipVerdict.INCONCLUSIVE, trace)
    if not trace.remainder:
        return MembershipVerdict(MembershipVerdict.MEMBER, trace)
    return MembershipVerdict(MembershipVerdict.NOT_MEMBER, trace)


def certify(G: Sequence[DiffPolynomial], profile: SupportProfile,
            order: OrderingSpec = DEFAULT_ORDER, cap: int = DEFAULT_CAP) -> GBResult:
    """Wrap a given basis in a GBResult after the linear constant-coefficient check."""
    check = check_gb_bounded(G, profile, order, cap=cap)
    if check.status != CERTIFIED:
        raise NotCertified(f"basis check returned {check.status}")
    G = list(G)
    return GBResult(G, CERTIFIED_COMPLETE, check.pairs_checked, check.pairs_checked,
                    pair_window(G, profile), [Provenance(input_index=k) for k in range(len(G))],
                    G, profile, order)


# -- bounds and the single-polynomial certificate ------------------------------

def lower_bound_d(G: Sequence[DiffPolynomial], profile: SupportProfile) -> int:
    """Number of differentiations per round of the partial Buchberger algorithm.

    ``max(n, max_l deg(g_l, t) + max ord(G) - min min_order(G) + 2*gap)``.
    """
    G = list(G)
    if not G:
        raise ValueError("empty basis")
    g_gap = gap(profile)
    for g in G:
        if not g:
            raise ValueError("zero polynomial")
        if any(not c.is_polynomial() for _, c in g):
            raise NonPolynomialCoefficient(str(g))
    top = max(int(g.order()) for g in G)
    low = min(g.min_order() for g in G)
    return max(profile.n, max(g.t_degree() for g in G) + top - low + 2 * g_gap)


def t_decompose(f: DiffPolynomial) -> List[DiffPolynomial]:
    """``f = f_0 + t f_1 + ... + t^d f_d`` with t-free ``f_k``."""
    parts: Dict[int, Dict[Monomial, Fraction]] = {}
    for m, c in f:
        if not c.is_polynomial():
            raise PreconditionViolated("coefficients must be polynomial in t", f)
        for k, a in enumerate(c.num.coeffs):
            if a:
                parts.setdefault(k, {})[m] = a
    d = max(parts, default=0)
    return [DiffPolynomial(parts.get(k, {}), f.n) for k in range(d + 1)]


def single_gb_certificate(f: DiffPolynomial, order: OrderingSpec = DEFAULT_ORDER) -> bool:
    """Sufficient test that ``{f}`` is a tropical differential GB of [f] for S = N^n.

    Holds when ``ord(f_0) > ord(f_i) - i`` for every nonzero ``f_i``, i >= 1.
    """
    if not f or not f.is_linear() or not f.is_homogeneous():
        raise PreconditionViolated("need a nonzero linear homogeneous polynomial", f)
    parts = t_decompose(f)
    if not parts[0]:
        return False
    top = parts[0].order()
    return all(top > p.order() - i for i, p in enumerate(parts) if i and p)


# -- partial Buchberger completion ---------------------------------------------

def buchberger_partial(F: Sequence[DiffPolynomial], profile: SupportProfile,
                       order: OrderingSpec = DEFAULT_ORDER, rounds: int = 4,
                       cap: int = DEFAULT_CAP) -> GBResult:
    """Round-based completion for general systems.

    Round ``k`` saturates the tr-S pairs among shifts ``0..k*d`` of the
    current basis, where ``d`` is :func:`lower_bound_d`; nonzero remainders
    join the basis.  A round with no new element stops the loop.  The result
    is ``CertifiedComplete`` only when the linear constant-coefficient check
    applies and passes, ``BoundedOnly`` otherwise, and ``Failed`` when
    ``rounds`` rounds all produced new elements.  Inhomogeneous input is
    accepted; its reductions are cap-limited and it is never certified.
    """
    F = list(F)
    if not F:
        raise PreconditionViolated("empty input")
    for f in F:
        if not f:
            raise PreconditionViolated("zero polynomial", f)
    d = lower_bound_d(F, profile)
    basis = list(F)
    prov = [Provenance(input_index=k) for k in range(len(F))]
    red = Reducer(basis, profile, order)
    seen: set = set()
    processed = zeros = 0
    linear_class = profile.is_progressions() and all(
        f.is_linear() and f.has_constant_coefficients() for f in F)
    for k in range(1, rounds + 1):
        window = k * d
        added = 0
        queue = deque(_pairs(red, len(basis), window, seen))
        while queue:
            a, i, b, j = queue.popleft()
            spoly = tr_s_poly(profile, order, red.shifted(a, i), red.shifted(b, j))
            processed += 1
            trace = diff_reduce(profile, order, red, spoly, cap)
            if not trace.remainder:
                zeros += 1
                continue
            if trace.status == CAP_REACHED:
                continue
            new, factor = normalize(trace.remainder, profile, order)
            basis.append(new)
            red.add(new)
            prov.append(Provenance(pair=(a, i, b, j), trace=trace, scale=factor))
            added += 1
            queue.extend(_pairs(red, len(basis), window, seen))
        params = {"d": d, "rounds": k, "window": window}
        if added == 0:
            status = BOUNDED_ONLY
            if linear_class:
                check = check_gb_bounded(basis, profile, order, cap=cap)
                if check.status == CERTIFIED:
                    status = CERTIFIED_COMPLETE
                    params.update(pair_window(basis, profile))
                    params["window"] = window
                elif check.status == REFUTED:
                    continue
            return GBResult(basis, status, processed, zeros, params, prov, F, profile, order)
    return GBResult(basis, FAILED, processed, zeros, {"d": d, "rounds": rounds},
                    prov, F, profile, order)


# -- monomial freeness ----------------------------------------------------------

@dataclass
class MonomialFreenessReport:
    found: bool
    witness: Optional[Monomial] = None
    certificate: List[Tuple[int, int, Fraction]] = field(default_factory=list)
    value: Optional[int] = None
    window: int = 0

    def combination(self, G: Sequence[DiffPolynomial], profile: SupportProfile) -> DiffPolynomial:
        """Replay the certificate: the stated combination of initials."""
        out = DiffPolynomial.zero(G[0].n)
        for gi, sh, c in self.certificate:
            out = out + initial(profile, G[gi].differentiate(sh)).scale(c)
        return out

    def to_json(self) -> dict:
        if not self.found:
            return {"result": "NoneInWindow", "window": self.window}
        return {
            "result": "MonomialFound",
            "witness": format_monomial(self.witness),
            "value": self.value,
            "certificate": [{"generator": g, "shift": s, "coeff": str(c)}
                            for g, s, c in self.certificate],
        }


def default_window(G: Sequence[DiffPolynomial], profile: SupportProfile) -> int:
    L = profile.period() if all(s.m for s in profile.sets) else 1
    return 2 * L + max(int(g.order()) for g in G)


def monomial_free_window(G: Sequence[DiffPolynomial], profile: SupportProfile,
                         order: OrderingSpec = DEFAULT_ORDER,
                         window: Optional[int] = None) -> MonomialFreenessReport:
    """Search combinations of initials of shifted linear generators for a monomial.

    Initials of ``D^i g`` (``0 <= i <= window``) are grouped by their value;
    each group is row-reduced over Q after dividing every entry by the t-power
    its column forces.  A row with a single nonzero entry is a monomial in the
    initial ideal.  A negative answer only covers the window.
    """
    G = list(G)
    for g in G:
        if not g or not g.is_linear():
            raise NonLinearGenerator(str(g))
    if window is None:
        window = default_window(G, profile)
    strata: Dict[int, List[Tuple[Tuple[int, int], Dict[Monomial, Fraction]]]] = {}
    for gi, g in enumerate(G):
        p = g
        for sh in range(window + 1):
            if sh:
                p = p.differentiate()
            try:
                ini = initial(profile, p)
            except ValueError:
                continue
            v = val_poly(profile, p)
            row = {m: c.bar()[0] for m, c in ini}
            strata.setdefault(v, []).append(((gi, sh), row))
    for v in sorted(strata):
        hit = _unit_row(strata[v])
        if hit is not None:
            witness, cert = hit
            return MonomialFreenessReport(True, witness, cert, v, window)
    return MonomialFreenessReport(False, window=window)


def _unit_row(rows):
    """Gauss-Jordan over Q tracking combinations; return a unit row if any."""
    cols = sorted({m for _, r in rows for m in r}, key=mono_key, reverse=True)
    work = []
    for k, (src, r) in enumerate(rows):
        work.append((dict(r), {k: Fraction(1)}))
    pivots = []
    rank = 0
    for col in cols:
        piv = next((idx for idx in range(rank, len(work)) if work[idx][0].get(col)), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        vec, comb = work[rank]
        inv = 1 / vec[col]
        vec = {m: c * inv for m, c in vec.items()}
        comb = {k: c * inv for k, c in comb.items()}
        work[rank] = (vec, comb)
        for idx in range(len(work)):
            if idx != rank and work[idx][0].get(col):
                ov, oc = work[idx]
                f = ov[col]
                nv = dict(ov)
                for m, c in vec.items():
                    x = nv.get(m, 0) - f * c
                    if x:
                        nv[m] = x
                    else:
                        nv.pop(m, None)
                nc = dict(oc)
                for kk, c in comb.items():
                    x = nc.get(kk, 0) - f * c
                    if x:
                        nc[kk] = x
                    else:
                        nc.pop(kk, None)
                work[idx] = (nv, nc)
        pivots.append(col)
        rank += 1
    for vec, comb in work[:rank]:
        if len(vec) == 1:
            (m,) = vec
            cert = [(rows[k][0][0], rows[k][0][1], c) for k, c in sorted(comb.items())]
            return m, cert
    return None
