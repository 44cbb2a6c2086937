import json
import random
from fractions import Fraction

import pytest

from helpers import (B1, B2, B3, F42, P, S, random_linear_system, random_member,
                     random_progressions)
from tropdiff.diffpoly import DiffPolynomial, monomial
from tropdiff.engine import (BOUNDED_ONLY, CERTIFIED, CERTIFIED_COMPLETE, FAILED, INCONCLUSIVE,
                             REFUTED, BasisLimitExceeded, GBResult, MembershipVerdict,
                             NonLinearGenerator, NonPolynomialCoefficient, NotCertified,
                             PreconditionViolated, ReductionCapExceeded, buchberger_partial,
                             certify, check_gb_bounded,
                             default_window, lower_bound_d, membership, monomial_free_window,
                             normalize, pair_window, reduce_gb, single_gb_certificate, t_decompose,
                             tr_dgb)
from tropdiff.reduction import diff_reduce
from tropdiff.tropical import DEFAULT_ORDER, FiniteSupport, initial, leading

ORD = DEFAULT_ORDER
S4 = S("4N")


@pytest.fixture(scope="module")
def gb42():
    return tr_dgb([P(F42)], S4)


# -- Tr-DGB -------------------------------------------------------------------------------

def test_running_example_basis(gb42):
    assert gb42.status == CERTIFIED_COMPLETE
    assert gb42.basis == [P(F42), P(B1), P(B2), P(B3)]
    assert gb42.parameters == {"L": 4, "M": 12, "q": 4, "window": 19}


def test_running_example_provenance(gb42):
    assert gb42.provenance[0].input_index == 0
    # b1 comes from the pair (f, f''), the first one with a nonzero remainder
    assert gb42.provenance[1].pair == (0, 0, 0, 2)


def test_single_variable_over_odd_numbers():
    res = tr_dgb([P("y")], S("1+2N"))
    assert res.basis == [P("y")]
    assert res.pairs_processed == 0
    assert check_gb_bounded(res.basis, S("1+2N")).status == CERTIFIED


def test_first_order_operator_is_its_own_basis():
    res = tr_dgb([P("y' + y")], S("N"))
    assert res.basis == [P("y' + y")]
    assert check_gb_bounded(res.basis, S("N")).status == CERTIFIED


@pytest.mark.parametrize("bad", ["y*y'", "y' + 1", "t*y'"])
def test_tr_dgb_preconditions(bad):
    with pytest.raises(PreconditionViolated) as err:
        tr_dgb([P(bad)], S("N"))
    assert err.value.element == P(bad)


def test_tr_dgb_requires_progressions():
    with pytest.raises(PreconditionViolated):
        tr_dgb([P("y'")], S("{0} u 2+3N"))
    with pytest.raises(PreconditionViolated):
        tr_dgb([], S("N"))


def test_tr_dgb_cap_is_reported():
    with pytest.raises(ReductionCapExceeded):
        tr_dgb([P(F42)], S4, cap=0)


def test_tr_dgb_basis_limit_with_offsets():
    # over 2+2N the y2 terms of shifted elements fall into the support, so
    # completion keeps producing elements of higher order
    F = [P("-2*D3(y2) + D1(y2) + 2*y2", 2), P("-3*D6(y1) + 3*D1(y2) + y1", 2)]
    with pytest.raises(BasisLimitExceeded):
        tr_dgb(F, S("2N, 2+2N", 2), max_basis=10)


def test_pair_window_parameters(gb42):
    assert pair_window([P(F42)], S4) == {"L": 4, "M": 3, "q": 1, "window": 7}
    # offsets extend the window by whole periods
    w = pair_window([P("y' + y")], S("2+3N"))
    assert w["L"] == 3 and w["window"] > (w["q"] + 1) * 3 - 1


def test_normalize():
    p, factor = normalize(P("-4*D9(y) - 12*D2(y) - 8*D1(y)"), S4, ORD)
    assert p == P(B2) and factor == Fraction(-1, 4)
    p, factor = normalize(P("t*y' + 2*t^2*y"), S("N"), ORD)
    assert leading(S("N"), ORD, p).lc == 1


def test_ancestry_replays_to_basis(gb42):
    for k in range(len(gb42.basis)):
        assert gb42.expansion(k).evaluate(gb42.inputs) == gb42.basis[k]


def test_result_json(gb42):
    data = json.loads(json.dumps(gb42.to_json(ancestry=True)))
    assert data["status"] == "CertifiedComplete"
    assert data["pairs_processed"] == gb42.pairs_processed
    assert len(data["ancestry"]) == 4


def assert_new_leads_not_shifted_leads(res, profile):
    """lm(b_k) differs from lm(D^l b_j) for every earlier element b_j and every l.

    Shifts beyond ord(b_k) - min_order(b_j) produce only higher orders, so
    the enumeration is exhaustive.
    """
    for k, pv in enumerate(res.provenance):
        if pv.input_index is not None:
            continue
        lm = leading(profile, ORD, res.basis[k]).lm
        top = lm[0][0]
        for j in range(k):
            b = res.basis[j]
            for shift in range(max(0, top - b.min_order()) + 1):
                assert leading(profile, ORD, b.differentiate(shift)).lm != lm, (k, j, shift)


def test_shift_class_distinctness(gb42):
    assert_new_leads_not_shifted_leads(gb42, S4)
    # lm(b2) = D2(y) sits one period below lm(b1) = D6(y): allowed, since b2 came later
    assert leading(S4, ORD, P(B1)).lm == monomial((1, 6))
    assert leading(S4, ORD, P(B2)).lm == monomial((1, 2))


def test_equal_lm_pair_count_for_y_plus_D5y():
    # within shifts 0..6 exactly one unordered pair of shifts has equal lms
    f, s2 = P("y + D5(y)"), S("2N")
    lms = [leading(s2, ORD, f.differentiate(k)).lm for k in range(7)]
    pairs = [(i, j) for i in range(7) for j in range(i + 1, 7) if lms[i] == lms[j]]
    assert len(pairs) == 1


# -- criterion checks ----------------------------------------------------------------------

def test_check_refutes_single_generator():
    res = check_gb_bounded([P(F42)], S4)
    assert res.status == REFUTED
    assert res.witness == (0, 0, 0, 2)
    assert res.remainder == -P(B1)


def test_check_certifies_running_basis(basis42):
    assert check_gb_bounded(basis42, S4).status == CERTIFIED


def test_explicit_bound_never_certifies():
    assert check_gb_bounded([P("y")], S("N"), mode=3).status == INCONCLUSIVE
    assert check_gb_bounded([P(F42)], S4, mode=2).status == REFUTED


def test_check_preconditions():
    with pytest.raises(PreconditionViolated):
        check_gb_bounded([P("y' + 1")], S("N"))
    with pytest.raises(PreconditionViolated):
        check_gb_bounded([DiffPolynomial.zero()], S("N"))
    with pytest.raises(ValueError):
        check_gb_bounded([P("y")], S("N"), mode="everything")


# -- reduced bases ---------------------------------------------------------------------------

def test_reduce_running_example(gb42):
    assert reduce_gb(gb42, S4) == [P(F42), P(B2), P(B3)]


def test_reduce_drops_inputs_sharing_a_class():
    # over N every lm is congruent mod L = 1, so one element survives
    res = tr_dgb([P("D6(y) - 2*D3(y) - 2*D1(y)"), P("3*D3(y)")], S("N"))
    assert reduce_gb(res, S("N")) == [P("D1(y)")]


def test_reduce_trivial():
    assert reduce_gb(tr_dgb([P("y")], S("N")), S("N")) == [P("y")]


def test_reduce_plain_list_drops_shift():
    g = P("y' + y")
    assert reduce_gb([g, g.differentiate()], S("N")) == [g]


def test_reduce_requires_certificate():
    with pytest.raises(NotCertified):
        reduce_gb([P(F42)], S4)
    partial = GBResult([P(F42)], BOUNDED_ONLY)
    with pytest.raises(NotCertified):
        reduce_gb(partial, S4)


# -- membership -----------------------------------------------------------------------------

def test_membership(gb42):
    v = membership(gb42, P(B2))
    assert v.verdict == MembershipVerdict.MEMBER
    assert v.trace.reassemble(gb42.basis) == P(B2)
    v = membership(gb42, P("y"))
    assert v.verdict == MembershipVerdict.NOT_MEMBER and v.remainder == P("y")
    v = membership(gb42, DiffPolynomial.zero())
    assert v.verdict == MembershipVerdict.MEMBER and v.trace.quotients == []


def test_membership_inconclusive_at_cap(gb42):
    v = membership(gb42, P(B3).differentiate(5), cap=1)
    assert v.verdict == MembershipVerdict.INCONCLUSIVE


def test_membership_requires_certificate():
    with pytest.raises(NotCertified):
        membership(GBResult([P("y")], FAILED), P("y"))


def test_certify_wraps_a_checked_list(basis42):
    res = certify(basis42, S4)
    assert res.certified
    with pytest.raises(NotCertified):
        certify([P(F42)], S4)


# -- bounds and certificates -----------------------------------------------------------------

@pytest.mark.parametrize("poly, support, expected", [
    (F42, "4N", 11),
    ("y + D5(y)", "2N", 9),
    ("y", "N", 2),
    ("t^3*y' + y", "N", 6),
])
def test_lower_bound_d(poly, support, expected):
    assert lower_bound_d([P(poly)], S(support)) == expected


def test_lower_bound_errors():
    with pytest.raises(FiniteSupport):
        lower_bound_d([P("y")], S("{0,1}"))
    with pytest.raises(NonPolynomialCoefficient):
        lower_bound_d([P("1/t*y")], S("N"))


def test_t_decompose():
    parts = t_decompose(P("y'' + t*y' + 3*t^2*y"))
    assert parts == [P("y''"), P("y'"), P("3*y")]


@pytest.mark.parametrize("poly, expected", [
    ("y'' + t*y'", True),
    ("y + t*D5(y)", False),
    (F42, True),
])
def test_single_gb_certificate(poly, expected):
    assert single_gb_certificate(P(poly)) is expected


def test_single_gb_certificate_preconditions():
    with pytest.raises(PreconditionViolated):
        single_gb_certificate(P("y*y'"))
    with pytest.raises(PreconditionViolated):
        single_gb_certificate(P("1/(1+t)*y"))


# -- partial Buchberger ---------------------------------------------------------------------

def test_partial_agrees_with_tr_dgb(gb42):
    res = buchberger_partial([P(F42)], S4)
    assert res.status == CERTIFIED_COMPLETE
    assert res.basis == gb42.basis


def test_partial_never_certifies_nonlinear():
    res = buchberger_partial([P("y*y'' + y'")], S("{0,2,4} u 6+2N"), rounds=1, cap=50)
    assert res.status in (BOUNDED_ONLY, FAILED)


def test_partial_single_variable():
    res = buchberger_partial([P("y")], S("N"))
    assert res.basis == [P("y")]
    # the linear decision applies and passes, so the result is certified
    assert res.status == CERTIFIED_COMPLETE


def test_partial_ancestry_replays():
    res = buchberger_partial([P("y*y'' + y'")], S("{0,2,4} u 6+2N"), rounds=1, cap=50)
    for k in range(len(res.basis)):
        assert res.expansion(k).evaluate(res.inputs) == res.basis[k]


def test_partial_rejects_zero():
    with pytest.raises(PreconditionViolated):
        buchberger_partial([DiffPolynomial.zero()], S("N"))


# -- monomial freeness -------------------------------------------------------------------------

def test_variable_is_a_monomial():
    rep = monomial_free_window([P("y")], S("N"), window=0)
    assert rep.found and rep.witness == monomial((1, 0))


def test_exponential_equation_is_monomial_free():
    rep = monomial_free_window([P("y' - y")], S("N"), window=6)
    assert not rep.found and rep.window == 6
    assert rep.to_json() == {"result": "NoneInWindow", "window": 6}


def test_b1_window_contains_a_monomial():
    # conflicts with the expectation of no monomial: three initials of value 0 combine
    s4, b1 = S4, P(B1)
    rep = monomial_free_window([b1], s4, window=8)
    assert rep.found and rep.witness == monomial((1, 12))
    assert rep.combination([b1], s4) == P("D12(y)")
    # independent replay with hand-picked coefficients
    ini = [initial(s4, b1.differentiate(k)) for k in (2, 3, 6)]
    combo = ini[0].scale(Fraction(2, 3)) + ini[1].scale(Fraction(-4, 3)) + ini[2]
    assert combo == P("D12(y)")


def test_monomial_free_requires_linear():
    with pytest.raises(NonLinearGenerator):
        monomial_free_window([P("y*y'")], S("N"), window=2)


def test_default_window():
    assert default_window([P(B1)], S4) == 14


# -- completeness oracle ------------------------------------------------------------------------

def test_random_members_reduce_to_zero():
    rng = random.Random(20240)
    for _ in range(25):
        F = random_linear_system(rng, max_order=4)
        prof = random_progressions(rng, F[0].n, max_period=3)
        res = tr_dgb(F, prof)
        for _ in range(8):
            f = random_member(rng, F)
            tr = diff_reduce(prof, ORD, res.basis, f)
            assert not tr.remainder, (F, str(prof), f)
            assert tr.reassemble(res.basis) == f


def test_tr_dgb_and_check_agree():
    rng = random.Random(7)
    for _ in range(20):
        F = random_linear_system(rng, max_order=4)
        prof = random_progressions(rng, F[0].n, max_period=3)
        res = tr_dgb(F, prof)
        assert_new_leads_not_shifted_leads(res, prof)
        assert check_gb_bounded(res.basis, prof).status == CERTIFIED
        if len(res.basis) > len(F):
            assert check_gb_bounded(F, prof).status == REFUTED
