"""Shared test helpers: short parsers and the acceptance-result registry."""
from tropdiff.diffpoly import DiffPolynomial
from tropdiff.textio import parse_polynomial, parse_support

ACCEPTANCE_RESULTS = {}


def P(text: str, n: int = 1) -> DiffPolynomial:
    return parse_polynomial(text, n)


def S(text: str, n: int = 1):
    return parse_support(text, n)


F42 = "D4(y) + D2(y) + D1(y)"
B1 = "D6(y) - D5(y) - 2*D2(y) - D1(y)"
B2 = "D9(y) + 3*D2(y) + 2*D1(y)"
B3 = "D13(y) - 2*D9(y) + 5*D5(y) - D1(y)"


def random_linear_system(rng, n=None, max_order=6, max_terms=3, count=None):
    """A small random homogeneous linear constant-coefficient system."""
    n = n or rng.randint(1, 2)
    out = []
    for _ in range(count or rng.randint(1, 2)):
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            key = (rng.randint(1, n), rng.randint(0, max_order))
            terms[key] = rng.choice([-3, -2, -1, 1, 2, 3])
        out.append(DiffPolynomial.linear(terms, n))
    return out


def random_progressions(rng, n, max_period=4, max_offset=2):
    from tropdiff.tropical import SupportProfile, SupportSet
    return SupportProfile(tuple(
        SupportSet.progression(rng.randint(0, max_offset), rng.randint(1, max_period))
        for _ in range(n)))


def random_member(rng, F, max_shift=6):
    """A random constant-coefficient combination of shifts of ``F``."""
    out = DiffPolynomial.zero(F[0].n)
    for _ in range(rng.randint(1, 4)):
        g = rng.choice(F)
        out = out + g.differentiate(rng.randint(0, max_shift)).scale(rng.randint(-3, 3))
    return out
