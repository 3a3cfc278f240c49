from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tetrapack.exact import (
    QuadExt,
    RatPoly,
    SignClass,
    bernstein_coefficients,
    display_scalar,
    floor_exact,
    format_scalar,
    parse_rational,
    parse_scalar,
    poly_gcd,
    poly_sign_on_interval,
    quad_sign,
    sign,
    to_decimal_string,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)
small_d = st.sampled_from([2, 3, 5, 6, 7, 10])


@st.composite
def quads(draw, d=None):
    return QuadExt(draw(rationals), draw(rationals), d or draw(small_d))


def _mp(q: QuadExt):
    return mpmath.mpf(q.rat.numerator) / q.rat.denominator + mpmath.mpf(q.coef.numerator) / q.coef.denominator * mpmath.sqrt(q.d)


# --- rationals --------------------------------------------------------------------------------


def test_parse_rational_accepts_exact_forms():
    assert parse_rational("4/7") == Fraction(4, 7)
    assert parse_rational(" -29/56 ") == Fraction(-29, 56)
    assert parse_rational("3") == 3


@pytest.mark.parametrize("text", ["0.5", "1e3", "1/0", "", "a/b", "4/7/2", "5E1"])
def test_parse_rational_rejects_inexact_or_malformed(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(rationals)
def test_scalar_json_round_trip_rational(x):
    assert parse_scalar(format_scalar(x)) == x


@given(quads())
def test_scalar_json_round_trip_quadratic(q):
    back = parse_scalar(format_scalar(q))
    assert back == q and back.d == q.d


# --- quadratic field --------------------------------------------------------------------------


def test_quadext_rejects_non_squarefree():
    with pytest.raises(ValueError):
        QuadExt(1, 1, 12)


def test_known_signs_near_cancellation():
    # 139^2 = 19321 > 40^2 * 10 = 16000, and 3^2 < 10
    assert quad_sign(QuadExt(139, -40, 10)) == 1
    assert quad_sign(QuadExt(3, -1, 10)) == -1
    assert quad_sign(QuadExt(-3, 1, 10)) == 1
    assert quad_sign(QuadExt(0, 0, 10)) == 0


@given(quads(), quads(d=10), quads(d=10))
def test_field_axioms(p, q, r):
    p = QuadExt(p.rat, p.coef, 10)
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p and p * q == q * p
    assert p - p == 0
    if p != 0:
        assert p * p.inverse() == 1
        assert (q / p) * p == q


@given(quads())
def test_norm_is_product_with_conjugate(q):
    assert q * q.conjugate() == QuadExt(q.norm(), 0, q.d)


@given(quads())
def test_quad_sign_matches_high_precision_evaluation(q):
    with mpmath.workdps(80):
        v = _mp(q)
        expected = 0 if v == 0 else (1 if v > 0 else -1)
    assert quad_sign(q) == expected


@given(st.integers(1, 400), small_d)
def test_quad_sign_on_near_zero_convergents(k, d):
    # a - b sqrt(d) with a/b a tight rational approximation of sqrt(d)
    with mpmath.workdps(60):
        b = k
        a = int(mpmath.nint(b * mpmath.sqrt(d)))
        q = QuadExt(a, -b, d)
        v = _mp(q)
    assume(v != 0)
    assert quad_sign(q) == (1 if v > 0 else -1)


@given(quads(), quads())
def test_ordering_agrees_with_sign_of_difference(p, q):
    q = QuadExt(q.rat, q.coef, p.d)
    assert (p < q) == (sign(q - p) > 0)


@given(quads(d=10))
def test_rational_bounds_enclose_value(q):
    lo, hi = q.rational_bounds(10)
    assert sign(q - lo) >= 0 and sign(hi - q) >= 0
    assert hi - lo <= abs(q.coef) * Fraction(1, 10**10) + Fraction(1, 10**20)


@given(quads(d=10))
def test_floor_exact_matches_mpmath(q):
    with mpmath.workdps(80):
        assert floor_exact(q) == int(mpmath.floor(_mp(q)))


def test_decimal_rendering_of_simple_fraction():
    phi = QuadExt(139, 40, 10) / 369
    assert to_decimal_string(phi, 4) == "0.7195"
    assert to_decimal_string(phi, 4, rounding="down") == "0.7194"
    assert to_decimal_string(Fraction(100, 117), 4) == "0.8547"
    assert to_decimal_string(Fraction(-1, 8), 2) == "-0.12"  # half-even
    assert to_decimal_string(Fraction(1, 3), 0) == "0"


@given(quads(d=10), st.integers(0, 12))
def test_decimal_rendering_is_correctly_rounded(q, places):
    text = to_decimal_string(q, places)
    # the rendered value is within half an ulp of the exact value
    assert sign(abs(q - parse_rational(text.replace(".", "")) / 10**places) - Fraction(1, 2 * 10**places)) <= 0


def test_display_scalar():
    assert display_scalar(QuadExt(139, 40, 10) / 369) == "(139+40*sqrt(10))/369"
    assert display_scalar(QuadExt(0, -1, 10)) == "-sqrt(10)"
    assert display_scalar(Fraction(100, 117)) == "100/117"


# --- polynomials ------------------------------------------------------------------------------

polys = st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=8), min_size=1, max_size=5).map(RatPoly)


def _sympy_class(p: RatPoly, lo: Fraction, hi: Fraction) -> SignClass:
    """Independent oracle: exact real roots from sympy plus sign at sample points."""
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(p.coeffs))
    poly = sympy.Poly(expr, x)
    if poly.is_zero:
        return SignClass.ZERO
    roots = sorted({r for r in poly.real_roots() if sympy.Rational(lo.numerator, lo.denominator) <= r <= sympy.Rational(hi.numerator, hi.denominator)})
    pts = [sympy.Rational(lo.numerator, lo.denominator), sympy.Rational(hi.numerator, hi.denominator), *roots]
    pts = sorted(set(pts))
    samples = list(pts) + [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    vals = [sympy.sign(poly.eval(s)) for s in samples]
    pos, neg, zero = 1 in vals, -1 in vals, 0 in vals
    if pos and neg:
        return SignClass.MIXED
    if pos:
        return SignClass.NONNEGATIVE if zero else SignClass.STRICTLY_POSITIVE
    return SignClass.NONPOSITIVE if zero else SignClass.STRICTLY_NEGATIVE


@settings(max_examples=40)
@given(polys, st.fractions(-3, 3, max_denominator=7), st.fractions(0, 3, max_denominator=7))
def test_poly_sign_agrees_with_sympy_roots(p, lo, width):
    assume(width > 0)
    if p.degree > 3:
        p = RatPoly(p.coeffs[:4])
    assert poly_sign_on_interval(p, lo, lo + width) == _sympy_class(p, lo, lo + width)


@given(st.fractions(-2, 2, max_denominator=9), st.fractions(-2, 2, max_denominator=9))
def test_poly_sign_detects_tangential_zero(r, s):
    # (x - r)^2 (x - s - 10) keeps a sign near r but touches zero there
    x = RatPoly([0, 1])
    p = (x - r) * (x - r) * (x - (s + 10))
    assert poly_sign_on_interval(p, r - 1, r + 1) == SignClass.NONPOSITIVE


def test_poly_sign_examples():
    x = RatPoly([0, 1])
    assert poly_sign_on_interval(x * x - 2, 0, 1) is SignClass.STRICTLY_NEGATIVE
    assert poly_sign_on_interval(x * x - 2, 0, 2) is SignClass.MIXED
    g = (x - Fraction(29, 56)) * (Fraction(9, 14) - x)
    assert poly_sign_on_interval(g, Fraction(29, 56), Fraction(9, 14)) is SignClass.NONNEGATIVE
    assert poly_sign_on_interval(RatPoly([]), 0, 1) is SignClass.ZERO


@given(polys, st.fractions(-2, 2, max_denominator=5), st.fractions(1, 3, max_denominator=5))
def test_bernstein_endpoints_are_values(p, lo, width):
    b = bernstein_coefficients(p, lo, lo + width)
    assert b[0] == p(lo) and b[-1] == p(lo + width)
    # convex hull property
    mid = lo + width / 2
    assert min(b) <= p(mid) <= max(b)


@given(polys, polys)
def test_divmod_and_gcd(p, q):
    assume(not q.is_zero())
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree
    g = poly_gcd(p, q)
    if not g.is_zero():
        assert p.divmod(g)[1].is_zero() and q.divmod(g)[1].is_zero()


@given(polys, polys, st.fractions(-5, 5, max_denominator=9))
def test_polynomial_ring_evaluation(p, q, t):
    assert (p * q)(t) == p(t) * q(t)
    assert (p + q)(t) == p(t) + q(t)
    assert p.compose(q)(t) == p(q(t))
