"""Exact scalars: rationals, real quadratic field elements, rational polynomials.

Rationals are plain :class:`fractions.Fraction`. ``QuadExt`` represents
``rat + coef * sqrt(d)`` with rational parts; ``RatPoly`` is a univariate
polynomial with rational coefficients used to certify signs over an interval.
"""

from __future__ import annotations

import enum
import functools
import math
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "QuadExt"]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimal points and exponents are refused."""
    text = text.strip()
    if not text or any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def format_rational(value) -> str:
    value = as_fraction(value)
    return f"{value.numerator}/{value.denominator}"


@functools.lru_cache(maxsize=None)
def _is_squarefree(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


_ZERO = Fraction(0)


@total_ordering
class QuadExt:
    """An element ``rat + coef*sqrt(d)`` of the real quadratic field Q(sqrt(d))."""

    __slots__ = ("rat", "coef", "d")

    def __init__(self, rat=0, coef=0, d: int = 10) -> None:
        if not _is_squarefree(d):
            raise ValueError(f"d must be a square-free integer > 1, got {d}")
        self.rat = as_fraction(rat)
        self.coef = as_fraction(coef)
        self.d = d

    def _coerce(self, other) -> QuadExt | None:
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError(f"mixed fields: sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return _mk(Fraction(other), _ZERO, self.d)
        return None

    def __repr__(self) -> str:
        return f"QuadExt({format_rational(self.rat)!r}, {format_rational(self.coef)!r}, d={self.d})"

    def __str__(self) -> str:
        if self.coef == 0:
            return str(self.rat)
        sgn = "+" if self.coef > 0 else "-"
        return f"{self.rat} {sgn} {abs(self.coef)}*sqrt({self.d})"

    def __hash__(self) -> int:
        if self.coef == 0:
            return hash(self.rat)
        return hash((self.rat, self.coef, self.d))

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.rat == o.rat and self.coef == o.coef

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad_sign(self - o) < 0

    def __bool__(self) -> bool:
        return self.rat != 0 or self.coef != 0

    def __neg__(self) -> QuadExt:
        return _mk(-self.rat, -self.coef, self.d)

    def __pos__(self) -> QuadExt:
        return self

    def __abs__(self) -> QuadExt:
        return -self if quad_sign(self) < 0 else self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mk(self.rat + o.rat, self.coef + o.coef, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mk(self.rat - o.rat, self.coef - o.coef, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return _mk(self.rat * other, self.coef * other, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mk(
            self.rat * o.rat + self.coef * o.coef * self.d,
            self.rat * o.coef + self.coef * o.rat,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return _mk(self.rat, -self.coef, self.d)

    def norm(self) -> Fraction:
        return self.rat * self.rat - self.coef * self.coef * self.d

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt(d))")
        return _mk(self.rat / n, -self.coef / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return _mk(self.rat / other, self.coef / other, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __float__(self) -> float:
        return float(self.rat) + float(self.coef) * math.sqrt(self.d)

    def is_rational(self) -> bool:
        return self.coef == 0

    def rational_bounds(self, digits: int = 12) -> tuple[Fraction, Fraction]:
        """Rational ``lo <= self <= hi`` with width about ``10**-digits * |coef|``."""
        scale = 10**digits
        r = math.isqrt(self.d * scale * scale)
        s_lo, s_hi = Fraction(r, scale), Fraction(r + 1, scale)
        a, b = self.rat + self.coef * s_lo, self.rat + self.coef * s_hi
        return (a, b) if a <= b else (b, a)


def _mk(rat: Fraction, coef: Fraction, d: int) -> QuadExt:
    q = object.__new__(QuadExt)
    q.rat = rat
    q.coef = coef
    q.d = d
    return q


def quad_sign(q: QuadExt) -> int:
    """Sign of ``rat + coef*sqrt(d)`` decided by integer comparison only."""
    a, b = q.rat, q.coef
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 d after clearing denominators
    lhs = (a.numerator * b.denominator) ** 2
    rhs = (b.numerator * a.denominator) ** 2 * q.d
    return sa if lhs > rhs else sb


def sign(value) -> int:
    if isinstance(value, QuadExt):
        return quad_sign(value)
    return (value > 0) - (value < 0)


def div(a, b):
    """``a / b`` that never falls back to float for integer operands."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def to_float(value) -> float:
    return float(value)


def floor_exact(value) -> int:
    """Exact floor of an int, Fraction or QuadExt."""
    if not isinstance(value, QuadExt):
        return math.floor(value)
    lo, hi = value.rational_bounds(8)
    m = math.floor(lo)
    while sign(value - (m + 1)) >= 0:
        m += 1
    while sign(value - m) < 0:
        m -= 1
    return m


def to_decimal_string(value, places: int, rounding: str = "half-even") -> str:
    """Decimal rendering of an exact scalar with ``places`` fractional digits.

    ``rounding`` is ``"half-even"`` (correctly rounded) or ``"down"`` (truncated
    toward zero, the convention of printed tables such as 2/3 ~ 0.6666).
    """
    neg = sign(value) < 0
    scaled = (-value if neg else value) * (10**places)
    m = floor_exact(scaled)
    if rounding == "half-even":
        half = sign(scaled - m - Fraction(1, 2))
        if half > 0 or (half == 0 and m % 2 == 1):
            m += 1
    elif rounding != "down":
        raise ValueError(f"unknown rounding mode {rounding!r}")
    digits = str(m).rjust(places + 1, "0")
    body = digits if places == 0 else f"{digits[:-places]}.{digits[-places:]}"
    return ("-" if neg and m else "") + body


class RatPoly:
    """Univariate polynomial with Fraction coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()) -> None:
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> RatPoly:
        return cls([c])

    @classmethod
    def affine(cls, c0, c1) -> RatPoly:
        """``c0 + c1*x``"""
        return cls([c0, c1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self) -> str:
        return f"RatPoly([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @staticmethod
    def _lift(other) -> RatPoly | None:
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> RatPoly:
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, QuadExt) else QuadExt(0, 0, x.d)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: RatPoly) -> RatPoly:
        acc = RatPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def derivative(self) -> RatPoly:
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def divmod(self, other: RatPoly) -> tuple[RatPoly, RatPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.coeffs[-1]
        while len(rem) >= len(other.coeffs) and rem:
            shift = len(rem) - len(other.coeffs)
            f = rem[-1] / lead
            quot[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return RatPoly(quot), RatPoly(rem)

    def monic(self) -> RatPoly:
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return RatPoly(c / lead for c in self.coeffs)


def poly_gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    while not q.is_zero():
        p, q = q, p.divmod(q)[1]
    return p.monic()


def bernstein_coefficients(p: RatPoly, lo, hi) -> list[Fraction]:
    """Bernstein coefficients of ``p`` restricted to ``[lo, hi]`` (degree = deg p)."""
    lo, hi = as_fraction(lo), as_fraction(hi)
    q = p.compose(RatPoly([lo, hi - lo]))
    n = max(q.degree, 0)
    a = list(q.coeffs) + [Fraction(0)] * (n + 1 - len(q.coeffs))
    return [
        sum((Fraction(math.comb(i, j), math.comb(n, j)) * a[j] for j in range(i + 1)), Fraction(0))
        for i in range(n + 1)
    ]


class SignClass(enum.Enum):
    STRICTLY_POSITIVE = "strictly-positive"
    NONNEGATIVE = "nonnegative"
    NONPOSITIVE = "nonpositive"
    STRICTLY_NEGATIVE = "strictly-negative"
    MIXED = "mixed"
    ZERO = "zero"

    def allows_nonnegative(self) -> bool:
        return self in (SignClass.STRICTLY_POSITIVE, SignClass.NONNEGATIVE, SignClass.ZERO)

    def allows_nonpositive(self) -> bool:
        return self in (SignClass.STRICTLY_NEGATIVE, SignClass.NONPOSITIVE, SignClass.ZERO)

    def is_strict(self) -> bool:
        return self in (SignClass.STRICTLY_POSITIVE, SignClass.STRICTLY_NEGATIVE)


def _repeated_rational_roots(p: RatPoly) -> list[Fraction]:
    # multiple roots of a rational polynomial of degree <= 3 are rational
    g = poly_gcd(p, p.derivative())
    roots: list[Fraction] = []
    while g.degree >= 1:
        h = poly_gcd(g, g.derivative())
        if g.degree == 1:
            roots.append(-g.coeffs[0])
            break
        if h.degree == 0:
            # squarefree gcd of degree >= 2; only the linear factors help
            if g.degree == 2:
                c, b, _ = g.coeffs
                disc = b * b - 4 * c
                if disc >= 0:
                    num, den = disc.numerator, disc.denominator
                    rn, rd = math.isqrt(num), math.isqrt(den)
                    if rn * rn == num and rd * rd == den:
                        s = Fraction(rn, rd)
                        roots.extend([(-b - s) / 2, (-b + s) / 2])
            break
        g = h
    return sorted(set(roots))


def poly_sign_on_interval(p: RatPoly, lo, hi, max_depth: int = 200) -> SignClass:
    """Exact sign classification of ``p`` on the closed interval ``[lo, hi]``.

    Bernstein coefficients decide each piece when they share a sign; otherwise the
    piece is halved. Exact evaluations at the piece endpoints detect sign changes
    early, and repeated (hence rational) roots are used as split points so that
    tangential zeros land on piece boundaries.
    """
    lo, hi = as_fraction(lo), as_fraction(hi)
    if not lo < hi:
        raise ValueError("poly_sign_on_interval needs lo < hi")
    if p.is_zero():
        return SignClass.ZERO

    cuts = [lo] + [r for r in _repeated_rational_roots(p) if lo < r < hi] + [hi]
    has_pos = has_neg = has_zero = False
    stack = [(a, b, 0) for a, b in zip(cuts, cuts[1:])]
    while stack:
        a, b, depth = stack.pop()
        for v in (p(a), p(b)):
            has_pos |= v > 0
            has_neg |= v < 0
            has_zero |= v == 0
        if has_pos and has_neg:
            return SignClass.MIXED
        bern = bernstein_coefficients(p, a, b)
        if all(c >= 0 for c in bern):
            has_pos = True
        elif all(c <= 0 for c in bern):
            has_neg = True
        else:
            if depth >= max_depth:
                raise RuntimeError("sign certification did not converge")
            m = (a + b) / 2
            stack.append((a, m, depth + 1))
            stack.append((m, b, depth + 1))
            continue
        if has_pos and has_neg:
            return SignClass.MIXED
    if has_pos:
        return SignClass.NONNEGATIVE if has_zero else SignClass.STRICTLY_POSITIVE
    return SignClass.NONPOSITIVE if has_zero else SignClass.STRICTLY_NEGATIVE


def display_scalar(value) -> str:
    """Human-readable exact text, e.g. ``100/117`` or ``(139+40*sqrt(10))/369``."""
    if isinstance(value, QuadExt):
        if value.coef == 0:
            return str(value.rat)
        q = math.lcm(value.rat.denominator, value.coef.denominator)
        a, b = int(value.rat * q), int(value.coef * q)
        root = f"{abs(b)}*sqrt({value.d})" if abs(b) != 1 else f"sqrt({value.d})"
        body = (f"{a}{'+' if b > 0 else '-'}{root}" if a else f"{'-' if b < 0 else ''}{root}")
        return body if q == 1 else f"({body})/{q}"
    return str(as_fraction(value))


def format_scalar(value):
    """JSON encoding: ``"p/q"`` for rationals, ``{"a", "b", "d"}`` for QuadExt."""
    if isinstance(value, QuadExt):
        return {"a": format_rational(value.rat), "b": format_rational(value.coef), "d": value.d}
    return format_rational(value)


def parse_scalar(obj):
    if isinstance(obj, dict):
        try:
            return QuadExt(parse_rational(obj["a"]), parse_rational(obj["b"]), int(obj["d"]))
        except KeyError as exc:
            raise ValueError(f"malformed quadratic scalar: {obj!r}") from exc
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    raise ValueError(f"malformed scalar: {obj!r}")


def common_field(values: Sequence) -> int | None:
    """The ``d`` shared by any QuadExt among ``values``, or None if all rational."""
    ds = {v.d for v in values if isinstance(v, QuadExt)}
    if len(ds) > 1:
        raise ValueError(f"mixed quadratic fields {sorted(ds)}")
    return ds.pop() if ds else None
