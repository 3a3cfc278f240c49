"""Neighbor enumeration: every packing member whose bounding sphere can meet the reference's."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from ..exact import QuadExt, RatPoly, as_fraction, floor_exact, sign
from ..linalg import Mat3, Vec3, gram_dot, inverse3
from ..model import Offset, Packing, Tetrahedron, centroid, dimer_cell

X = RatPoly([0, 1])


@dataclass(frozen=True)
class Candidate:
    motif_index: int
    offset: Offset
    element: str

    @property
    def identity(self) -> tuple[int, Offset]:
        return (self.motif_index, self.offset)


@dataclass(frozen=True)
class CandidateList:
    reference: int
    threshold2: object
    inclusive: bool
    interval: tuple[Fraction, Fraction] | None
    items: tuple[Candidate, ...]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def bounding_radius2(t: Tetrahedron, gram: Mat3):
    """Largest squared distance from the centroid to a vertex (circumradius^2 if regular)."""
    c = centroid(t)
    best = None
    for p in t.vertices:
        d = gram_dot(gram, p - c, p - c)
        if best is None or sign(d - best) > 0:
            best = d
    return best


def default_threshold2(packing: Packing, reference: int = 0):
    return 4 * bounding_radius2(packing.motif[reference], packing.gram)


def _upper(v) -> Fraction:
    return v.rational_bounds()[1] if isinstance(v, QuadExt) else as_fraction(v)


def _sqrt_upper(v) -> Fraction:
    r = max(_upper(v), Fraction(0))
    p, q = r.numerator, r.denominator
    return Fraction(math.isqrt(p * q) + 1, q)


def _cell_at(packing: Packing, x) -> tuple[Vec3, Vec3, Vec3]:
    if x is None:
        return packing.cell
    if packing.family != "dimer":
        raise ValueError("interval enumeration is defined for the dimer family only")
    return dimer_cell(x)


def _offset_ranges(packing: Packing, xs, delta: Vec3, threshold2) -> list[range]:
    ginv = inverse3(packing.gram)
    lows, highs = [None] * 3, [None] * 3
    for x in xs:
        binv = inverse3(Mat3(*_cell_at(packing, x)).transpose())
        center = binv.apply(-delta)
        for i in range(3):
            row = binv[i]
            radius = _sqrt_upper(threshold2 * gram_dot(ginv, row, row))
            lo, hi = floor_exact(center[i] - radius), -floor_exact(-(center[i] + radius))
            lows[i] = lo if lows[i] is None else min(lows[i], lo)
            highs[i] = hi if highs[i] is None else max(highs[i], hi)
    return [range(lo, hi + 1) for lo, hi in zip(lows, highs)]


def _quadratic_min(p: RatPoly, lo: Fraction, hi: Fraction) -> Fraction:
    values = [p(lo), p(hi)]
    c = p.coeffs + (Fraction(0),) * (3 - len(p.coeffs))
    if c[2] > 0:
        vertex = -c[1] / (2 * c[2])
        if lo < vertex < hi:
            values.append(p(vertex))
    return min(values)


def enumerate_candidates(
    packing: Packing,
    over_interval: tuple | None = None,
    *,
    reference: int = 0,
    threshold2=None,
    inclusive: bool = False,
) -> CandidateList:
    """Members whose centroid lies closer than ``sqrt(threshold2)`` to the reference's.

    With ``over_interval=(lo, hi)`` (dimer family only) a member is kept when the
    distance drops below the threshold for some x in [lo, hi].
    """
    if threshold2 is None:
        threshold2 = default_threshold2(packing, reference)
    interval = None
    if over_interval is not None:
        interval = (as_fraction(over_interval[0]), as_fraction(over_interval[1]))
    ref_c = centroid(packing.motif[reference])
    elements = packing.motif_elements
    items = []
    if sign(threshold2) <= 0:
        return CandidateList(reference, threshold2, inclusive, interval, ())
    for k, t in enumerate(packing.motif):
        delta = centroid(t) - ref_c
        xs = interval if interval is not None else [None]
        ranges = _offset_ranges(packing, xs, delta, threshold2)
        cell = _cell_at(packing, X if interval is not None else None)
        for n in itertools.product(*ranges):
            if k == reference and n == (0, 0, 0):
                continue
            disp = delta + cell[0] * n[0] + cell[1] * n[1] + cell[2] * n[2]
            d2 = gram_dot(packing.gram, disp, disp)
            if interval is not None:
                d2 = _quadratic_min(d2 if isinstance(d2, RatPoly) else RatPoly([d2]), *interval)
            s = sign(d2 - threshold2)
            if s < 0 or (inclusive and s == 0):
                name = elements[k].name if elements is not None else f"motif{k}"
                items.append(Candidate(k, tuple(n), name))
    items.sort(key=lambda c: (c.motif_index, c.offset))
    return CandidateList(reference, threshold2, inclusive, interval, tuple(items))
