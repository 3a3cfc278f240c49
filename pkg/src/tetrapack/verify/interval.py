"""Certification of the dimer family for every x in an interval.

Each candidate neighbor's coordinates are affine in x, so the side test of a
witness plane is a polynomial in x. A witness covers a subinterval when all its
side polynomials keep a fixed sign (zeros allowed) there and the witness triple
stays non-collinear; otherwise the subinterval is halved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..exact import RatPoly, SignClass, as_fraction, poly_sign_on_interval
from ..linalg import Vec3, dot, plane_through
from ..model import DIMER_X_MAX, DIMER_X_MIN, build_dimer_packing, dimer_cell, dimer_motif
from ._parallel import pmap
from .candidates import X, Candidate, enumerate_candidates
from .pipeline import verify_packing

MAX_DEPTH = 32


@dataclass(frozen=True)
class Piece:
    lo: Fraction
    hi: Fraction
    witness: tuple[int, int, int]
    orientation: int


@dataclass(frozen=True)
class PairCover:
    candidate: Candidate
    pieces: tuple[Piece, ...] | None  # None when some subinterval has no witness
    failed_at: tuple[Fraction, Fraction] | None = None


@dataclass
class IntervalCertificate:
    lo: Fraction
    hi: Fraction
    covers: list[PairCover]
    notes: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return all(c.pieces is not None for c in self.covers)

    @property
    def failures(self) -> list[PairCover]:
        return [c for c in self.covers if c.pieces is None]


def _lift(v: Vec3) -> Vec3:
    return Vec3(*(c if isinstance(c, RatPoly) else RatPoly([c]) for c in v))


def symbolic_vertices(candidate: Candidate) -> tuple[Vec3, ...]:
    """Vertices of a dimer-family member as affine functions of x."""
    t = dimer_motif()[candidate.motif_index]
    a, b, d = dimer_cell(X)
    n = candidate.offset
    shift = a * n[0] + b * n[1] + d * n[2]
    return tuple(_lift(p + shift) for p in t.vertices)


def _side_class(poly: RatPoly, lo: Fraction, hi: Fraction) -> SignClass:
    if lo == hi:
        v = poly(lo)
        return SignClass.ZERO if v == 0 else (SignClass.STRICTLY_POSITIVE if v > 0 else SignClass.STRICTLY_NEGATIVE)
    return poly_sign_on_interval(poly, lo, hi)


def witness_orientation(pts, tri, lo: Fraction, hi: Fraction) -> int:
    """+1/-1 if ``tri`` separates A (pts[:4]) from B (pts[4:]) for all x in [lo, hi], else 0."""
    n, h = plane_through(*(pts[i] for i in tri))
    mid = (lo + hi) / 2
    # the triple must stay non-collinear: one normal component keeps a strict sign
    if not any(not c.is_zero() and _side_class(c, lo, hi).is_strict() for c in n):
        return 0
    sides = {i: dot(n, p) - h for i, p in enumerate(pts) if i not in tri}
    # cheap exact filter at the midpoint before the interval classification
    mids = {i: s(mid) for i, s in sides.items()}
    a_mid = [v for i, v in mids.items() if i < 4]
    b_mid = [v for i, v in mids.items() if i >= 4]
    if all(v <= 0 for v in a_mid) and all(v >= 0 for v in b_mid):
        orientation = 1
    elif all(v >= 0 for v in a_mid) and all(v <= 0 for v in b_mid):
        orientation = -1
    else:
        return 0
    for i, s in sides.items():
        cls = _side_class(s, lo, hi)
        want_nonpos = (i < 4) == (orientation == 1)
        ok = cls.allows_nonpositive() if want_nonpos else cls.allows_nonnegative()
        if not ok:
            return 0
    return orientation


def _cover(pts, lo: Fraction, hi: Fraction, depth: int, max_depth: int):
    for tri in combinations(range(8), 3):
        o = witness_orientation(pts, tri, lo, hi)
        if o:
            return [Piece(lo, hi, tri, o)], None
    if depth >= max_depth or lo == hi:
        return None, (lo, hi)
    mid = (lo + hi) / 2
    left, fail = _cover(pts, lo, mid, depth + 1, max_depth)
    if left is None:
        return None, fail
    right, fail = _cover(pts, mid, hi, depth + 1, max_depth)
    if right is None:
        return None, fail
    return left + right, None


def _cover_candidate(args) -> PairCover:
    cand, lo, hi, max_depth = args
    ref = tuple(_lift(p) for p in dimer_motif()[0].vertices)
    pts = ref + symbolic_vertices(cand)
    pieces, fail = _cover(pts, lo, hi, 0, max_depth)
    return PairCover(cand, tuple(pieces) if pieces is not None else None, fail)


def verify_family_interval(lo, hi, *, max_depth: int = MAX_DEPTH, workers: int | None = None) -> IntervalCertificate:
    """Cover [lo, hi] by (subinterval, witness) pieces for every candidate neighbor of T0.

    Separation is affine, so the certificate holds for every monoclinic Gram.
    """
    lo, hi = as_fraction(lo), as_fraction(hi)
    if hi < lo:
        raise ValueError("empty interval")
    cert = IntervalCertificate(lo, hi, [])
    if not (DIMER_X_MIN <= lo and hi <= DIMER_X_MAX):
        cert.notes.append(f"interval extends outside the stated range [{DIMER_X_MIN}, {DIMER_X_MAX}]")
    packing = build_dimer_packing(lo)
    if lo == hi:
        report = verify_packing(packing, workers)
        cert.notes.append(f"degenerate interval: point verification is {report.status}")
        cands = report.candidates[0]
    else:
        cands = enumerate_candidates(packing, (lo, hi), inclusive=True)
    cert.covers = pmap(_cover_candidate, [(c, lo, hi, max_depth) for c in cands], workers)
    cert.notes.append(f"{len(cands)} candidate neighbors over [{lo}, {hi}]")
    return cert
