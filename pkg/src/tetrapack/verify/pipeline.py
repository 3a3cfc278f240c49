"""Whole-packing verification and packing fraction."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..linalg import tetra_volume_lattice
from ..model import DIMER_X_MAX, DIMER_X_MIN, Packing, Tetrahedron, cell_volume_lattice
from ..separation import (
    Overlap,
    SeparationCertificate,
    halfspace_intersection_oracle,
    separate_by_vertex_plane,
)
from ._parallel import pmap
from .candidates import CandidateList, enumerate_candidates


@dataclass(frozen=True)
class PairVerdict:
    reference: tuple
    other: tuple
    result: SeparationCertificate | Overlap

    @property
    def overlapping(self) -> bool:
        return isinstance(self.result, Overlap)

    @property
    def touching(self) -> bool:
        return isinstance(self.result, SeparationCertificate) and self.result.touching


@dataclass
class VerificationReport:
    family: str
    x: object
    offsets: tuple | None
    references: tuple[int, ...]
    candidates: dict[int, CandidateList]
    verdicts: list[PairVerdict]
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def overlaps(self) -> list[PairVerdict]:
        return [v for v in self.verdicts if v.overlapping]

    @property
    def status(self) -> str:
        return "invalid" if self.overlaps else "valid"

    @property
    def valid(self) -> bool:
        return not self.overlaps


def _check_pair(pair: tuple[Tetrahedron, Tetrahedron]) -> SeparationCertificate | Overlap:
    a, b = pair
    res = separate_by_vertex_plane(a, b)
    if isinstance(res, Overlap):
        # the plane search proves separation only; the oracle supplies an interior point
        res = Overlap(halfspace_intersection_oracle(a, b).witness)
    return res


def references_of(packing: Packing) -> tuple[int, ...]:
    return (0,) if packing.transitive else tuple(range(len(packing.motif)))


def candidate_pairs(packing: Packing, inclusive: bool = True):
    """(reference index, CandidateList, [(reference tetra, neighbor tetra)]) per reference."""
    out = []
    for r in references_of(packing):
        cands = enumerate_candidates(packing, reference=r, inclusive=inclusive)
        ref = packing.motif[r]
        pairs = [(ref, packing.tetrahedron(c.motif_index, c.offset)) for c in cands]
        out.append((r, cands, pairs))
    return out


def verify_packing(packing: Packing, workers: int | None = None) -> VerificationReport:
    """Check one reference (all motif members if not transitive) against its candidates."""
    start = time.perf_counter()
    verdicts: list[PairVerdict] = []
    cand_lists: dict[int, CandidateList] = {}
    for r, cands, pairs in candidate_pairs(packing):
        cand_lists[r] = cands
        results = pmap(_check_pair, pairs, workers)
        ref_id = packing.motif[r].identity
        verdicts.extend(PairVerdict(ref_id, c.identity, res) for c, res in zip(cands, results))
    verdicts.sort(key=lambda v: (v.reference, v.other))
    report = VerificationReport(
        family=packing.family,
        x=packing.x,
        offsets=packing.offsets,
        references=tuple(cand_lists),
        candidates=cand_lists,
        verdicts=verdicts,
        elapsed=time.perf_counter() - start,
    )
    for r, cands in cand_lists.items():
        report.notes.append(
            f"reference {r}: {len(cands)} candidates with squared centroid distance "
            f"<= {cands.threshold2}; all other members have bounding spheres that do not "
            "meet the reference's and cannot overlap it"
        )
    if packing.transitive:
        report.notes.append("transitive packing: one reference suffices")
    params = packing.offsets if packing.offsets is not None else (packing.x,)
    if packing.family in ("dimer", "layered") and any(
        not (DIMER_X_MIN <= x <= DIMER_X_MAX) for x in params
    ):
        report.notes.append(f"x outside the stated range [{DIMER_X_MIN}, {DIMER_X_MAX}]")
    return report


def packing_fraction(packing: Packing):
    """Sum of motif volumes over the cell volume, in lattice units (metric-free)."""
    total = sum((tetra_volume_lattice(t.vertices) for t in packing.motif[1:]),
                tetra_volume_lattice(packing.motif[0].vertices))
    return total / cell_volume_lattice(packing)
