"""Contact census per tetrahedron and per bipyramidal dimer."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from ..model import Packing
from ..separation import (
    TOUCHING,
    ContactRecord,
    classify_bodies,
    classify_contact,
    halfspace_intersection_oracle,
    union_body,
)
from ._parallel import pmap
from .candidates import enumerate_candidates
from .pipeline import verify_packing


@dataclass
class ContactCensus:
    """Contact counts.

    ``per_tetrahedron`` counts the contacts made by one tetrahedron. In a packing
    of single tetrahedra that is the number of other tetrahedra touching it. In a
    dimer packing the bodies are dimers: a tetrahedron is credited with each
    dimer-level contact whose feature on its own dimer (face, edge or vertex) is a
    feature of the tetrahedron, plus the face shared with its partner.
    ``tetrahedron_neighbors`` is always the raw number of touching tetrahedra.
    """

    per_tetrahedron: dict[int, int]
    tetrahedron_neighbors: dict[int, int]
    tetrahedron_types: dict[int, dict[str, int]]
    tetrahedron_contacts: dict[int, list[ContactRecord]]
    per_dimer: dict[int, int] = field(default_factory=dict)
    dimer_types: dict[int, dict[str, int]] = field(default_factory=dict)
    dimer_contacts: dict[int, list[ContactRecord]] = field(default_factory=dict)

    @property
    def average(self) -> Fraction:
        counts = list(self.per_tetrahedron.values())
        return Fraction(sum(counts), len(counts))


def _classify(pair) -> ContactRecord:
    return classify_contact(*pair)


def _classify_dimers(args) -> ContactRecord:
    (s0, s1), (t0, t1), ident = args
    return classify_bodies(union_body(s0, s1), union_body(t0, t1), ident)


def _touching_pair(pair):
    return pair if halfspace_intersection_oracle(*pair).verdict == TOUCHING else None


def contact_census(packing: Packing, workers: int | None = None, check: bool = True) -> ContactCensus:
    """Classify every touching neighbor pair; aggregate per tetrahedron and per dimer.

    A dimer-level contact merges all contacts between the two members of the
    reference dimer and the two members of one other dimer; the face shared
    inside a dimer is not a dimer contact.
    """
    if check and not verify_packing(packing, workers).valid:
        raise ValueError("contact census needs a valid packing")

    if packing.transitive:
        refs = [0] if packing.dimers is None else sorted({0, *packing.dimers[0]})
    else:
        refs = list(range(len(packing.motif)))
    touching: dict[int, list] = {}
    for r in refs:
        cands = enumerate_candidates(packing, reference=r, inclusive=True)
        ref = packing.motif[r]
        pairs = [(ref, packing.tetrahedron(c.motif_index, c.offset)) for c in cands]
        touching[r] = [p for p in pmap(_touching_pair, pairs, workers) if p is not None]

    census = ContactCensus({}, {}, {}, {})
    for r in refs:
        records = pmap(_classify, touching[r], workers)
        census.tetrahedron_neighbors[r] = len(records)
        census.tetrahedron_types[r] = dict(Counter(rec.contact_type for rec in records))
        census.tetrahedron_contacts[r] = records
        if packing.dimers is None:
            census.per_tetrahedron[r] = len(records)

    if packing.dimers is None:
        return census

    dimer_ids = [0] if packing.transitive else range(len(packing.dimers))
    for di in dimer_ids:
        i, j = packing.dimers[di]
        own = (packing.motif[i], packing.motif[j])
        others = set()
        for r in (i, j):
            for _, b in touching[r]:
                dk = packing.dimer_of(b.motif_index)
                if not (dk == di and b.lattice_offset == (0, 0, 0)):
                    others.add((dk, b.lattice_offset))
        jobs = []
        for dk, n in sorted(others):
            p, q = packing.dimers[dk]
            jobs.append((own, (packing.tetrahedron(p, n), packing.tetrahedron(q, n)), ((di, (0, 0, 0)), (dk, n))))
        records = pmap(_classify_dimers, jobs, workers)
        census.per_dimer[di] = len(records)
        census.dimer_types[di] = dict(Counter(rec.contact_type for rec in records))
        census.dimer_contacts[di] = records

        body = union_body(*own)
        for r in (i, j):
            if r not in census.tetrahedron_neighbors:
                continue
            member = {body.vertices.index(v) for v in packing.motif[r].vertices}
            credited = sum(1 for rec in records if set(rec.features_a) <= member)
            census.per_tetrahedron[r] = credited + 1  # the partner across the shared face
    return census
