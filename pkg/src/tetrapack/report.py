"""Comparison table of tetrahedron packings: two rows computed live, the rest cited."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import display_scalar, to_decimal_string
from .model import DIMER_X_MAX, DIMER_X_MIN, build_dimer_packing, build_simple_packing
from .verify import contact_census, packing_fraction, verify_packing

DIMER_SAMPLE_X = (DIMER_X_MIN, Fraction(4, 7), DIMER_X_MAX)


@dataclass
class ReportRow:
    name: str
    phi: str  # exact value when computed, literature text when cited
    phi_decimal: str
    tetrahedra: str
    contacts: str
    transitive: str
    source: str  # "computed" or "cited"
    phi_value: float = 0.0


@dataclass
class DimerCensusSummary:
    x: Fraction
    per_dimer: int
    per_tetrahedron: tuple[int, ...]
    dimer_types: dict[str, int] = field(default_factory=dict)


# Literature values, reproduced as published and not recomputed here.
CITED_ROWS = (
    ("Optimal lattice", "18/49", "0.3673", "1", "14", "yes"),
    ("Warp and weft", "2/3", "0.6666", "2", "10", "yes"),
    ("Welsh", "17/24", "0.7083", "34", "25.9", "no"),
    ("Wagon wheels", "0.7786", "0.7786", "18", "7.1", "no"),
    ("Compressed wagon wheels", "0.7820", "0.7820", "72", "7.6", "no"),
    ("Disordered wagon wheels", "0.8226", "0.8226", "314", "7.4", "no"),
    ("Quasicrystal approximant", "0.8503", "0.8503", "656", "", "no"),
)


def _decimal(value, places: int = 4) -> str:
    # literature convention: digits are truncated, not rounded
    return to_decimal_string(value, places, rounding="down")


def dimer_census_summaries(workers: int | None = None) -> list[DimerCensusSummary]:
    out = []
    for x in DIMER_SAMPLE_X:
        census = contact_census(build_dimer_packing(x), workers)
        out.append(
            DimerCensusSummary(
                x,
                census.per_dimer[0],
                tuple(sorted(set(census.per_tetrahedron.values()))),
                dict(sorted(census.dimer_types[0].items())),
            )
        )
    return out


def computed_rows(workers: int | None = None) -> tuple[list[ReportRow], list[DimerCensusSummary]]:
    rows = []
    simple = build_simple_packing()
    if not verify_packing(simple, workers).valid:
        raise RuntimeError("simple double lattice failed verification")
    phi = packing_fraction(simple)
    z = contact_census(simple, workers, check=False).per_tetrahedron[0]
    rows.append(
        ReportRow("Simple double lattice", display_scalar(phi), _decimal(phi), str(len(simple.motif)),
                  str(z), "yes" if simple.transitive else "no", "computed", float(phi))
    )

    summaries = dimer_census_summaries(workers)
    dimer = build_dimer_packing(Fraction(4, 7))
    phis = {packing_fraction(build_dimer_packing(s.x)) for s in summaries}
    if len(phis) != 1:
        raise RuntimeError("packing fraction varies with x")
    phi = phis.pop()
    zs = sorted({z for s in summaries for z in s.per_tetrahedron})
    ztext = str(zs[0]) if len(zs) == 1 else f"{zs[0]} to {zs[-1]}"
    rows.append(
        ReportRow("Dimer double lattice", display_scalar(phi), _decimal(phi), str(len(dimer.motif)),
                  ztext, "yes" if dimer.transitive else "no", "computed", float(phi))
    )
    return rows, summaries


def cited_rows() -> list[ReportRow]:
    return [
        ReportRow(name, phi, dec, n, z, tr, "cited", float(dec)) for name, phi, dec, n, z, tr in CITED_ROWS
    ]


def report_rows(workers: int | None = None) -> tuple[list[ReportRow], list[DimerCensusSummary]]:
    computed, summaries = computed_rows(workers)
    rows = sorted(cited_rows() + computed, key=lambda r: r.phi_value)
    return rows, summaries


HEADER = ("name", "phi", "phi_4dp", "N", "Z", "transitive", "source")


def rows_as_tsv(rows: list[ReportRow]) -> str:
    lines = ["\t".join(HEADER)]
    for r in rows:
        lines.append("\t".join((r.name, r.phi, r.phi_decimal, r.tetrahedra, r.contacts, r.transitive, r.source)))
    return "\n".join(lines) + "\n"


def rows_as_text(rows: list[ReportRow]) -> str:
    cells = [HEADER] + [
        (r.name, r.phi, r.phi_decimal, r.tetrahedra, r.contacts, r.transitive,
         "computed" if r.source == "computed" else "cited, not computed")
        for r in rows
    ]
    widths = [max(len(c[i]) for c in cells) for i in range(len(HEADER))]
    out = ["  ".join(c[i].ljust(widths[i]) for i in range(len(HEADER))).rstrip() for c in cells]
    out.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"
