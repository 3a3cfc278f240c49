"""JSON documents for packings and certification results, with exact scalar encodings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .exact import format_scalar, parse_rational, parse_scalar
from .linalg import Mat3, Vec3, check_gram
from .model import Isometry, Packing, SpaceGroup, Tetrahedron
from .separation import ContactRecord, Overlap, SeparationCertificate

SCHEMA_VERSION = 1
FAMILIES = ("dimer", "simple", "layered")


class DocumentError(ValueError):
    pass


def _vec_out(v: Vec3) -> list:
    return [format_scalar(c) for c in v]


def _vec_in(obj) -> Vec3:
    if not isinstance(obj, list) or len(obj) != 3:
        raise DocumentError(f"expected a 3-vector, got {obj!r}")
    return Vec3(*(parse_scalar(c) for c in obj))


def _mat_out(m: Mat3) -> list:
    return [_vec_out(r) for r in m]


def _mat_in(obj) -> Mat3:
    if not isinstance(obj, list) or len(obj) != 3:
        raise DocumentError(f"expected a 3x3 matrix, got {obj!r}")
    return Mat3(*(_vec_in(r) for r in obj))


def _iso_out(g: Isometry) -> dict:
    return {"name": g.name, "linear": _mat_out(g.linear), "translation": _vec_out(g.translation)}


def _iso_in(obj) -> Isometry:
    return Isometry(_mat_in(obj["linear"]), _vec_in(obj["translation"]), obj.get("name", ""))


def packing_to_document(packing: Packing, derived: dict | None = None) -> dict:
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "family": packing.family,
        "space_group": packing.group.label,
        "gram": _mat_out(packing.gram),
        "cell": [_vec_out(v) for v in packing.cell],
        "generators": [_iso_out(g) for g in packing.group.generators],
        "motif": [],
        "dimers": [list(p) for p in packing.dimers] if packing.dimers is not None else None,
    }
    if packing.x is not None:
        doc["x"] = format_scalar(packing.x)
    if packing.offsets is not None:
        doc["offsets"] = [format_scalar(o) for o in packing.offsets]
    for k, t in enumerate(packing.motif):
        entry = {"index": t.motif_index, "vertices": [_vec_out(p) for p in t.vertices]}
        if packing.motif_elements is not None:
            entry["element"] = _iso_out(packing.motif_elements[k])
        doc["motif"].append(entry)
    if derived:
        doc["derived"] = derived
    return doc


def document_to_packing(doc: dict) -> Packing:
    try:
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            raise DocumentError(f"unsupported schema_version {version!r}")
        family = doc["family"]
        if family not in FAMILIES:
            raise DocumentError(f"unknown family {family!r}")
        gram = check_gram(_mat_in(doc["gram"]))
        cell = tuple(_vec_in(v) for v in doc["cell"])
        if len(cell) != 3:
            raise DocumentError("cell needs three translations")
        gens = tuple(_iso_in(g) for g in doc.get("generators", []))
        motif, elements = [], []
        for entry in doc["motif"]:
            verts = tuple(_vec_in(p) for p in entry["vertices"])
            if len(verts) != 4:
                raise DocumentError("a tetrahedron needs four vertices")
            motif.append(Tetrahedron(verts, int(entry["index"])))
            if "element" in entry:
                elements.append(_iso_in(entry["element"]))
        if elements and len(elements) != len(motif):
            raise DocumentError("motif elements must be given for all or none")
        dimers = doc.get("dimers")
        x = doc.get("x")
        offsets = doc.get("offsets")
        return Packing(
            gram=gram,
            group=SpaceGroup(cell, gens, doc.get("space_group", "")),
            motif=tuple(motif),
            family=family,
            x=parse_rational(x) if x is not None else None,
            offsets=tuple(parse_rational(o) for o in offsets) if offsets is not None else None,
            motif_elements=tuple(elements) if elements else None,
            dimers=tuple(tuple(p) for p in dimers) if dimers is not None else None,
        )
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DocumentError(f"malformed packing document: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def load_packing(path) -> Packing:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{path}: not JSON ({exc})") from exc
    return document_to_packing(doc)


def save_packing(packing: Packing, path, derived: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(packing_to_document(packing, derived)))
        fh.write("\n")


# --- results -------------------------------------------------------------------------------


def ident_out(ident) -> dict:
    k, n = ident
    return {"motif": k, "offset": list(n)}


def certificate_out(res) -> dict:
    if isinstance(res, Overlap):
        out = {"verdict": "overlapping"}
        if res.witness is not None:
            out["interior_point"] = _vec_out(res.witness)
        return out
    assert isinstance(res, SeparationCertificate)
    return {
        "verdict": "touching" if res.touching else "disjoint",
        "plane_vertices": list(res.plane_vertices),
        "orientation": res.orientation,
        "side_signs": list(res.side_signs),
        "on_plane": list(res.on_plane),
    }


def verification_out(report) -> dict:
    return {
        "family": report.family,
        "x": format_scalar(report.x) if report.x is not None else None,
        "offsets": [format_scalar(o) for o in report.offsets] if report.offsets else None,
        "status": report.status,
        "references": list(report.references),
        "candidate_counts": {str(r): len(c) for r, c in report.candidates.items()},
        "thresholds2": {str(r): format_scalar(c.threshold2) for r, c in report.candidates.items()},
        "overlap_count": len(report.overlaps),
        "pairs": [
            {"reference": ident_out(v.reference), "other": ident_out(v.other), **certificate_out(v.result)}
            for v in report.verdicts
        ],
        "notes": report.notes,
        "elapsed_seconds": round(report.elapsed, 4),
    }


def candidates_out(cands) -> dict:
    return {
        "reference": cands.reference,
        "threshold2": format_scalar(cands.threshold2),
        "inclusive": cands.inclusive,
        "interval": [format_scalar(v) for v in cands.interval] if cands.interval else None,
        "count": len(cands),
        "candidates": [
            {"motif": c.motif_index, "offset": list(c.offset), "element": c.element} for c in cands
        ],
    }


def contact_out(rec: ContactRecord) -> dict:
    out = {
        "pair": [list(map(_jsonable, p)) for p in rec.pair],
        "type": rec.contact_type,
        "features_a": list(rec.features_a),
        "features_b": list(rec.features_b),
        "dimension": rec.dimension,
    }
    if rec.dimension == 0:
        out["point"] = _vec_out(rec.points[0])
    else:
        out["center"] = _vec_out(rec.center)
    return out


def _jsonable(v):
    return list(v) if isinstance(v, tuple) else v


def census_out(census) -> dict:
    out = {
        "per_tetrahedron": {str(k): v for k, v in census.per_tetrahedron.items()},
        "tetrahedron_neighbors": {str(k): v for k, v in census.tetrahedron_neighbors.items()},
        "tetrahedron_types": {str(k): v for k, v in census.tetrahedron_types.items()},
        "average_contacts": format_scalar(census.average),
        "tetrahedron_contacts": {
            str(k): [contact_out(r) for r in recs] for k, recs in census.tetrahedron_contacts.items()
        },
    }
    if census.per_dimer:
        out["per_dimer"] = {str(k): v for k, v in census.per_dimer.items()}
        out["dimer_types"] = {str(k): v for k, v in census.dimer_types.items()}
        out["dimer_contacts"] = {
            str(k): [contact_out(r) for r in recs] for k, recs in census.dimer_contacts.items()
        }
    return out


def centers_out(report) -> dict:
    return {
        "body": report.body,
        "base_center": _vec_out(report.base_center),
        "edges": [_vec_out(e) for e in report.edges],
        "volume_ratio": format_scalar(report.volume_ratio),
        "surface_count": report.surface_count,
        "centers": [
            {
                "parity": list(c.parity),
                "center": _vec_out(c.center),
                "on_surface": [_vec_out(p) for p in c.on_surface],
            }
            for c in report.classes
        ],
    }


def interval_out(cert) -> dict:
    return {
        "interval": [format_scalar(cert.lo), format_scalar(cert.hi)],
        "complete": cert.complete,
        "notes": cert.notes,
        "pairs": [
            {
                "other": ident_out(c.candidate.identity),
                "pieces": [
                    {
                        "lo": format_scalar(p.lo),
                        "hi": format_scalar(p.hi),
                        "witness": list(p.witness),
                        "orientation": p.orientation,
                    }
                    for p in c.pieces
                ]
                if c.pieces is not None
                else None,
                "failed_at": [format_scalar(v) for v in c.failed_at] if c.failed_at else None,
            }
            for c in cert.covers
        ],
    }


def fraction_out(value) -> dict:
    from .exact import to_decimal_string

    return {
        "exact": format_scalar(value),
        "decimal": to_decimal_string(value, 12),
    }


__all__ = [
    "DocumentError",
    "Fraction",
    "packing_to_document",
    "document_to_packing",
    "load_packing",
    "save_packing",
]
