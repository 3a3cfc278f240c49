"""Command-line front end.

Exit codes: 0 success or valid, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .exact import display_scalar, format_scalar, parse_rational, to_decimal_string
from .export import FORMATS, export_mesh
from .model import (
    DIMER_X_MAX,
    DIMER_X_MIN,
    NotRegular,
    build_dimer_packing,
    build_layered_packing,
    build_simple_packing,
    check_regularity,
)
from .verify import (
    contact_census,
    enumerate_candidates,
    inversion_center_report,
    packing_fraction,
    verify_family_interval,
    verify_packing,
)
from .verify.centers import NoInversion

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected an exact rational like 4/7, got {text!r}") from exc


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def precision(text: str) -> int:
    n = positive_int(text)
    if n > 17:
        raise argparse.ArgumentTypeError("precision must be between 1 and 17")
    return n


def _load(path):
    try:
        return io.load_packing(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except (io.DocumentError, NotRegular) as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _ident(ident) -> str:
    k, n = ident
    return f"T{k}+({n[0]},{n[1]},{n[2]})"


def _vec(v) -> str:
    return "(" + ", ".join(display_scalar(c) for c in v) + ")"


# --- commands ------------------------------------------------------------------------------


def cmd_build(args) -> int:
    if args.family == "dimer":
        if args.x is None or args.offsets:
            raise UsageError("--family dimer needs --x and no --offsets")
        packing = build_dimer_packing(args.x)
    elif args.family == "simple":
        if args.x is not None or args.offsets:
            raise UsageError("--family simple takes no parameters")
        packing = build_simple_packing()
    else:
        if not args.offsets:
            raise UsageError("--family layered needs --offsets")
        packing = build_layered_packing(args.offsets)
    derived = None
    if args.with_derived:
        report = verify_packing(packing, args.workers)
        derived = {
            "fraction": format_scalar(packing_fraction(packing)),
            "squared_edge": format_scalar(check_regularity(packing)),
            "verification": report.status,
        }
        if report.valid:
            census = contact_census(packing, args.workers, check=False)
            derived["census"] = {
                "per_tetrahedron": {str(k): v for k, v in census.per_tetrahedron.items()},
                "per_dimer": {str(k): v for k, v in census.per_dimer.items()},
                "dimer_types": {str(k): v for k, v in census.dimer_types.items()},
                "tetrahedron_types": {str(k): v for k, v in census.tetrahedron_types.items()},
            }
        if packing.transitive:
            centers = inversion_center_report(packing)
            derived["centers"] = {
                "volume_ratio": format_scalar(centers.volume_ratio),
                "on_surface": centers.surface_count,
                "count": len(centers.classes),
            }
    _emit(io.dumps(io.packing_to_document(packing, derived)) + "\n", args.output)
    return EXIT_OK


def _verify_interval(args) -> int:
    lo, hi = args.interval
    if hi < lo:
        raise UsageError("--interval needs lo <= hi")
    cert = verify_family_interval(lo, hi, max_depth=args.max_depth, workers=args.workers)
    if args.json:
        print(io.dumps(io.interval_out(cert)))
    else:
        print(f"interval [{lo}, {hi}]: {'complete' if cert.complete else 'incomplete'}")
        for note in cert.notes:
            print(f"note: {note}")
        for cover in cert.covers:
            head = _ident(cover.candidate.identity)
            if cover.pieces is None:
                a, b = cover.failed_at
                print(f"  {head}: no witness on [{a}, {b}]")
                continue
            for p in cover.pieces:
                print(f"  {head}: [{p.lo}, {p.hi}] plane {p.witness} orientation {p.orientation:+d}")
    return EXIT_OK if cert.complete else EXIT_FAIL


def cmd_verify(args) -> int:
    packing = _load(args.input)
    if args.interval is not None:
        if packing.family != "dimer":
            raise UsageError("--interval applies to the dimer family only")
        return _verify_interval(args)
    report = verify_packing(packing, args.workers)
    if args.json:
        print(io.dumps(io.verification_out(report)))
        return EXIT_OK if report.valid else EXIT_FAIL
    param = ""
    if packing.offsets is not None:
        param = " offsets " + ",".join(str(o) for o in packing.offsets)
    elif packing.x is not None:
        param = f" x={packing.x}"
    print(f"{packing.family}{param}: {report.status}")
    touching = sum(1 for v in report.verdicts if v.touching)
    print(f"pairs checked: {len(report.verdicts)} (touching {touching}, overlapping {len(report.overlaps)})")
    for v in report.overlaps:
        w = v.result.witness
        where = f" interior point {_vec(w)}" if w is not None else ""
        print(f"overlap: {_ident(v.reference)} with {_ident(v.other)}{where}")
    for note in report.notes:
        print(f"note: {note}")
    return EXIT_OK if report.valid else EXIT_FAIL


def cmd_fraction(args) -> int:
    packing = _load(args.input)
    phi = packing_fraction(packing)
    print(f"fraction\t{display_scalar(phi)}")
    print(f"decimal\t{to_decimal_string(phi, args.places)}")
    return EXIT_OK


def cmd_contacts(args) -> int:
    packing = _load(args.input)
    report = verify_packing(packing, args.workers)
    if not report.valid:
        print("packing overlaps; no contact census", file=sys.stderr)
        return EXIT_FAIL
    census = contact_census(packing, args.workers, check=False)
    if args.json:
        print(io.dumps(io.census_out(census)))
        return EXIT_OK
    for k, n in census.per_tetrahedron.items():
        types = ", ".join(f"{t} {c}" for t, c in sorted(census.tetrahedron_types[k].items()))
        print(f"tetrahedron {k}\tcontacts {n}\tneighbors {census.tetrahedron_neighbors[k]}\t{types}")
    for k, n in census.per_dimer.items():
        types = ", ".join(f"{t} {c}" for t, c in sorted(census.dimer_types[k].items()))
        print(f"dimer {k}\tcontacts {n}\t{types}")
    print(f"average per tetrahedron\t{census.average}")
    return EXIT_OK


def cmd_centers(args) -> int:
    packing = _load(args.input)
    try:
        report = inversion_center_report(packing)
    except NoInversion as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        print(io.dumps(io.centers_out(report)))
        return EXIT_OK
    print(f"volume ratio\t{report.volume_ratio}")
    print(f"on {report.body} surface\t{report.surface_count} of {len(report.classes)}")
    for c in report.classes:
        mark = "surface" if c.on_surface else "off"
        print(f"{''.join(map(str, c.parity))}\t{_vec(c.center)}\t{mark}")
    return EXIT_OK


def cmd_neighbors(args) -> int:
    packing = _load(args.input)
    interval = None
    if args.interval is not None:
        if packing.family != "dimer":
            raise UsageError("--interval applies to the dimer family only")
        interval = tuple(args.interval)
    if not 0 <= args.reference < len(packing.motif):
        raise UsageError(f"reference must be a motif index below {len(packing.motif)}")
    cands = enumerate_candidates(packing, interval, reference=args.reference, inclusive=not args.strict)
    if args.json:
        print(io.dumps(io.candidates_out(cands)))
        return EXIT_OK
    print(f"candidates\t{len(cands)}\tthreshold2 {cands.threshold2}")
    for c in cands:
        print(f"{_ident(c.identity)}\t{c.element or ''}")
    return EXIT_OK


def cmd_export(args) -> int:
    packing = _load(args.input)
    text = export_mesh(packing, args.format, args.shells, args.precision)
    _emit(text, args.output)
    return EXIT_OK


def cmd_report(args) -> int:
    from . import report as rep

    rows, summaries = rep.report_rows(args.workers)
    print(rep.rows_as_text(rows), end="")
    print("phi_4dp is truncated to four places; cited rows are literature values and are not computed here")
    if args.out_dir:
        from .plotting import plot_contact_types, plot_fractions

        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "packings.tsv").write_text(rep.rows_as_tsv(rows), encoding="utf-8")
        lines = ["x\tper_dimer\tper_tetrahedron\ttypes"]
        for s in summaries:
            types = ";".join(f"{t}={n}" for t, n in s.dimer_types.items())
            lines.append(f"{s.x}\t{s.per_dimer}\t{','.join(map(str, s.per_tetrahedron))}\t{types}")
        (out / "dimer_contacts.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        plot_fractions(rows, out / "packing_fractions.png")
        plot_contact_types(summaries, out / "dimer_contacts.png")
        print(f"wrote {out}")
    return EXIT_OK


def cmd_scan_x(args) -> int:
    lo, hi = args.lo, args.hi
    if hi <= lo:
        raise UsageError("--hi must exceed --lo")
    grid = {lo + (hi - lo) * Fraction(i, args.steps) for i in range(args.steps + 1)}
    xs = sorted(grid | {x for x in (DIMER_X_MIN, DIMER_X_MAX) if lo <= x <= hi})
    lines = ["x\tstatus\tcandidates\ttouching\toverlaps"]
    valid, touching = [], []
    for x in xs:
        report = verify_packing(build_dimer_packing(x), args.workers)
        t = sum(1 for v in report.verdicts if v.touching)
        valid.append(report.valid)
        touching.append(t)
        lines.append(f"{x}\t{report.status}\t{len(report.verdicts)}\t{t}\t{len(report.overlaps)}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out_dir:
        from .plotting import plot_scan

        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "scan_x.tsv").write_text(text, encoding="utf-8")
        plot_scan(xs, valid, touching, out / "scan_x.png", DIMER_X_MIN, DIMER_X_MAX)
    inside = [v for x, v in zip(xs, valid) if DIMER_X_MIN <= x <= DIMER_X_MAX]
    return EXIT_OK if all(inside) else EXIT_FAIL


# --- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tetrapack", description=__doc__.splitlines()[0])
    parser.add_argument("--workers", type=positive_int, default=None,
                        help="worker processes (default: TETRAPACK_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write a packing document")
    p.add_argument("--family", choices=io.FAMILIES, required=True)
    p.add_argument("--x", type=rational)
    p.add_argument("--offsets", type=rational, nargs="+")
    p.add_argument("--with-derived", action="store_true", help="add fraction, census and centers blocks")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="certify a packing overlap-free")
    p.add_argument("input")
    p.add_argument("--interval", type=rational, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--max-depth", type=positive_int, default=32)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fraction", help="exact packing fraction")
    p.add_argument("input")
    p.add_argument("--places", type=positive_int, default=12)
    p.set_defaults(func=cmd_fraction)

    p = sub.add_parser("contacts", help="contact census")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_contacts)

    p = sub.add_parser("centers", help="inversion centers")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_centers)

    p = sub.add_parser("neighbors", help="candidate neighbors of a reference tetrahedron")
    p.add_argument("input")
    p.add_argument("--interval", type=rational, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--reference", type=int, default=0)
    p.add_argument("--strict", action="store_true", help="exclude pairs exactly at the threshold")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_neighbors)

    p = sub.add_parser("export", help="write an OFF or OBJ mesh")
    p.add_argument("input")
    p.add_argument("--format", choices=FORMATS, required=True)
    p.add_argument("--shells", type=positive_int, default=1)
    p.add_argument("--precision", type=precision, default=6)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("report", help="comparison table of packings")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("scan-x", help="verify the dimer family on a grid of x")
    p.add_argument("--lo", type=rational, default=Fraction(1, 2))
    p.add_argument("--hi", type=rational, default=Fraction(2, 3))
    p.add_argument("--steps", type=positive_int, default=12)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_scan_x)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tetrapack {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
