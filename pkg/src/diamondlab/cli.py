"""Command-line entry point: ``diamondlab verify|render|export|census``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import catalog, golay, render
from .geometry import ProjPoint, lines, points
from .ring import SCOPES, CutDefinition, census_report
from .tiles import PatternParseError, decode, make_diamond_figure

log = logging.getLogger("diamondlab")


class UsageError(ValueError):
    pass


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    path = Path(out)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _resolve_pattern(ref: str, universe: catalog.Universe):
    if ref == "D":
        return make_diamond_figure()
    if ref.startswith("orbit:"):
        try:
            return universe.orbit[int(ref.split(":", 1)[1])]
        except (ValueError, IndexError) as exc:
            raise UsageError(f"bad orbit reference {ref!r}; use orbit:0..839") from exc
    return decode(ref)


def _resolve_point(ref: str) -> tuple[ProjPoint, int]:
    name, _, const = ref.partition(":")
    by_label = {p.label: p for p in points()}
    if name in by_label:
        point = by_label[name]
    elif name.isdigit() and 1 <= int(name) <= 15:
        point = ProjPoint(int(name))
    else:
        raise UsageError(f"bad diagram reference {ref!r}; use 1..15, a label like r0+c0, or 'all'")
    if const not in ("", "0", "1"):
        raise UsageError(f"diagram constant must be 0 or 1, got {const!r}")
    return point, int(const or 0)


def render_subject(subject: str, ref: str | None, tile: int | None = None, margin: int | None = None) -> str:
    defaults = {"pattern": 100, "diagram": 100, "structure-plate": 12, "orbit-sheet": 6, "mog-sheet": 12}
    kwargs = {"subject": subject, "tile": tile or defaults[subject]}
    if margin is not None:
        kwargs["margin"] = margin
    spec = render.RenderSpec(**kwargs)
    u = catalog.Universe()
    if subject == "pattern":
        if not ref:
            raise UsageError("render --subject pattern needs --input")
        return render.render_pattern(_resolve_pattern(ref, u), spec)
    if subject == "diagram":
        if ref in (None, "all"):
            if tile is None:
                spec = render.RenderSpec(subject, tile=20, margin=spec.margin)
            return render.render_points_sheet(spec)
        return render.render_diagram(*_resolve_point(ref), spec=spec)
    if subject == "structure-plate":
        return render.render_structure_plate(lines(), spec)
    if subject == "orbit-sheet":
        return render.render_orbit_sheet(u.classes, spec)
    mapping, _ = golay.brick_split_correspondence(golay.enumerate_octads(golay.build_golay()))
    return render.render_mog_sheet(mapping, spec)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diamondlab", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run verifiers and print a JSON report")
    p.add_argument("target", choices=("all",) + catalog.TARGETS)
    p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("render", help="write an SVG figure")
    p.add_argument("--subject", choices=render.SUBJECTS, required=True)
    p.add_argument("--input", dest="ref", help="pattern code, D, orbit:N, or a diagram reference")
    p.add_argument("--out", required=True)
    p.add_argument("--tile", type=int)
    p.add_argument("--margin", type=int)

    p = sub.add_parser("export", help="write the JSON catalog bundle")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("census", help="exact counts of cut-line definitions")
    p.add_argument("kind", choices=("cuts",))
    p.add_argument("--definition", required=True, choices=[d.value for d in CutDefinition])
    p.add_argument("--scope", default="both", choices=SCOPES)
    p.add_argument("--out")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "verify":
            report = catalog.run_verification(args.target)
            _write(catalog.dump_json(report), args.out)
            return 0 if report["passed"] else 1
        if args.command == "render":
            _write(render_subject(args.subject, args.ref, args.tile, args.margin), args.out)
            return 0
        if args.command == "export":
            for path in catalog.export_bundle(args.out):
                log.info("wrote %s", path)
            return 0
        if args.command == "census":
            _write(catalog.dump_json(census_report(args.definition, args.scope).to_dict()), args.out)
            return 0
    except (PatternParseError, UsageError, ValueError) as exc:
        print(f"diamondlab: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"diamondlab: error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(catalog.dump_json({"passed": False, "failures": [{"check": type(exc).__name__, "detail": str(exc)}]}))
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
