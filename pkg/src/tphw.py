import argparse
import sys
from typing import Optional

import pandas as pd
from dotenv import load_dotenv
from pydantic import ValidationError

from lib.Utils import Utils
from models.Errors import ExportError, TphwError
from models.Weave import WeaveSpec
from services.AppData import AppData
from services.CrossingAnalysis import CrossingAnalysis
from services.DesignOptimizer import DesignOptimizer
from services.MeshExport import MeshExport
from services.Validation import Validation
from services.WeaveCatalog import WeaveCatalog
from services.logger.Logger import _log

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAIL = 3
EXIT_IO = 4


def _weave_source(parser: argparse.ArgumentParser):
    parser.add_argument("name", nargs="?", help="Catalog name, ASCII alias or slug")
    parser.add_argument("--spec", metavar="FILE", help="Load a .weave.json file instead of a catalog row")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tphw", description="Triply periodic helical weaves")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="Catalog entries and construction status")
    p.add_argument("--tier", choices=["A", "B", "C"])

    p = sub.add_parser("info", help="Metadata of one catalog entry")
    p.add_argument("name")

    p = sub.add_parser("generate", help="Export tube meshes or centerlines")
    _weave_source(p)
    p.add_argument("--cells", type=int, default=None)
    p.add_argument("--tube-radius", type=float, default=None)
    p.add_argument("--around", type=int, default=None)
    p.add_argument("--per-turn", type=int, default=None)
    p.add_argument("--caps", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["obj", "stl", "centerlines"], default=None)

    p = sub.add_parser("validate", help="Check counts, periodicity, clearance, crossings and chirality")
    _weave_source(p)
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--gap-tol", type=float, default=None)
    p.add_argument("--grid", type=int, default=None)

    p = sub.add_parser("sweep", help="Crossing classes over a range of winding radii")
    p.add_argument("name")
    p.add_argument("--from", dest="r_from", type=float, required=True)
    p.add_argument("--to", dest="r_to", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--plot", metavar="PATH")
    p.add_argument("--reoptimize", action="store_true", help="Re-run a short phase search at every radius")

    p = sub.add_parser("optimize", help="Improve helix clearance")
    _weave_source(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--phases", action="store_true")
    mode.add_argument("--anchors", action="store_true")
    mode.add_argument("--max-radius", action="store_true")
    mode.add_argument("--freeze", action="store_true", help="Recompute the frozen winding radius of a catalog row")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--out", required=True)
    return parser


# --------------------------
# Helpers
# --------------------------

def _load(args, parser, catalog: WeaveCatalog, tube_radius: Optional[float] = None) -> WeaveSpec:
    if bool(args.name) == bool(args.spec):
        parser.error("give exactly one of a weave name or --spec FILE")
    if args.spec:
        weave = catalog.load_weave(args.spec)
        if tube_radius is not None:
            weave = weave.with_helices([h.with_updates(tube_radius=tube_radius) for h in weave.helices])
        return weave
    overrides = {"tube_radius": tube_radius} if tube_radius is not None else {}
    return catalog.build_weave(args.name, overrides)


def _write_text(path: str, text: str):
    if not AppData()._save_file(path, text):
        raise ExportError(f"could not write {path}", path=path)


# --------------------------
# Commands
# --------------------------

def cmd_list(args, parser) -> int:
    catalog = WeaveCatalog()
    rows = [WeaveCatalog.describe(e) for e in catalog.entries()]
    frame = pd.DataFrame(rows, columns=["name", "tier", "packing", "helices_per_unit", "helices_per_crossing", "chirality", "constructed"])
    if args.tier:
        frame = frame[frame["tier"] == args.tier]
    print(frame.to_string(index=False))
    return EXIT_OK


def cmd_info(args, parser) -> int:
    entry = WeaveCatalog().find_entry(args.name)
    for key, value in WeaveCatalog.describe(entry).items():
        print(f"{key:<22}{value}")
    return EXIT_OK


def cmd_generate(args, parser) -> int:
    catalog = WeaveCatalog()
    weave = _load(args, parser, catalog, args.tube_radius)
    exporter = MeshExport(around_m=args.around, per_turn_n=args.per_turn)
    fmt = args.format or ("stl" if args.out.lower().endswith(".stl") else "obj")
    if fmt == "centerlines":
        exporter.write_centerlines(weave, args.cells, args.out)
        print(f"wrote centerlines of {weave.name} to {args.out}")
        return EXIT_OK
    meshes = exporter.weave_meshes(weave, args.cells, caps=args.caps)
    if fmt == "stl":
        exporter.write_stl(meshes, args.out)
    else:
        exporter.write_obj(meshes, args.out)
    triangles = sum(m.triangle_count for m in meshes)
    print(f"wrote {len(meshes)} tubes ({triangles} triangles) of {weave.name} to {args.out}")
    return EXIT_OK


def cmd_validate(args, parser) -> int:
    catalog = WeaveCatalog()
    weave = _load(args, parser, catalog)
    report = Validation(grid_n=args.grid, gap_tol=args.gap_tol).validate(weave)
    print(Validation.report_text(report))
    if args.json:
        _write_text(args.json, Validation.report_json(report))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sweep(args, parser) -> int:
    analysis = CrossingAnalysis()
    report = analysis.radius_sweep(args.name, args.r_from, args.r_to, args.steps, reoptimize=True if args.reoptimize else None)
    frame = report.to_dataframe()
    print(frame.to_string(index=False))
    if report.transitions:
        print("transitions at winding radius: " + ", ".join(f"{r:.6g}" for r in report.transitions))
    if args.json:
        _write_text(args.json, Utils.dumps17(report.model_dump(mode="json")) + "\n")
    if args.csv:
        _write_text(args.csv, frame.to_csv(index=False, lineterminator="\n"))
    if args.plot:
        CrossingAnalysis.save_sweep_plot(report, args.plot)
    return EXIT_OK


def cmd_freeze(args, parser) -> int:
    if args.spec or not args.name:
        parser.error("--freeze works on catalog rows only")
    record = CrossingAnalysis().freeze(args.name)
    _write_text(args.out, CrossingAnalysis.freeze_document(record))
    low, high = record.window
    print(f"{record.name}: crossings {record.histogram} on winding radius [{low:.6g}, {high:.6g}], frozen at {record.radius:.6g}")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_optimize(args, parser) -> int:
    if args.freeze:
        return cmd_freeze(args, parser)
    catalog = WeaveCatalog()
    weave = _load(args, parser, catalog)
    optimizer = DesignOptimizer()
    changes = {"seed": args.seed}
    if args.restarts is not None:
        changes["restarts"] = args.restarts
    cfg = optimizer.default_config(**changes)

    if args.phases:
        result = catalog.fit_tube_radius(optimizer.optimize_phases(weave, cfg))
    elif args.anchors:
        result = catalog.fit_tube_radius(optimizer.optimize_anchors(weave, cfg))
    else:
        rho = optimizer.max_tube_radius(weave)
        provenance = dict(weave.provenance or {})
        provenance["max_tube_radius"] = rho
        result = weave.with_helices([h.with_updates(tube_radius=rho) for h in weave.helices], provenance=provenance)
        print(f"max tube radius of {weave.name}: {Utils.format17(rho)}")

    catalog.save_weave(result, args.out)
    record = (result.provenance or {}).get("optimizer")
    if record:
        print(f"min centerline distance {record['objective_start']:.9g} -> {record['objective']:.9g} (seed {args.seed})")
    print(f"wrote {args.out}")
    return EXIT_OK


COMMANDS = {
    "list": cmd_list,
    "info": cmd_info,
    "generate": cmd_generate,
    "validate": cmd_validate,
    "sweep": cmd_sweep,
    "optimize": cmd_optimize,
}


def run(argv=None) -> int:
    """
    Parse `argv`, run the subcommand and map failures to exit codes.

    Returns:
        int: 0 success, 2 usage, 3 validation FAIL, 4 IO/parse, 5 numerical failure.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        return COMMANDS[args.command](args, parser)
    except SystemExit as e:
        return int(e.code or 0)
    except TphwError as e:
        _log(f"{type(e).__name__}: {e}", e.context, level="ERROR")
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: invalid input: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    load_dotenv()
    sys.exit(run())
