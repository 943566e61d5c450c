"""Command-line surface for creasefold.

Exit codes: 0 when every check passes, 1 for a failed check or a
construction whose precondition does not hold, 2 for unreadable or
malformed documents.

Examples::

    python main.py validate star.json
    python main.py fold-tree spider.json --output out/
    python main.py fold-square spider5.json
    python main.py render star.json --output star.svg --wedges
    python main.py fixtures no-safe-crease --output fixtures/
    python main.py sweep disk --count 1000 --seed 0
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from src.config import DEFAULT_FACE_LIMIT
from src.models.layering import FoldPlan, Layering
from src.models.outer import OuterPattern
from src.models.pattern import CreasePattern
from src.models.report import CheckReport
from src.repositories.documents import DocumentError, loads, peek_kind, read_text, save_document
from src.services import sweep_service
from src.services.connectivity_service import connectivity, three_point_separator_search
from src.services.export_svg import render_outer_svg, render_pattern_svg
from src.services.fixtures import FIXTURES, write_fixture
from src.services.foldcheck_service import build_fold_map
from src.services.layering_service import LayeringService, mountain_valley
from src.services.orthotree_service import dali_cross_spec, matches_spec, realize_dual_orthotree
from src.services.outer_service import disk_fold_plan, outer_fold_map, plan_check
from src.services.pattern_service import folding_graph
from src.services.spine_service import realize_tree_on_polygon
from src.services.square_service import square_fold_plan
from src.services.treefold_service import realize_tree, wedge_certificate_check
from src.services.validation_service import ValidationService

logger = logging.getLogger(__name__)


@dataclass
class Outcome:
    """What a command prints and the exit code it ends with."""
    code: int = 0
    lines: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    written: list[Path] = field(default_factory=list)


def _load(path: str, kinds: tuple[str, ...]) -> tuple[str, Any]:
    text = read_text(path)
    kind = peek_kind(text)
    if kind not in kinds:
        raise DocumentError(f"Expected a {' or '.join(kinds)} document, found {kind!r}")
    return kind, loads(kind, text)


def _write(outcome: Outcome, args: argparse.Namespace, stem: str, kind: str, value: Any) -> None:
    if args.output is None:
        return
    outcome.written.append(save_document(kind, value, Path(args.output) / f"{stem}-{kind}.json"))


def _add_report(outcome: Outcome, report: CheckReport) -> None:
    outcome.lines.extend(report.lines())
    outcome.data.setdefault("checks", {})[report.name] = [str(v) for v in report.violations]
    if not report.ok:
        outcome.code = 1


def _fold_counts(folds: dict) -> str:
    values = [f.value for f in folds.values()]
    return f"{values.count('mountain')} mountain, {values.count('valley')} valley"


# ── Commands ─────────────────────────────────────────────────────────────


def cmd_validate(args: argparse.Namespace) -> Outcome:
    kind, value = _load(args.file, ("pattern", "outer"))
    service = ValidationService()
    summary = service.summarize(value) if kind == "pattern" else service.summarize_outer(value)
    return Outcome(0 if summary.passed else 1, summary.lines(), summary.to_dict())


def _pattern_outcome(outcome: Outcome, args: argparse.Namespace, stem: str, p: CreasePattern,
                     plan: FoldPlan | None) -> None:
    """Validate a constructed pattern, derive its layering and write it all out."""
    summary = ValidationService().summarize(p)
    outcome.lines.extend(summary.lines())
    outcome.data.update(summary.to_dict())
    if not summary.passed:
        outcome.code = 1
    m = build_fold_map(p)
    service = LayeringService(m)
    layering: Layering | None
    if plan is not None:
        layering = service.plan_to_layering(plan)
    else:
        layering = service.search(args.limit_faces) if len(m.faces.faces) <= args.limit_faces else None
    _write(outcome, args, stem, "pattern", p)
    if plan is not None:
        _write(outcome, args, stem, "plan", plan)
    if layering is None:
        outcome.lines.append(f"layering: not searched ({len(m.faces.faces)} faces)")
        return
    _write(outcome, args, stem, "layering", layering)
    outcome.lines.append(f"layering: {len(layering.above)} ordered pairs; {_fold_counts(mountain_valley(m, layering))}")


def _outer_outcome(outcome: Outcome, args: argparse.Namespace, stem: str, p: OuterPattern, plan: FoldPlan) -> None:
    _add_report(outcome, plan_check(p, plan))
    m = outer_fold_map(p)
    service = LayeringService(m)
    _write(outcome, args, stem, "outer", p)
    _write(outcome, args, stem, "plan", plan)
    if outcome.code == 0:
        layering = service.plan_to_layering(plan)
        _write(outcome, args, stem, "layering", layering)
        outcome.lines.append(f"layering: {len(layering.above)} ordered pairs; {_fold_counts(mountain_valley(m, layering))}")
        if len(m.faces.faces) <= args.limit_faces:
            found = service.search(args.limit_faces) is not None
            outcome.lines.append(f"search: {'agrees' if found else 'finds no layering'}")
            if not found:
                outcome.code = 1


def cmd_fold_tree(args: argparse.Namespace) -> Outcome:
    _, tree = _load(args.file, ("tree",))
    r = realize_tree(tree)
    outcome = Outcome(lines=[
        f"tree: {len(tree.nodes)} nodes -> {len(r.pattern.vertices)} vertex points, "
        f"{len(r.pattern.segments)} segments, {len(r.pattern.rays)} rays",
    ])
    _add_report(outcome, wedge_certificate_check(r))
    _pattern_outcome(outcome, args, Path(args.file).stem, r.pattern, r.plan)
    return outcome


def cmd_fold_disk(args: argparse.Namespace) -> Outcome:
    _, p = _load(args.file, ("outer",))
    plan = disk_fold_plan(p)
    outcome = Outcome(lines=[f"disk: {len(p.chords)} chords, plan of {len(plan)} steps"])
    _outer_outcome(outcome, args, Path(args.file).stem, p, plan)
    return outcome


def cmd_fold_square(args: argparse.Namespace) -> Outcome:
    kind, value = _load(args.file, ("outer", "tree"))
    p = realize_tree_on_polygon(value) if kind == "tree" else value
    sq = square_fold_plan(p)
    outcome = Outcome(lines=[
        f"square: {len(p.chords)} chords, case {sq.case.value}, plan of {len(sq.plan)} steps",
        f"  corners: {', '.join(c.value for c in sq.corner_order) or 'none'}; "
        f"quarter turns {sq.quarter_turns}, flip lr {sq.flip_lr}, flip tb {sq.flip_tb}",
    ])
    outcome.data["case"] = sq.case.value
    _outer_outcome(outcome, args, Path(args.file).stem, p, sq.plan)
    return outcome


def cmd_orthotree(args: argparse.Namespace) -> Outcome:
    if args.dali:
        spec, stem = dali_cross_spec(), "dali-cross"
    elif args.file is None:
        raise DocumentError("orthotree needs a spec file or --dali")
    else:
        _, spec = _load(args.file, ("orthotree",))
        stem = Path(args.file).stem
    p = realize_dual_orthotree(spec)
    matched = matches_spec(p, spec)
    outcome = Outcome(lines=[
        f"orthotree {spec.name or stem!r}: {len(spec.steps)} steps -> {len(p.vertices)} vertex points",
        f"graph: {'matches' if matched else 'DOES NOT MATCH'} the wheel replacements",
    ])
    if not matched:
        outcome.code = 1
    _pattern_outcome(outcome, args, stem, p, None)
    return outcome


def cmd_connectivity(args: argparse.Namespace) -> Outcome:
    _, p = _load(args.file, ("pattern",))
    report = connectivity(folding_graph(p))
    separator = three_point_separator_search(p)
    ok = (
        report.is_vertex_connected(2) and report.is_edge_connected(4)
        and not report.infinity_articulation and separator is None
    )
    kappa = "vacuous" if report.vertex_vacuous else str(report.vertex_connectivity)
    lines = [
        f"kappa: {kappa}",
        f"lambda: {report.edge_connectivity}",
        f"infinity articulation: {report.infinity_articulation}",
        f"separator: {'none' if separator is None else ', '.join(map(str, separator))}",
    ]
    data = {
        "kappa": report.vertex_connectivity,
        "vacuous": report.vertex_vacuous,
        "lambda": report.edge_connectivity,
        "infinity_articulation": report.infinity_articulation,
        "separator": None if separator is None else list(separator),
    }
    return Outcome(0 if ok else 1, lines, data)


def cmd_render(args: argparse.Namespace) -> Outcome:
    kind, value = _load(args.file, ("pattern", "outer", "tree"))
    layering = _load(args.layering, ("layering",))[1] if args.layering else None
    output = Path(args.output) if args.output else Path(args.file).with_suffix(".svg")
    if kind == "tree":
        r = realize_tree(value)
        if args.layering is None and args.layers:
            layering = LayeringService(build_fold_map(r.pattern)).plan_to_layering(r.plan)
        path = render_pattern_svg(r.pattern, output, wedges=r.wedges if args.wedges else None, layering=layering)
    elif kind == "pattern":
        path = render_pattern_svg(value, output, layering=layering)
    else:
        if args.layering is None and args.layers:
            layering = LayeringService(outer_fold_map(value)).plan_to_layering(disk_fold_plan(value))
        path = render_outer_svg(value, output, layering=layering)
    return Outcome(lines=[f"wrote {path}"], written=[path])


def cmd_fixtures(args: argparse.Namespace) -> Outcome:
    if not args.names:
        return Outcome(lines=list(FIXTURES))
    names = list(FIXTURES) if args.names == ["all"] else args.names
    out = Path(args.output or ".")
    outcome = Outcome()
    for name in names:
        fixture, paths = write_fixture(name, out, args.limit_faces)
        verdict = fixture.verdict
        flag = " (DISCREPANCY: expected " + repr(verdict.expected) + ")" if verdict.discrepancy else ""
        outcome.lines.append(f"{name}: {verdict.observed}{flag}")
        outcome.data[name] = verdict.manifest()
        outcome.written.extend(paths)
    return outcome


SWEEPS: dict[str, Callable[[argparse.Namespace], Any]] = {
    "tree": lambda a: sweep_service.tree_sweep(a.size or 12),
    "disk": lambda a: sweep_service.disk_sweep(a.count, a.seed, a.size or 10, a.limit_faces),
    "square": lambda a: sweep_service.square_sweep(a.count, a.seed, a.size or 10, a.limit_faces),
    "outerplanar": lambda a: sweep_service.outerplanar_sweep(a.size or 7),
    "square-tree": lambda a: sweep_service.square_tree_sweep(a.size or 12),
    "orthotree": lambda a: sweep_service.orthotree_sweep(a.size or 4),
}


def cmd_sweep(args: argparse.Namespace) -> Outcome:
    summary = SWEEPS[args.name](args)
    data = {"checked": summary.checked, "succeeded": summary.succeeded,
            "skipped": summary.skipped, "failures": list(summary.failures)}
    return Outcome(0 if summary.passed else 1, summary.lines(), data)


def cmd_view(args: argparse.Namespace) -> Outcome:
    from PyQt6.QtWidgets import QApplication

    from src.ui.main_window import MainWindow
    from src.ui.theme import get_stylesheet

    app = QApplication.instance() or QApplication(sys.argv[:1])
    app.setApplicationName("creasefold")
    app.setStyle("Fusion")
    app.setStyleSheet(get_stylesheet())
    window = MainWindow(args.file)
    window.show()
    return Outcome(app.exec())


# ── Parser ───────────────────────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="report format")
    common.add_argument("--limit-faces", type=int, default=DEFAULT_FACE_LIMIT,
                        help="largest face count for exhaustive layering search")
    common.add_argument("--output", help="output directory (output file for render)")
    common.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")

    parser = argparse.ArgumentParser(prog="creasefold", description="Flat-folding checks and constructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="run every check on a pattern document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("fold-tree", parents=[common], help="realize a tree document as a flat folding")
    p.add_argument("file")
    p.set_defaults(func=cmd_fold_tree)

    p = sub.add_parser("fold-disk", parents=[common], help="plan an outer folding of a disk")
    p.add_argument("file")
    p.set_defaults(func=cmd_fold_disk)

    p = sub.add_parser("fold-square", parents=[common], help="plan an outer folding of a square or a tree on one")
    p.add_argument("file")
    p.set_defaults(func=cmd_fold_square)

    p = sub.add_parser("orthotree", parents=[common], help="realize a dual orthotree spec")
    p.add_argument("file", nargs="?")
    p.add_argument("--dali", action="store_true", help="use the eight-cube cross spec")
    p.set_defaults(func=cmd_orthotree)

    p = sub.add_parser("connectivity", parents=[common], help="connectivity of a pattern's folding graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_connectivity)

    p = sub.add_parser("render", parents=[common], help="draw a pattern, outer pattern or tree as SVG")
    p.add_argument("file")
    p.add_argument("--layering", help="layering document for mountain/valley colours and stack labels")
    p.add_argument("--layers", action="store_true", help="derive the layering from the construction's plan")
    p.add_argument("--wedges", action="store_true", help="shade the certified wedges of a tree realization")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("fixtures", parents=[common], help="write named fixtures and their manifests")
    p.add_argument("names", nargs="*", help="fixture names, or 'all'; none lists them")
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("sweep", parents=[common], help="run a construction over a family of inputs")
    p.add_argument("name", choices=sorted(SWEEPS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1000, help="random samples for disk and square sweeps")
    p.add_argument("--size", type=int, help="largest tree, graph, chord set or spec depth")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("view", parents=[common], help="open a pattern in the desktop viewer")
    p.add_argument("file", nargs="?")
    p.set_defaults(func=cmd_view)
    return parser


def _emit(outcome: Outcome, fmt: str) -> None:
    if fmt == "json":
        doc = dict(outcome.data, exit_code=outcome.code, written=[str(p) for p in outcome.written])
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for line in outcome.lines:
            print(line)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if not logging.getLogger().handlers:
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.WARNING,
            format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        )
    try:
        outcome = args.func(args)
    except (DocumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(outcome, args.format)
    return outcome.code
