"""Named reconstructions of the counterexamples and witnesses, with their verdicts.

Each fixture rebuilds a pattern, runs the checks that characterise it and
compares the outcome with the verdict it is meant to show. Geometry for the
counterexamples is reconstructed from their descriptions: each is the first
member of a small family that passes its local checks and has no layering.
A family with no such member keeps its first valid member, and the mismatch
is recorded and logged rather than treated as an error.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cache
from pathlib import Path
from typing import Any, Callable, Iterable

from src.config import DEFAULT_FACE_LIMIT
from src.models.report import FixtureVerdict
from src.repositories.documents import ManifestRepository, save_document
from src.services.catalog import (
    enclosed_vertex_pattern,
    nested_flaps_variants,
    no_safe_crease_square,
    twisted_triangle_variants,
)
from src.services.connectivity_service import connectivity, three_point_separator_search, tightness_witnesses
from src.services.foldcheck_service import build_fold_map, convexity_check, kawasaki_check, maekawa_check
from src.services.layering_service import LayeringService
from src.services.orthotree_service import dali_cross_spec, dual_orthotree_graph
from src.services.outer_service import is_safe_crease, outer_fold_map, plan_check, validate_outer
from src.services.pattern_service import folding_graph, validate_pattern
from src.services.square_service import SquarePlanError, square_fold_plan

logger = logging.getLogger(__name__)

NO_LAYERING = "local checks pass; no layering"


class FixtureError(ValueError):
    """Raised for unknown fixture names."""


@dataclass(frozen=True)
class Fixture:
    kind: str  # document kind of ``value``
    value: Any
    verdict: FixtureVerdict


def _layering_verdict(local_ok: bool, service: LayeringService, limit: int) -> str:
    local = "local checks pass" if local_ok else "local checks fail"
    found = service.search(limit) is not None
    return f"{local}; {'layering found' if found else 'no layering'}"


def _no_safe_crease(limit: int) -> Fixture:
    p = no_safe_crease_square()
    unsafe = sum(1 for c in range(len(p.chords)) if not is_safe_crease(p, c).safe)
    try:
        folds = plan_check(p, square_fold_plan(p).plan).ok
    except SquarePlanError:
        folds = False
    observed = f"{unsafe}/{len(p.chords)} creases unsafe; square plan {'folds' if folds else 'fails'}"
    return Fixture("outer", p, FixtureVerdict("no-safe-crease", "3/3 creases unsafe; square plan folds", observed))


def _first_without_layering(
    candidates: Iterable[Any], local_ok: Callable[[Any], bool], fold_map: Callable[[Any], Any], limit: int,
) -> tuple[Any, str]:
    """First locally valid candidate with no layering, else the first locally valid one."""
    fallback: tuple[Any, str] | None = None
    for index, p in enumerate(candidates):
        if not local_ok(p):
            logger.debug("Candidate %d fails its local checks", index)
            continue
        observed = _layering_verdict(True, LayeringService(fold_map(p)), limit)
        if observed == NO_LAYERING:
            logger.debug("Candidate %d has no layering", index)
            return p, observed
        fallback = fallback or (p, observed)
    if fallback is None:
        raise FixtureError("No candidate passes its local checks")
    return fallback


def _pattern_local_ok(p: Any) -> bool:
    checks = (validate_pattern, maekawa_check, kawasaki_check, convexity_check)
    return all(check(p).ok for check in checks)


@cache
def _tree_counterexample(limit: int) -> Fixture:
    p, observed = _first_without_layering(nested_flaps_variants(), _pattern_local_ok, build_fold_map, limit)
    return Fixture("pattern", p, FixtureVerdict("tree-counterexample", NO_LAYERING, observed))


@cache
def _unfoldable_triangle(limit: int) -> Fixture:
    p, observed = _first_without_layering(
        twisted_triangle_variants(), lambda q: validate_outer(q).ok, outer_fold_map, limit,
    )
    return Fixture("outer", p, FixtureVerdict("unfoldable-triangle", NO_LAYERING, observed))


def _tightness_path(limit: int) -> Fixture:
    p = tightness_witnesses().vertex_tight.pattern
    report = connectivity(folding_graph(p))
    observed = f"kappa {report.vertex_connectivity}, lambda {report.edge_connectivity}"
    return Fixture("pattern", p, FixtureVerdict("tightness-path", "kappa 2, lambda 4", observed))


def _tightness_star(limit: int) -> Fixture:
    p = tightness_witnesses().edge_tight.pattern
    report = connectivity(folding_graph(p))
    return Fixture("pattern", p, FixtureVerdict("tightness-star", "lambda 4", f"lambda {report.edge_connectivity}"))


def _corrupted_separator(limit: int) -> Fixture:
    p = enclosed_vertex_pattern()
    found = three_point_separator_search(p) is not None
    observed = "separator found" if found else "no separator"
    return Fixture("pattern", p, FixtureVerdict("corrupted-separator", "separator found", observed))


def _dali_cross(limit: int) -> Fixture:
    spec = dali_cross_spec()
    g = dual_orthotree_graph(spec)
    degrees = {d for _, d in g.graph.degree()}
    shape = "all degree 4" if degrees == {4} else f"degrees {sorted(degrees)}"
    observed = f"{g.graph.number_of_nodes()} vertices, {shape}"
    return Fixture("orthotree", spec, FixtureVerdict("dali-cross", "34 vertices, all degree 4", observed))


FIXTURES: dict[str, Callable[[int], Fixture]] = {
    "no-safe-crease": _no_safe_crease,
    "tree-counterexample": _tree_counterexample,
    "unfoldable-triangle": _unfoldable_triangle,
    "tightness-path": _tightness_path,
    "tightness-star": _tightness_star,
    "corrupted-separator": _corrupted_separator,
    "dali-cross": _dali_cross,
}


def build_fixture(name: str, limit: int = DEFAULT_FACE_LIMIT) -> Fixture:
    if name not in FIXTURES:
        raise FixtureError(f"Unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    fixture = FIXTURES[name](limit)
    if fixture.verdict.discrepancy:
        logger.warning(
            "Fixture %s: expected %r, observed %r", name, fixture.verdict.expected, fixture.verdict.observed,
        )
    else:
        logger.info("Fixture %s: %s", name, fixture.verdict.observed)
    return fixture


def write_fixture(name: str, directory: Path | str, limit: int = DEFAULT_FACE_LIMIT) -> tuple[Fixture, list[Path]]:
    """Write ``<name>.json`` and ``<name>.manifest.json`` into ``directory``."""
    fixture = build_fixture(name, limit)
    out = Path(directory)
    written = [
        save_document(fixture.kind, fixture.value, out / f"{name}.json"),
        ManifestRepository(out).save(f"{name}.manifest", {"document": fixture.kind, **fixture.verdict.manifest()}),
    ]
    return fixture, written
