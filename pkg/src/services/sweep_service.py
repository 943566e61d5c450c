"""Run the constructions over whole families of inputs and tally the results.

Every sweep is deterministic: tree families are enumerated exhaustively and
random families are drawn from a seeded generator.
"""
from __future__ import annotations

import logging
from typing import Callable, Iterator

import networkx as nx
import numpy as np

from src.config import DEFAULT_FACE_LIMIT, INFINITY
from src.models.layering import FoldPlan
from src.models.orthotree import DualOrthotreeSpec, WheelStep
from src.models.outer import OuterPattern
from src.models.report import CheckReport, SweepSummary
from src.models.tree import PlaneTree
from src.services.connectivity_service import ConnectivityError, connectivity, connectivity_check
from src.services.foldcheck_service import (
    FoldMapError,
    build_fold_map,
    convexity_check,
    kawasaki_check,
    maekawa_check,
)
from src.services.layering_service import LayeringError, LayeringService, PlanConflict
from src.services.orthotree_service import (
    WheelError,
    dual_orthotree_graph,
    matches_spec,
    realize_dual_orthotree,
)
from src.services.outer_service import (
    OuterPatternError,
    chord_graph,
    disk_fold_plan,
    outer_fold_map,
    random_disk_pattern,
    realize_outerplanar_on_disk,
    validate_outer,
)
from src.services.spine_service import realize_tree_on_polygon, square_tree_realizable
from src.services.square_service import SquarePlanError, random_square_pattern, square_fold_plan
from src.services.treefold_service import (
    TreeFoldError,
    check_tree_foldable,
    matches_tree,
    protected_wedge_check,
    realize_tree,
    wedge_certificate_check,
)

logger = logging.getLogger(__name__)


def _trees(max_nodes: int) -> Iterator[PlaneTree]:
    """One plane tree per isomorphism class, smallest first."""
    yield PlaneTree.from_edges([], nodes=[0])
    for n in range(2, max_nodes + 1):
        for g in nx.nonisomorphic_trees(n):
            yield PlaneTree.from_graph(g)


def _describe(t: PlaneTree) -> str:
    return f"tree {sorted(t.to_graph().edges)}"


def _failed(reports: list[CheckReport]) -> str | None:
    bad = [r for r in reports if not r.ok]
    if not bad:
        return None
    return "; ".join(f"{r.name}: {r.violations[0]}" for r in bad)


class _Tally:
    """Counts inputs and collects one line per failure."""

    def __init__(self, name: str) -> None:
        self.name = name
        self.checked = 0
        self.succeeded = 0
        self.skipped = 0
        self.failures: list[str] = []

    def record(self, label: str, problem: str | None) -> None:
        self.checked += 1
        if problem is None:
            self.succeeded += 1
        else:
            self.failures.append(f"{label}: {problem}")

    def skip(self, label: str, reason: str) -> None:
        self.skipped += 1
        logger.debug("%s skipped: %s", label, reason)

    def summary(self) -> SweepSummary:
        result = SweepSummary(self.name, self.checked, self.succeeded, tuple(self.failures), self.skipped)
        log = logger.info if result.passed else logger.warning
        log("Sweep %s: %d/%d succeeded, %d skipped", self.name, self.succeeded, self.checked, self.skipped)
        return result


# ── Tree theorem ─────────────────────────────────────────────────────────


def _tree_problem(t: PlaneTree, with_connectivity: bool) -> str | None:
    verdict = check_tree_foldable(t)
    if not verdict.ok:
        try:
            realize_tree(t)
        except TreeFoldError:
            return None
        return f"realized although {verdict.reason}"
    try:
        r = realize_tree(t)
    except TreeFoldError as exc:
        return f"rejected: {exc}"
    p = r.pattern
    if not matches_tree(r):
        return "truncated graph differs from the tree"
    reports = [maekawa_check(p), kawasaki_check(p), convexity_check(p), wedge_certificate_check(r)]
    try:
        m = build_fold_map(p)
        layering = LayeringService(m).plan_to_layering(r.plan, validate=True)
    except (FoldMapError, PlanConflict) as exc:
        return f"layering: {exc}"
    reports.append(protected_wedge_check(r, m, layering))
    if with_connectivity:
        reports.append(connectivity_check(p))
    return _failed(reports)


def tree_sweep(max_edges: int = 12, with_connectivity: bool = True) -> SweepSummary:
    """Realize every tree with at most ``max_edges`` edges, or confirm it is rejected."""
    tally = _Tally("trees")
    for t in _trees(max_edges + 1):
        tally.record(_describe(t), _tree_problem(t, with_connectivity))
    return tally.summary()


# ── Disks ────────────────────────────────────────────────────────────────


def _plan_problem(service: LayeringService, plan: FoldPlan, faces: int, limit: int) -> str | None:
    try:
        service.plan_to_layering(plan, validate=True)
    except PlanConflict as exc:
        return f"plan: {exc}"
    if faces <= limit:
        try:
            if service.search(limit) is None:
                return "search finds no layering although the plan folds"
        except LayeringError as exc:
            return f"search: {exc}"
    return None


def _random_sweep(
    name: str,
    count: int,
    seed: int,
    draw: Callable[[np.random.Generator], OuterPattern],
    plan_of: Callable[[OuterPattern], FoldPlan],
    limit: int,
) -> SweepSummary:
    rng = np.random.default_rng(seed)
    tally = _Tally(name)
    for i in range(count):
        p = draw(rng)
        try:
            plan = plan_of(p)
            service = LayeringService(outer_fold_map(p))
            problem = _plan_problem(service, plan, len(p.chords) + 1, limit)
        except (OuterPatternError, SquarePlanError, FoldMapError) as exc:
            problem = str(exc)
        tally.record(f"{name} {i} (seed {seed})", problem)
    return tally.summary()


def disk_sweep(count: int = 1000, seed: int = 0, max_chords: int = 10, limit: int = DEFAULT_FACE_LIMIT) -> SweepSummary:
    """Random non-crossing chord sets on the disk: the plan folds and the search agrees."""

    def draw(rng: np.random.Generator) -> OuterPattern:
        chords = int(rng.integers(1, max_chords + 1))
        return random_disk_pattern(rng, points=2 * chords + 2, chords=chords)

    return _random_sweep("disk", count, seed, draw, disk_fold_plan, limit)


def square_sweep(count: int = 1000, seed: int = 0, max_chords: int = 10, limit: int = DEFAULT_FACE_LIMIT) -> SweepSummary:
    """Random square patterns: the planned arrangement folds and the search agrees."""

    def draw(rng: np.random.Generator) -> OuterPattern:
        return random_square_pattern(rng, chords=int(rng.integers(1, max_chords + 1)))

    return _random_sweep("square", count, seed, draw, lambda p: square_fold_plan(p).plan, limit)


def outerplanar_sweep(max_vertices: int = 7) -> SweepSummary:
    """Every graph of the atlas up to ``max_vertices``: drawn on the disk exactly when outerplanar."""
    tally = _Tally("outerplanar")
    for index, g in enumerate(nx.graph_atlas_g()):
        if g.number_of_nodes() == 0 or g.number_of_nodes() > max_vertices:
            continue
        apexed = nx.Graph(g)
        apexed.add_edges_from(("apex", v) for v in g.nodes)
        outerplanar, _ = nx.check_planarity(apexed)
        try:
            p = realize_outerplanar_on_disk(g)
        except OuterPatternError as exc:
            tally.record(f"atlas {index}", f"rejected: {exc}" if outerplanar else None)
            continue
        if not outerplanar:
            problem = "drawn although not outerplanar"
        elif not nx.is_isomorphic(chord_graph(p), g):
            problem = "chord graph differs"
        else:
            problem = _failed([validate_outer(p)])
        tally.record(f"atlas {index}", problem)
    return tally.summary()


# ── Trees on squares ─────────────────────────────────────────────────────


def _square_tree_folds(t: PlaneTree) -> bool:
    try:
        p = realize_tree_on_polygon(t)
        if not validate_outer(p).ok or not nx.is_isomorphic(chord_graph(p), t.to_graph()):
            return False
        plan = square_fold_plan(p).plan
        LayeringService(outer_fold_map(p)).plan_to_layering(plan, validate=True)
    except (OuterPatternError, SquarePlanError, PlanConflict, FoldMapError) as exc:
        logger.debug("%s does not fold on the square: %s", _describe(t), exc)
        return False
    return True


def square_tree_sweep(max_vertices: int = 12) -> SweepSummary:
    """The spine-leaf predicate agrees with drawing and folding every tree on the square."""
    tally = _Tally("square trees")
    for t in _trees(max_vertices):
        predicted = square_tree_realizable(t)
        folds = _square_tree_folds(t)
        problem = None if predicted == folds else f"predicted {predicted}, folded {folds}"
        tally.record(_describe(t), problem)
    return tally.summary()


# ── Dual orthotrees ──────────────────────────────────────────────────────


def _specs(max_steps: int) -> Iterator[DualOrthotreeSpec]:
    """Specs up to ``max_steps`` steps, one per isomorphism class of graph at each depth."""
    level = [DualOrthotreeSpec()]
    yield level[0]
    for _ in range(max_steps):
        seen: list[nx.MultiGraph] = []
        nxt: list[DualOrthotreeSpec] = []
        for spec in level:
            g = dual_orthotree_graph(spec)
            for target in sorted(g.graph.nodes, key=str):
                child = spec.extended(WheelStep(target))
                graph = dual_orthotree_graph(child).graph
                if any(nx.is_isomorphic(graph, other) for other in seen):
                    continue
                seen.append(graph)
                nxt.append(child)
                yield child
        level = nxt


def orthotree_sweep(max_steps: int = 4) -> SweepSummary:
    """Connectivity of every dual orthotree graph, and agreement of fold-level replacement."""
    tally = _Tally("orthotrees")
    for spec in _specs(max_steps):
        label = f"targets {[s.target for s in spec.steps]}"
        g = dual_orthotree_graph(spec)
        try:
            report = connectivity(g)
        except ConnectivityError as exc:
            tally.record(label, str(exc))
            continue
        if not (report.is_vertex_connected(2) and report.is_edge_connected(4)) or report.infinity_articulation:
            tally.record(label, f"kappa {report.vertex_connectivity}, lambda {report.edge_connectivity}")
            continue
        try:
            p = realize_dual_orthotree(spec)
        except WheelError as exc:
            if any(s.target == INFINITY for s in spec.steps):
                # ∞ steps need the whole image inside a narrow wedge
                tally.skip(label, f"no fold-level realization: {exc}")
                continue
            tally.record(label, str(exc))
            continue
        if not matches_spec(p, spec):
            tally.record(label, "folding graph differs from the spec graph")
            continue
        tally.record(label, _failed([maekawa_check(p), kawasaki_check(p), connectivity_check(p)]))
    return tally.summary()
