"""SVG diagrams of crease patterns and chord patterns.

Geometry is first collected into a ``Scene`` in sheet coordinates, then
painted with QPainter. The same painting routine serves the SVG generator
and the desktop viewer.
"""
from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, replace
from pathlib import Path

import networkx as nx
from PyQt6.QtCore import QPointF, QRectF, QSize, Qt
from PyQt6.QtGui import QBrush, QColor, QFont, QGuiApplication, QPainter, QPen, QPolygonF
from PyQt6.QtSvg import QSvgGenerator
from shapely.geometry import Polygon, box

from src.config import CLIP_INFLATE, RENDER_SCALE
from src.models.fold import FoldMap
from src.models.geom import Point2, TurnAngle, Wedge
from src.models.layering import Fold, Layering
from src.models.outer import Disk, OuterPattern
from src.models.pattern import CreasePattern, Face
from src.services.foldcheck_service import build_fold_map
from src.services.geometry import wedge_polygon
from src.services.layering_service import mountain_valley
from src.services.outer_service import outer_fold_map, require_outer
from src.services.pattern_service import require_valid
from src.ui.theme import PRINT_PALETTE, CreasePalette

logger = logging.getLogger(__name__)

_apps: list[QGuiApplication] = []


@dataclass(frozen=True)
class Stroke:
    start: Point2
    end: Point2
    fold: Fold | None = None


@dataclass(frozen=True)
class Scene:
    """Everything a diagram shows, in sheet coordinates."""
    bounds: tuple[float, float, float, float]  # min x, min y, max x, max y
    creases: tuple[Stroke, ...]
    arrows: tuple[tuple[Point2, TurnAngle], ...] = ()  # ray tip and direction
    outline: tuple[Point2, ...] = ()  # dashed boundary polygon
    circle: tuple[Point2, float] | None = None  # dashed boundary circle
    fans: tuple[tuple[Point2, ...], ...] = ()
    labels: tuple[tuple[Point2, int], ...] = ()

    @property
    def width(self) -> float:
        return self.bounds[2] - self.bounds[0]

    @property
    def height(self) -> float:
        return self.bounds[3] - self.bounds[1]

    def contains(self, q: Point2) -> bool:
        x0, y0, x1, y1 = self.bounds
        return x0 <= q.x <= x1 and y0 <= q.y <= y1


# ── Scene building ───────────────────────────────────────────────────────


def stack_levels(layering: Layering, face_ids: list[int]) -> dict[int, int]:
    """Level of each face in the stack, 0 for faces with nothing below them."""
    order = nx.DiGraph()
    order.add_nodes_from(face_ids)
    order.add_edges_from((lower, upper) for upper, lower in layering.above)
    levels: dict[int, int] = {}
    for level, generation in enumerate(nx.topological_generations(order)):
        for f in generation:
            levels[f] = level
    return levels


def _label_spot(face: Face, scene: Scene) -> Point2 | None:
    if face.polygon is None:
        return face.sample if scene.contains(face.sample) else None
    visible = Polygon([q.as_tuple() for q in face.polygon]).intersection(box(*scene.bounds))
    if visible.is_empty or visible.area == 0:
        return None
    spot = visible.representative_point()
    return Point2(spot.x, spot.y)


def _labels(m: FoldMap, layering: Layering, scene: Scene) -> tuple[tuple[Point2, int], ...]:
    levels = stack_levels(layering, [f.id for f in m.faces.faces])
    out: list[tuple[Point2, int]] = []
    for face in m.faces.faces:
        spot = _label_spot(face, scene)
        if spot is not None:
            out.append((spot, levels[face.id]))
    return tuple(out)


def _ray_tip(apex: Point2, direction: TurnAngle, bounds: tuple[float, float, float, float]) -> Point2:
    """Point where a ray from inside the box leaves it."""
    x0, y0, x1, y1 = bounds
    d = direction.unit
    reach = math.inf
    if abs(d.x) > 1e-12:
        reach = min(reach, ((x1 if d.x > 0 else x0) - apex.x) / d.x)
    if abs(d.y) > 1e-12:
        reach = min(reach, ((y1 if d.y > 0 else y0) - apex.y) / d.y)
    return apex + d.scaled(reach)


def _clip_box(p: CreasePattern) -> tuple[float, float, float, float]:
    xs = [q.x for q in p.vertices.values()]
    ys = [q.y for q in p.vertices.values()]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - min(xs), max(ys) - min(ys), 2.0) / 2 * CLIP_INFLATE
    return cx - half, cy - half, cx + half, cy + half


def pattern_scene(
    p: CreasePattern,
    wedges: dict[int, Wedge] | None = None,
    layering: Layering | None = None,
    fold_map: FoldMap | None = None,
) -> Scene:
    require_valid(p)
    bounds = _clip_box(p)
    if layering is not None and fold_map is None:
        fold_map = build_fold_map(p)
    folds = mountain_valley(fold_map, layering) if layering is not None else {}

    creases: list[Stroke] = []
    arrows: list[tuple[Point2, TurnAngle]] = []
    for crease in p.creases:
        start = p.vertices[crease.a]
        if crease.is_ray:
            end = _ray_tip(start, crease.heading, bounds)
            arrows.append((end, crease.heading))
        else:
            end = p.vertices[crease.b]
        creases.append(Stroke(start, end, folds.get(crease.id)))

    x0, y0, x1, y1 = bounds
    reach = max(x1 - x0, y1 - y0) / 4
    fans = tuple(
        tuple(Point2(x, y) for x, y in list(wedge_polygon(w, reach).exterior.coords)[:-1])
        for _, w in sorted((wedges or {}).items())
    )
    scene = Scene(
        bounds=bounds,
        creases=tuple(creases),
        arrows=tuple(arrows),
        outline=(Point2(x0, y0), Point2(x1, y0), Point2(x1, y1), Point2(x0, y1)),
        fans=fans,
    )
    if layering is not None:
        scene = _with_labels(scene, fold_map, layering)
    return scene


def outer_scene(p: OuterPattern, layering: Layering | None = None, fold_map: FoldMap | None = None) -> Scene:
    require_outer(p)
    if layering is not None and fold_map is None:
        fold_map = outer_fold_map(p)
    folds = mountain_valley(fold_map, layering) if layering is not None else {}
    creases = tuple(Stroke(*p.chord_line(i), folds.get(i)) for i in range(len(p.chords)))

    if isinstance(p.region, Disk):
        c, r = p.region.center, p.region.radius
        box = (c.x - r, c.y - r, c.x + r, c.y + r)
        outline: tuple[Point2, ...] = ()
        circle: tuple[Point2, float] | None = (c, r)
    else:
        corners = p.region.corners
        box = (
            min(q.x for q in corners), min(q.y for q in corners),
            max(q.x for q in corners), max(q.y for q in corners),
        )
        outline, circle = corners, None
    pad = 0.05 * max(box[2] - box[0], box[3] - box[1])
    scene = Scene(
        bounds=(box[0] - pad, box[1] - pad, box[2] + pad, box[3] + pad),
        creases=creases,
        outline=outline,
        circle=circle,
    )
    if layering is not None:
        scene = _with_labels(scene, fold_map, layering)
    return scene


def _with_labels(scene: Scene, m: FoldMap, layering: Layering) -> Scene:
    return replace(scene, labels=_labels(m, layering, scene))


# ── Painting ─────────────────────────────────────────────────────────────


class _Canvas:
    """Sheet-to-pixel mapping with y pointing up on the sheet."""

    def __init__(self, scene: Scene, scale: float, origin: QPointF | None = None) -> None:
        self._x0 = scene.bounds[0]
        self._y1 = scene.bounds[3]
        self._scale = scale
        self._origin = QPointF(0.0, 0.0) if origin is None else origin

    def at(self, q: Point2) -> QPointF:
        return QPointF(
            self._origin.x() + (q.x - self._x0) * self._scale,
            self._origin.y() + (self._y1 - q.y) * self._scale,
        )


def paint_scene(
    painter: QPainter,
    scene: Scene,
    scale: float,
    palette: CreasePalette = PRINT_PALETTE,
    origin: QPointF | None = None,
) -> None:
    canvas = _Canvas(scene, scale, origin)
    painter.setRenderHint(QPainter.RenderHint.Antialiasing)
    if palette.background is not None:
        top_left = canvas.at(Point2(scene.bounds[0], scene.bounds[3]))
        painter.fillRect(
            QRectF(top_left.x(), top_left.y(), scene.width * scale, scene.height * scale),
            QColor(palette.background),
        )

    # Wedge fans
    fill = QColor(palette.wedge)
    fill.setAlpha(palette.wedge_alpha)
    painter.setPen(Qt.PenStyle.NoPen)
    painter.setBrush(QBrush(fill))
    for fan in scene.fans:
        painter.drawPolygon(QPolygonF([canvas.at(q) for q in fan]))

    # Sheet boundary
    painter.setBrush(Qt.BrushStyle.NoBrush)
    painter.setPen(QPen(QColor(palette.boundary), 1.5, Qt.PenStyle.DashLine))
    if scene.circle is not None:
        center, radius = scene.circle
        painter.drawEllipse(canvas.at(center), radius * scale, radius * scale)
    if scene.outline:
        painter.drawPolygon(QPolygonF([canvas.at(q) for q in scene.outline]))

    # Creases
    colors = {None: palette.crease, Fold.MOUNTAIN: palette.mountain, Fold.VALLEY: palette.valley}
    for stroke in scene.creases:
        painter.setPen(QPen(QColor(colors[stroke.fold]), 2.0))
        painter.drawLine(canvas.at(stroke.start), canvas.at(stroke.end))

    # Arrowheads on rays
    head = 0.03 * max(scene.width, scene.height)
    painter.setPen(QPen(QColor(palette.crease), 2.0))
    for tip, direction in scene.arrows:
        for side in (1, -1):
            back = direction + TurnAngle.of_radians(side * 5 * math.pi / 6)
            painter.drawLine(canvas.at(tip), canvas.at(tip + back.unit.scaled(head)))

    # Stack labels
    if scene.labels:
        font = QFont()
        font.setPointSizeF(max(7.0, scale * 0.08))
        painter.setFont(font)
        painter.setPen(QColor(palette.label))
        for q, level in scene.labels:
            painter.drawText(canvas.at(q), str(level))


def _ensure_gui() -> None:
    if QGuiApplication.instance() is not None:
        return
    if not (os.environ.get("DISPLAY") or os.environ.get("WAYLAND_DISPLAY")):
        os.environ.setdefault("QT_QPA_PLATFORM", "offscreen")
    _apps.append(QGuiApplication([]))


def render_scene_svg(scene: Scene, path: Path | str, title: str = "creasefold") -> Path:
    _ensure_gui()
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    size = QSize(math.ceil(scene.width * RENDER_SCALE), math.ceil(scene.height * RENDER_SCALE))

    generator = QSvgGenerator()
    generator.setFileName(str(target))
    generator.setSize(size)
    generator.setViewBox(QRectF(0, 0, size.width(), size.height()))
    generator.setTitle(title)

    painter = QPainter()
    if not painter.begin(generator):
        raise OSError(f"Cannot write SVG to {target}")
    try:
        paint_scene(painter, scene, RENDER_SCALE)
    finally:
        painter.end()
    logger.info("Wrote %d creases to %s", len(scene.creases), target)
    return target


def render_pattern_svg(
    p: CreasePattern,
    path: Path | str,
    wedges: dict[int, Wedge] | None = None,
    layering: Layering | None = None,
    fold_map: FoldMap | None = None,
) -> Path:
    return render_scene_svg(pattern_scene(p, wedges, layering, fold_map), path)


def render_outer_svg(
    p: OuterPattern,
    path: Path | str,
    layering: Layering | None = None,
    fold_map: FoldMap | None = None,
) -> Path:
    return render_scene_svg(outer_scene(p, layering, fold_map), path)
