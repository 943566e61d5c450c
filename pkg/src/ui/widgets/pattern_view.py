"""Read-only QPainter view of a crease pattern or chord pattern."""
from __future__ import annotations

from PyQt6.QtCore import QPointF
from PyQt6.QtGui import QPainter
from PyQt6.QtWidgets import QWidget

from src.services.export_svg import Scene, paint_scene
from src.ui.theme import SCREEN_PALETTE

MARGIN = 16


class PatternView(QWidget):
    """Paints one scene scaled to fit the widget, keeping the aspect ratio."""

    def __init__(self, parent: QWidget | None = None) -> None:
        super().__init__(parent)
        self._scene: Scene | None = None
        self.setMinimumSize(360, 360)

    @property
    def scene(self) -> Scene | None:
        return self._scene

    def set_scene(self, scene: Scene | None) -> None:
        self._scene = scene
        self.update()

    def fit(self) -> tuple[float, QPointF]:
        """Scale and top-left offset that center the scene in the widget."""
        scene = self._scene
        w = max(1, self.width() - 2 * MARGIN)
        h = max(1, self.height() - 2 * MARGIN)
        scale = min(w / scene.width, h / scene.height)
        origin = QPointF(
            MARGIN + (w - scene.width * scale) / 2,
            MARGIN + (h - scene.height * scale) / 2,
        )
        return scale, origin

    def paintEvent(self, event) -> None:
        if self._scene is None:
            return
        painter = QPainter(self)
        scale, origin = self.fit()
        paint_scene(painter, self._scene, scale, SCREEN_PALETTE, origin)
        painter.end()
