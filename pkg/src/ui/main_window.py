"""Main viewer window: the pattern on the left, its check results on the right."""
from __future__ import annotations

import logging
from pathlib import Path

from PyQt6.QtCore import Qt
from PyQt6.QtGui import QAction, QKeySequence
from PyQt6.QtWidgets import (
    QFileDialog,
    QLabel,
    QListWidget,
    QMainWindow,
    QMessageBox,
    QSplitter,
    QStatusBar,
    QVBoxLayout,
    QWidget,
)

from src.models.report import PatternSummary
from src.repositories.documents import DocumentError, loads, peek_kind, read_text
from src.services.export_svg import Scene, outer_scene, pattern_scene
from src.services.validation_service import ValidationService
from src.ui.theme import SECTION_TITLE, STATUS_FAILED, STATUS_PASSED
from src.ui.widgets.pattern_view import PatternView

logger = logging.getLogger(__name__)


def load_view(path: Path | str, service: ValidationService) -> tuple[Scene, PatternSummary]:
    """Scene and check summary for a pattern or outer-pattern document."""
    text = read_text(path)
    kind = peek_kind(text)
    if kind == "pattern":
        p = loads(kind, text)
        return pattern_scene(p), service.summarize(p)
    if kind == "outer":
        p = loads(kind, text)
        return outer_scene(p), service.summarize_outer(p)
    raise DocumentError(f"Cannot display a {kind} document")


class MainWindow(QMainWindow):
    def __init__(self, path: Path | str | None = None) -> None:
        super().__init__()
        self.setWindowTitle("creasefold")
        self.setMinimumSize(900, 600)

        self._service = ValidationService()

        self._view = PatternView()
        self._checks = QListWidget()
        title = QLabel("CHECKS")
        title.setObjectName(SECTION_TITLE)

        side = QWidget()
        layout = QVBoxLayout(side)
        layout.addWidget(title)
        layout.addWidget(self._checks)

        splitter = QSplitter(Qt.Orientation.Horizontal)
        splitter.addWidget(self._view)
        splitter.addWidget(side)
        splitter.setStretchFactor(0, 3)
        splitter.setStretchFactor(1, 1)
        self.setCentralWidget(splitter)

        self._setup_menu_bar()

        status = QStatusBar()
        status.showMessage("Open a pattern document")
        self.setStatusBar(status)

        if path is not None:
            self.open_path(path)

    def _setup_menu_bar(self) -> None:
        menu_bar = self.menuBar()

        file_menu = menu_bar.addMenu("&File")
        open_action = QAction("&Open…", self)
        open_action.setShortcut(QKeySequence("Ctrl+O"))
        open_action.triggered.connect(self._choose_file)
        file_menu.addAction(open_action)

        quit_action = QAction("&Quit", self)
        quit_action.setShortcut(QKeySequence("Ctrl+Q"))
        quit_action.triggered.connect(self.close)
        file_menu.addAction(quit_action)

        help_menu = menu_bar.addMenu("&Help")
        about_action = QAction("&About", self)
        about_action.triggered.connect(self._show_about)
        help_menu.addAction(about_action)

    def _choose_file(self) -> None:
        path, _ = QFileDialog.getOpenFileName(self, "Open pattern", "", "Documents (*.json)")
        if path:
            self.open_path(path)

    def open_path(self, path: Path | str) -> bool:
        try:
            scene, summary = load_view(path, self._service)
        except (DocumentError, ValueError) as exc:
            logger.warning("Cannot open %s: %s", path, exc)
            QMessageBox.warning(self, "Cannot open", str(exc))
            return False
        self._view.set_scene(scene)
        self._show_summary(summary)
        self.setWindowTitle(f"creasefold - {Path(path).name}")
        return True

    def _show_summary(self, summary: PatternSummary) -> None:
        self._checks.clear()
        self._checks.addItems(summary.lines())
        failing = [r.name for r in summary.reports if not r.ok]
        status = self.statusBar()
        if failing:
            status.setObjectName(STATUS_FAILED)
            status.showMessage(f"FAIL: {', '.join(failing)}")
        else:
            status.setObjectName(STATUS_PASSED)
            status.showMessage(f"All {len(summary.reports)} checks pass")
        status.style().unpolish(status)
        status.style().polish(status)

    def _show_about(self) -> None:
        QMessageBox.about(
            self,
            "About creasefold",
            "creasefold\n\n"
            "Flat-folding checks and constructions for\n"
            "crease patterns, trees and chord patterns.\n\n"
            "Built with Python + PyQt6 + networkx + shapely.",
        )
