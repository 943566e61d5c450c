"""Dark theme stylesheet and crease palettes for creasefold.

Dark backgrounds, cyan accents and sharp borders for the viewer; a light
print palette for SVG export. All colors are defined here so both can be
tuned in one place.
"""
from __future__ import annotations

from dataclasses import dataclass

# ── Palette ──────────────────────────────────────────────────────────────
BG_DARKEST = "#0a0e14"
BG_DARK = "#0d1117"
BG_MID = "#161b22"
BG_HOVER = "#222e3f"
BG_SELECTED = "#1a3a4a"

BORDER = "#30363d"

TEXT = "#c9d1d9"
TEXT_DIM = "#6e7681"
TEXT_BRIGHT = "#e6edf3"

ACCENT_CYAN = "#00e5ff"
ACCENT_GREEN = "#39ff14"


# ── Crease palettes ──────────────────────────────────────────────────────

@dataclass(frozen=True)
class CreasePalette:
    crease: str  # no assignment known
    mountain: str
    valley: str
    boundary: str
    wedge: str
    wedge_alpha: int  # 0-255
    label: str
    background: str | None  # None leaves the canvas transparent


PRINT_PALETTE = CreasePalette(
    crease="#202124",
    mountain="#d32f2f",
    valley="#1565c0",
    boundary="#1e88e5",
    wedge="#ffb300",
    wedge_alpha=70,
    label="#37474f",
    background=None,
)

SCREEN_PALETTE = CreasePalette(
    crease=TEXT_BRIGHT,
    mountain="#ff5252",
    valley=ACCENT_CYAN,
    boundary="#448aff",
    wedge="#ffd700",
    wedge_alpha=50,
    label=TEXT_DIM,
    background=BG_DARKEST,
)


# Object names main_window sets; the stylesheet keys on them.
SECTION_TITLE = "sectionTitle"
STATUS_PASSED = "passed"
STATUS_FAILED = "failed"


def get_stylesheet() -> str:
    """Viewer stylesheet: the canvas colors of SCREEN_PALETTE around a check list."""
    return f"""
    QMainWindow, QWidget {{
        background-color: {BG_DARK};
        color: {TEXT};
    }}
    QLabel#{SECTION_TITLE} {{
        color: {SCREEN_PALETTE.valley};
        font-weight: bold;
    }}
    QListWidget {{
        background-color: {SCREEN_PALETTE.background};
        border: 1px solid {BORDER};
    }}
    QListWidget::item:selected {{
        background-color: {BG_SELECTED};
        color: {TEXT_BRIGHT};
    }}
    QSplitter::handle {{
        background-color: {BORDER};
    }}
    QMenuBar, QMenu {{
        background-color: {BG_MID};
    }}
    QMenuBar::item:selected, QMenu::item:selected {{
        background-color: {BG_HOVER};
    }}
    QStatusBar#{STATUS_PASSED} {{
        color: {ACCENT_GREEN};
    }}
    QStatusBar#{STATUS_FAILED} {{
        color: {SCREEN_PALETTE.mountain};
    }}
    """
