"""Project-wide constants for creasefold.

Geometry tolerances, rendering scale and search limits live here so they can
be tuned in one place.
"""
from __future__ import annotations

# ── Tolerances ───────────────────────────────────────────────────────────
EPS_LEN = 1e-9  # sheet units
EPS_ANG = 1e-9  # radians

# ── Layering search ──────────────────────────────────────────────────────
DEFAULT_FACE_LIMIT = 14

# ── Constructions ────────────────────────────────────────────────────────
ATTACH_DISTANCE = 1.0
PERTURB_ETA = 1e-3  # fraction of a polygon side
DISK_SAMPLES = 96  # boundary samples per full circle

# ── Rendering ────────────────────────────────────────────────────────────
RENDER_SCALE = 100  # SVG units per sheet unit
CLIP_INFLATE = 1.5

# ── Identifiers and documents ────────────────────────────────────────────
INFINITY = "inf"
DOCUMENT_VERSION = 1
