"""JSON documents for patterns, trees, plans and layerings.

Every document carries ``version`` and ``kind`` keys. Exact angles are
written as "p/q turn" strings and measured ones as radian floats; keys are
sorted and indented so saving the same value twice gives the same bytes.
"""
from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from src.config import DOCUMENT_VERSION, INFINITY
from src.models.geom import Point2, TurnAngle
from src.models.layering import FoldPlan, Layering, PleatStep, ReflectStep, Stacking, Step
from src.models.orthotree import DualOrthotreeSpec, WheelStep
from src.models.outer import ConvexPolygon, Disk, OuterPattern
from src.models.pattern import CreasePattern, Ray, Segment
from src.models.tree import PlaneTree

logger = logging.getLogger(__name__)


class DocumentError(ValueError):
    """Raised for documents that cannot be read or do not describe a valid value."""

    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


# ── Field converters ─────────────────────────────────────────────────────


def _angle_to_doc(angle: TurnAngle) -> str | float:
    return str(angle) if angle.is_exact else angle.radians_value


def _doc_to_angle(value: Any) -> TurnAngle:
    if isinstance(value, str):
        if not value.endswith(" turn"):
            raise ValueError(f"angle must look like 'p/q turn', got {value!r}")
        return TurnAngle.of_turns(Fraction(value[: -len(" turn")]))
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"angle must be a string or a number, got {value!r}")
    return TurnAngle.of_radians(float(value))


def _point_to_doc(p: Point2) -> list[float]:
    return [p.x, p.y]


def _doc_to_point(value: Any) -> Point2:
    x, y = value
    return Point2(float(x), float(y))


def _doc_to_node(v: Any) -> Any:
    return v if v == INFINITY else int(v)


def _int_keys(table: dict[str, Any], convert: Callable[[Any], Any]) -> dict[int, Any]:
    return {int(k): convert(v) for k, v in table.items()}


# ── Crease patterns ──────────────────────────────────────────────────────


def _pattern_to_doc(p: CreasePattern) -> dict[str, Any]:
    return {
        "vertices": {str(v): _point_to_doc(q) for v, q in sorted(p.vertices.items())},
        "segments": [
            {"a": s.a, "b": s.b, "heading": None if s.heading is None else _angle_to_doc(s.heading)}
            for s in p.segments
        ],
        "rays": [{"apex": r.apex, "direction": _angle_to_doc(r.direction)} for r in p.rays],
    }


def _doc_to_pattern(doc: dict[str, Any]) -> CreasePattern:
    return CreasePattern(
        vertices=_int_keys(doc["vertices"], _doc_to_point),
        segments=tuple(
            Segment(int(s["a"]), int(s["b"]), None if s.get("heading") is None else _doc_to_angle(s["heading"]))
            for s in doc.get("segments", [])
        ),
        rays=tuple(Ray(int(r["apex"]), _doc_to_angle(r["direction"])) for r in doc.get("rays", [])),
    )


def _outer_to_doc(p: OuterPattern) -> dict[str, Any]:
    if isinstance(p.region, Disk):
        region = {"disk": {"center": _point_to_doc(p.region.center), "radius": p.region.radius}}
    else:
        region = {"polygon": [_point_to_doc(q) for q in p.region.corners]}
    return {
        "region": region,
        "points": {str(v): _point_to_doc(q) for v, q in sorted(p.points.items())},
        "chords": [[a, b] for a, b in p.chords],
    }


def _doc_to_outer(doc: dict[str, Any]) -> OuterPattern:
    region_doc = doc["region"]
    if "disk" in region_doc:
        disk = region_doc["disk"]
        region = Disk(_doc_to_point(disk["center"]), float(disk["radius"]))
    else:
        region = ConvexPolygon(tuple(_doc_to_point(q) for q in region_doc["polygon"]))
    return OuterPattern(
        region,
        _int_keys(doc.get("points", {}), _doc_to_point),
        tuple((int(a), int(b)) for a, b in doc.get("chords", [])),
    )


# ── Trees and specs ──────────────────────────────────────────────────────


def _tree_to_doc(t: PlaneTree) -> dict[str, Any]:
    return {"rotation": {str(v): list(t.rotation[v]) for v in t.nodes}}


def _doc_to_tree(doc: dict[str, Any]) -> PlaneTree:
    if "edges" in doc:
        return PlaneTree.from_edges((int(a), int(b)) for a, b in doc["edges"])
    return PlaneTree(_int_keys(doc["rotation"], lambda nbrs: tuple(int(w) for w in nbrs)))


def _spec_to_doc(spec: DualOrthotreeSpec) -> dict[str, Any]:
    return {
        "name": spec.name,
        "steps": [{"target": s.target, "attachment": list(s.attachment)} for s in spec.steps],
    }


def _doc_to_spec(doc: dict[str, Any]) -> DualOrthotreeSpec:
    steps = tuple(
        WheelStep(_doc_to_node(s["target"]), tuple(int(k) for k in s.get("attachment", [])))
        for s in doc.get("steps", [])
    )
    return DualOrthotreeSpec(steps, doc.get("name", ""))


# ── Plans and layerings ──────────────────────────────────────────────────


def _step_to_doc(step: Step) -> dict[str, Any]:
    if isinstance(step, PleatStep):
        return {
            "type": "pleat",
            "anchors": [_point_to_doc(q) for q in step.anchors],
            "stacking": step.stacking.value,
            "creases": list(step.creases),
        }
    return {
        "type": "reflect",
        "crease": step.crease,
        "hinge": _point_to_doc(step.hinge),
        "flap": _plan_to_doc(step.flap),
        "flap_creases": sorted(step.flap_creases),
    }


def _doc_to_step(doc: dict[str, Any]) -> Step:
    if doc["type"] == "pleat":
        return PleatStep(
            tuple(_doc_to_point(q) for q in doc["anchors"]),
            Stacking(doc["stacking"]),
            tuple(int(c) for c in doc.get("creases", [])),
        )
    if doc["type"] == "reflect":
        return ReflectStep(
            int(doc["crease"]),
            _doc_to_point(doc["hinge"]),
            _doc_to_plan(doc["flap"]),
            frozenset(int(c) for c in doc["flap_creases"]),
        )
    raise ValueError(f"unknown step type {doc['type']!r}")


def _plan_to_doc(plan: FoldPlan) -> dict[str, Any]:
    return {"steps": [_step_to_doc(s) for s in plan.steps]}


def _doc_to_plan(doc: dict[str, Any]) -> FoldPlan:
    return FoldPlan(tuple(_doc_to_step(s) for s in doc["steps"]))


def _layering_to_doc(layering: Layering) -> dict[str, Any]:
    return {"above": [list(pair) for pair in sorted(layering.above)]}


def _doc_to_layering(doc: dict[str, Any]) -> Layering:
    return Layering(frozenset((int(u), int(l)) for u, l in doc["above"]))


_CODECS: dict[str, tuple[Callable[[Any], dict[str, Any]], Callable[[dict[str, Any]], Any]]] = {
    "pattern": (_pattern_to_doc, _doc_to_pattern),
    "outer": (_outer_to_doc, _doc_to_outer),
    "tree": (_tree_to_doc, _doc_to_tree),
    "orthotree": (_spec_to_doc, _doc_to_spec),
    "plan": (_plan_to_doc, _doc_to_plan),
    "layering": (_layering_to_doc, _doc_to_layering),
    "manifest": (dict, dict),
}

KINDS = tuple(_CODECS)


# ── Text and files ───────────────────────────────────────────────────────


def _codec(kind: str) -> tuple[Callable[[Any], dict[str, Any]], Callable[[dict[str, Any]], Any]]:
    if kind not in _CODECS:
        raise DocumentError(f"Unknown document kind {kind!r}")
    return _CODECS[kind]


def dumps(kind: str, value: Any) -> str:
    encode, _ = _codec(kind)
    doc = encode(value)
    doc.update(version=DOCUMENT_VERSION, kind=kind)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _parse(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno) from exc
    if not isinstance(doc, dict):
        raise DocumentError("Document must be a JSON object", 1)
    if doc.get("version") != DOCUMENT_VERSION:
        raise DocumentError(f"Unsupported document version {doc.get('version')!r}")
    return doc


def peek_kind(text: str) -> str:
    """Kind recorded in a document, without decoding the rest."""
    kind = _parse(text).get("kind")
    if kind not in _CODECS:
        raise DocumentError(f"Unknown document kind {kind!r}")
    return kind


def loads(kind: str, text: str) -> Any:
    _, decode = _codec(kind)
    doc = _parse(text)
    if doc.get("kind") != kind:
        raise DocumentError(f"Expected a {kind} document, found {doc.get('kind')!r}")
    body = {k: v for k, v in doc.items() if k not in ("version", "kind")}
    try:
        return decode(body)
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"Malformed {kind} document: {exc}") from exc


def save_document(kind: str, value: Any, path: Path | str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dumps(kind, value), encoding="utf-8")
    logger.debug("Wrote %s document to %s", kind, target)
    return target


def read_text(path: Path | str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"Cannot read {path}: {exc.strerror or exc}") from exc


def load_document(kind: str, path: Path | str) -> Any:
    return loads(kind, read_text(path))


# ── Repositories ─────────────────────────────────────────────────────────


class DocumentRepository:
    """Documents of one kind stored as ``<name>.json`` files in a directory."""

    kind = "manifest"

    def __init__(self, directory: Path | str) -> None:
        self._dir = Path(directory)

    def path_for(self, name: str) -> Path:
        if not name or "/" in name or name.startswith("."):
            raise DocumentError(f"Invalid document name {name!r}")
        return self._dir / f"{name}.json"

    def save(self, name: str, value: Any) -> Path:
        return save_document(self.kind, value, self.path_for(name))

    def load(self, name: str) -> Any:
        return load_document(self.kind, self.path_for(name))

    def exists(self, name: str) -> bool:
        return self.path_for(name).is_file()

    def delete(self, name: str) -> None:
        self.path_for(name).unlink(missing_ok=True)

    def names(self) -> list[str]:
        """Names of the stored documents of this repository's kind."""
        if not self._dir.is_dir():
            return []
        out = []
        for path in sorted(self._dir.glob("*.json")):
            try:
                if peek_kind(path.read_text(encoding="utf-8")) == self.kind:
                    out.append(path.stem)
            except DocumentError:
                logger.debug("Skipping unreadable document %s", path)
        return out


class PatternRepository(DocumentRepository):
    kind = "pattern"


class OuterPatternRepository(DocumentRepository):
    kind = "outer"


class TreeRepository(DocumentRepository):
    kind = "tree"


class SpecRepository(DocumentRepository):
    kind = "orthotree"


class PlanRepository(DocumentRepository):
    kind = "plan"


class LayeringRepository(DocumentRepository):
    kind = "layering"


class ManifestRepository(DocumentRepository):
    kind = "manifest"
