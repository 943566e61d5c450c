from src.repositories.documents import (
    DocumentError,
    LayeringRepository,
    ManifestRepository,
    OuterPatternRepository,
    PatternRepository,
    PlanRepository,
    SpecRepository,
    TreeRepository,
    load_document,
    save_document,
)

__all__ = [
    "DocumentError",
    "PatternRepository",
    "OuterPatternRepository",
    "TreeRepository",
    "SpecRepository",
    "PlanRepository",
    "LayeringRepository",
    "ManifestRepository",
    "load_document",
    "save_document",
]
