"""One summary of every check a crease pattern can be put through.

Checks that need a valid pattern or a closing fold map are reported as
"not evaluated" instead of raising when an earlier stage fails.
"""
from __future__ import annotations

import logging
from typing import Callable

from src.models.outer import OuterPattern
from src.models.pattern import CreasePattern
from src.models.report import CheckReport, PatternSummary, Violation
from src.services.connectivity_service import connectivity_check
from src.services.foldcheck_service import (
    FoldMapError,
    build_fold_map,
    convexity_check,
    kawasaki_check,
    maekawa_check,
    nearby_rigid_check,
)
from src.services.outer_service import OuterPatternError, outer_fold_map, validate_outer
from src.services.pattern_service import PatternError, validate_pattern

logger = logging.getLogger(__name__)


def _guarded(name: str, check: Callable[[], CheckReport]) -> CheckReport:
    try:
        return check()
    except (PatternError, FoldMapError, OuterPatternError) as exc:
        return CheckReport(name, (Violation("not evaluated", str(exc)),))


class ValidationService:
    def summarize(self, p: CreasePattern) -> PatternSummary:
        structure = validate_pattern(p)
        if not structure.ok:
            summary = PatternSummary((structure,))
        else:
            summary = PatternSummary((
                structure,
                maekawa_check(p),
                _guarded("kawasaki", lambda: kawasaki_check(p)),
                convexity_check(p),
                _guarded("connectivity", lambda: connectivity_check(p)),
                _guarded("nearby-rigid", lambda: nearby_rigid_check(build_fold_map(p))),
            ))
        logger.info("Pattern with %d vertices: %s", len(p.vertices), "pass" if summary.passed else "FAIL")
        return summary

    def summarize_outer(self, p: OuterPattern) -> PatternSummary:
        structure = validate_outer(p)
        if not structure.ok:
            return PatternSummary((structure,))
        return PatternSummary((
            structure,
            _guarded("nearby-rigid", lambda: nearby_rigid_check(outer_fold_map(p))),
        ))
