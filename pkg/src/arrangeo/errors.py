"""Exception types shared across the package."""
from __future__ import annotations


class ArrangeoError(Exception):
    """Base class for all package errors."""


class MalformedInput(ArrangeoError):
    pass


class IdenticalLines(ArrangeoError):
    pass


class UnsupportedTangency(ArrangeoError):
    pass


class UnsupportedParabola(ArrangeoError):
    pass


class ComplexIntersection(ArrangeoError):
    pass


class NonGeneric(ArrangeoError):
    pass


class ValidationFailed(ArrangeoError):
    def __init__(self, report) -> None:
        self.report = report
        kinds = ", ".join(sorted({v.kind for v in report.violations}))
        super().__init__(f"arrangement is not admissible: {kinds}")


class MalformedSkeleton(ArrangeoError):
    pass


class NotAdjacent(ArrangeoError):
    pass


class NotOneCycle(ArrangeoError):
    pass


class NotApplicable(ArrangeoError):
    pass
