"""Exception types shared across the engine."""

from __future__ import annotations

from dataclasses import dataclass


class GraphBridgeError(Exception):
    """Base class for all engine errors."""


class ParseError(GraphBridgeError):
    """Dataset or scenario document is not well-formed."""


@dataclass(frozen=True)
class Violation:
    """One violated dataset rule, tied to the offending element."""

    rule: str
    element: str
    detail: str = ""

    def __str__(self) -> str:
        if self.detail:
            return f"{self.rule}: {self.element} ({self.detail})"
        return f"{self.rule}: {self.element}"


class ValidationError(GraphBridgeError):
    """Dataset violates one or more structural invariants."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else None
        super().__init__(
            f"{len(self.violations)} violation(s); first: {first}" if first else "invalid dataset"
        )


class UnknownFrame(GraphBridgeError):
    pass


class PredicateTypeError(GraphBridgeError):
    pass


class SelfLoopError(GraphBridgeError):
    pass


class EmptyInput(GraphBridgeError):
    pass


class DegeneratePolygon(GraphBridgeError):
    pass


class UnknownNode(GraphBridgeError):
    pass


class MissingPosition(GraphBridgeError):
    pass


class ProgressOutOfRange(GraphBridgeError):
    pass


class DegenerateAnchors(GraphBridgeError):
    pass
