from typing import Any, Optional


class DimensionMismatchError(ValueError):
    pass


class InstanceParseError(ValueError):
    def __init__(self, message: str, line_no: Optional[int] = None) -> None:
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class NotInDomainError(ValueError):
    pass


class NotIntegrallyConvexError(ValueError):
    """Raised when an operation that needs integral convexity meets a function without it.

    `detail` carries whatever evidence was at hand: a checker verdict or the
    elimination stage whose interval came out empty.
    """

    def __init__(self, message: str, detail: Any = None) -> None:
        self.detail = detail
        super().__init__(message)


class UnboundedPolyhedronError(ValueError):
    pass


class EmptyIntersectionError(ValueError):
    pass


class BiconjugateUnstableError(RuntimeError):
    pass


class GenerationError(RuntimeError):
    pass


class PropertyViolationError(AssertionError):
    def __init__(self, item: str, x: Any = None, p: Any = None, message: str = "") -> None:
        self.item = item
        self.x = x
        self.p = p
        super().__init__(f"property {item} violated at x={x}, p={p}: {message}")


class IntegerSearchLimitError(RuntimeError):
    pass
