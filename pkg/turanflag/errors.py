"""
Turanflag Errors - Exception hierarchy shared by the library and the CLI
"""

from typing import Any, Optional


class TuranFlagError(Exception):
    """Base class for every error raised by turanflag"""


class FieldError(TuranFlagError, ValueError):
    """Invalid quadratic-field operation or field-element text"""


class GraphError(TuranFlagError, ValueError):
    """Invalid 3-graph, vertex, or size limit exceeded"""


class FormatError(TuranFlagError):
    """Syntax error in a graph, family, SDPA, solution or certificate file"""

    def __init__(self, message: str, path: Optional[str] = None,
                 line: Optional[int] = None):
        self.message = message
        self.path = path
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        where = ""
        if self.path is not None:
            where = f"{self.path}:"
        if self.line is not None:
            where += f"{self.line}:"
        return f"{where} {self.message}" if where else self.message


class CertificateError(TuranFlagError):
    """A certificate failed verification"""


class PsdError(CertificateError):
    """A block is not positive semidefinite"""

    def __init__(self, block: int, pivot: int, value: Any):
        self.block = block
        self.pivot = pivot
        self.value = value
        super().__init__(
            f"block {block} is not positive semidefinite: pivot {pivot} = {value}"
        )


class BoundViolation(CertificateError):
    """Some admissible graph exceeds the claimed bound"""

    def __init__(self, graph: Any, excess: Any):
        self.graph = graph
        self.excess = excess
        super().__init__(f"graph {graph} exceeds the bound by {excess}")


class RoundingError(TuranFlagError):
    """No step of the rounding schedule produced a valid certificate"""

    def __init__(self, message: str, worst_slack: Any = None,
                 worst_pivot: Any = None):
        self.worst_slack = worst_slack
        self.worst_pivot = worst_pivot
        super().__init__(message)


class SolverError(TuranFlagError):
    """The external SDP solver is missing, failed, or timed out"""
