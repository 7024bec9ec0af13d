"""
Custom exceptions for the jointdyad toolkit.
"""

from typing import Optional, Tuple


class JointDyadError(Exception):
    """Base exception for all jointdyad errors"""
    pass


class ConfigurationError(JointDyadError):
    """Raised when configuration is invalid"""
    pass


class ValidationError(JointDyadError):
    """Raised when parameters, configs or inputs fail validation"""
    pass


class EdgeListParseError(ValidationError):
    """Raised when an edge list cannot be parsed"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class NumericalDegeneracyError(JointDyadError):
    """Raised when an observed edge has zero rate under the current parameters"""

    def __init__(self, message: str, edge: Optional[Tuple[int, int]] = None):
        self.edge = edge
        super().__init__(message)


class FitError(JointDyadError):
    """Raised when every restart of a fit fails"""
    pass


class ZetaSolverError(JointDyadError):
    """Raised when the sparsity constant cannot reach the target edge count"""
    pass


class EvaluationError(JointDyadError):
    """Raised when a metric cannot be computed on the given input"""
    pass
