"""
Validation utilities for configuration and numeric inputs.
"""

from typing import List, Tuple

import numpy as np

from jointdyad.utils.exceptions import ValidationError


def validate_log_level(level: str) -> bool:
    """
    Validate log level.

    Args:
        level: Log level to validate

    Returns:
        True if valid, False otherwise
    """
    valid_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
    return level.upper() in valid_levels


def ensure_finite(name: str, *values: float) -> None:
    """Raise ValidationError unless every value is a finite real."""
    for value in values:
        if not np.isfinite(value):
            raise ValidationError(f"{name} must be finite, got {value!r}")


def ensure_nonnegative_matrix(
    name: str,
    array: np.ndarray,
    shape: Tuple[int, ...]
) -> np.ndarray:
    """
    Check a parameter block and return it as a float array.

    Args:
        name: Block name used in error messages
        array: Candidate array
        shape: Required shape

    Returns:
        The array converted to float64

    Raises:
        ValidationError: On wrong shape, non-finite or negative entries
    """
    arr = np.asarray(array, dtype=float)
    if arr.shape != shape:
        raise ValidationError(
            f"{name} must have shape {shape}, got {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite entries")
    if np.any(arr < 0):
        raise ValidationError(f"{name} contains negative entries")
    return arr


def parse_float_list(text: str) -> List[float]:
    """Parse a comma separated list such as ``0.1,10,20``."""
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise ValidationError(f"Invalid number list '{text}': {e}") from e
    if not values:
        raise ValidationError("Number list must not be empty")
    return values


def parse_int_list(text: str) -> List[int]:
    """Parse a comma separated list of integers such as ``2,3,4``."""
    try:
        values = [int(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise ValidationError(f"Invalid integer list '{text}': {e}") from e
    if not values:
        raise ValidationError("Integer list must not be empty")
    return values

