"""Linguistic data augmentation for imbalanced offensive-language datasets."""

__version__ = "0.1.0"

OFF = "OFF"
NOT = "NOT"
LABELS = (OFF, NOT)


class LingaugError(Exception):
    """Base error for the package."""


class ConfigError(LingaugError):
    """Bad configuration or usage (CLI exit code 1)."""


class DataError(LingaugError):
    """Invalid input data (CLI exit code 2)."""
