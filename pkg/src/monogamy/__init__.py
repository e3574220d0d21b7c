"""Monogamy of contextual and Bell inequalities under no-disturbance."""

__version__ = "0.1.0"
