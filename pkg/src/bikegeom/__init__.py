"""Numerical toolkit for bicycle tire-track geometry."""

__version__ = "0.1.0"
