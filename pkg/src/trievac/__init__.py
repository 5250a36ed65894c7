"""Evacuating a unit equilateral triangle with range-limited agents."""

__version__ = "0.1.0"
