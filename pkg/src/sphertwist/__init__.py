"""Exact computations with spherical twists in a zig-zag model, and modules over graded dual numbers."""

__version__ = "0.1.0"
