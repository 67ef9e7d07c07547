"""Exact computer algebra for n-Lie (Filippov) algebras."""

__version__ = "0.1.0"
