"""Exact verification of cuspidality for representations of GL_4(o/p^2)."""

__version__ = "0.1.0"
