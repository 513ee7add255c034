"""Relative normalizers, infravacuum maps and sector merging, checked numerically."""

__version__ = "0.1.0"
