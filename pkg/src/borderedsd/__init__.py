"""Bordered lambda-circulant self-dual codes over F2 and F2 + uF2."""

__version__ = "0.1.0"
