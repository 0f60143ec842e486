"""Algorithms and experiments around uniform quasi-wideness, definable types
and VC-density on sparse graphs."""

__version__ = "0.1.0"
