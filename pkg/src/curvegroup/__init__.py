"""Verification toolkit for plane curves with finite non-abelian complement groups."""

__version__ = "0.1.0"
