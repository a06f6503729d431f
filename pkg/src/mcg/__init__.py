"""Mapping classes of punctured surfaces as automorphisms of free groups."""

__version__ = "0.1.0"
