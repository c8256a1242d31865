"""Signed graph homomorphisms, circular colourings and C*_3-critical graphs."""

__version__ = "0.1.0"
