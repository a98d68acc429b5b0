"""Sextactic and type-9 torsion points of the Fermat cubic x^3 + y^3 + z^3 = 0."""

__version__ = "0.1.0"
