"""Finite semi-coarse spaces, ℤ-map homotopy, strings of maps and a Seifert–van Kampen decomposition."""

__version__ = "0.1.0"
