"""Multidimensional Sturmian configurations and indistinguishable asymptotic pairs."""

__version__ = "0.1.0"
