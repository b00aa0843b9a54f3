"""Succinct navigational oracles for intersection graphs on a circle."""

__version__ = "0.1.0"
