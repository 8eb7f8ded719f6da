"""Simulation and exact certification tools for iterated barycentric subdivision."""

__version__ = "0.1.0"
