"""Exact verification of the quantum integrals of the deformed elliptic
Calogero-Moser problem A2(m)."""

__version__ = "0.1.0"
