"""Kostant-Kumar polynomials, Bruhat order and orbit data for classical Weyl groups."""

__version__ = "0.1.0"
