"""Exact arithmetic and computations around imaginary dihedral weight-one forms."""
__version__ = "0.1.0"
