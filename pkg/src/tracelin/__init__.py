"""Exact trace-linearity computations for diagrams over finite categories.

The library represents finite categories as explicit composition tables,
diagrams of rational vector spaces or bounded chain complexes over them,
and computes colimits, homotopy colimits, coefficient vectors, and
bicategorical traces with exact rational arithmetic throughout.
"""

__version__ = "0.1.0"
