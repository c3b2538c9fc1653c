"""Exact computations around dimension formulas for reduced enveloping algebras:
root systems, W_p alcove geometry, Jantzen's B2 formulas, KL polynomials."""

__version__ = "0.1.0"
