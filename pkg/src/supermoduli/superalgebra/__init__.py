"""Supercommutative Laurent polynomials, chart maps, vector fields and 1-forms."""
