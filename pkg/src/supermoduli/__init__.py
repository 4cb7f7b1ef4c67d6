"""Exact supercommutative algebra toolkit for genus-zero supermoduli with Ramond punctures."""

__version__ = "1.0.0"
