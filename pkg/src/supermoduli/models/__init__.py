"""Pydantic models module."""
