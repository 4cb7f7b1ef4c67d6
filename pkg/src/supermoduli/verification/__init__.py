"""Verification harness and report generation."""
