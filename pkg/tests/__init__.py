"""Test suite for supermoduli-toolkit."""
