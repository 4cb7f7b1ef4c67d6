"""SUSY structures with Ramond punctures."""
