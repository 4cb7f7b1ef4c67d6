"""Automorphism supergroups and their actions."""
