"""Exact solver, scripted strategies and experiment harness for the domatic number game."""

__version__ = "0.1.0"
