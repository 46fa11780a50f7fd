"""Verification engine for Brauer-Manin obstructions to integral points on
complements of plane curves over Q."""

__version__ = "0.1.0"
