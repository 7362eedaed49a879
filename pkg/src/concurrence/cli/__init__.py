"""
Command-line interface for the concurrence toolkit.
"""

from .main import app, run

__all__ = ["app", "run"]
