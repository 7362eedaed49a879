"""Synthetic and built-in datasets."""

from .fixtures import FixtureName, list_fixtures, toy_fixture
from .generator import SyntheticDataGenerator, default_labels, generate_independent, planted_hole

__all__ = [
    "FixtureName",
    "list_fixtures",
    "toy_fixture",
    "SyntheticDataGenerator",
    "default_labels",
    "generate_independent",
    "planted_hole",
]
