"""Settings and analysis presets."""

from .loader import AnalysisPreset, PresetLoader
from .settings import ConcurrenceSettings, get_settings, reset_settings

__all__ = ["AnalysisPreset", "PresetLoader", "ConcurrenceSettings", "get_settings", "reset_settings"]
