"""
Analysis preset loader.

Presets bundle a dichotomization set-up with the homology dimensions to
compute and localize. They live as JSON files in ``presets/`` and are
validated into pydantic models when loaded.
"""

import json
from pathlib import Path
from typing import Dict, List, Optional

from loguru import logger
from pydantic import BaseModel, Field, field_validator, model_validator

from ..core.models import DichotomizeConfig


class AnalysisPreset(BaseModel):
    """Named analysis configuration."""
    name: str
    description: str
    dichotomize: DichotomizeConfig
    max_dim: int = Field(ge=0)
    localize_dims: List[int] = Field(default_factory=list)

    @field_validator("name")
    @classmethod
    def validate_name(cls, v):
        if not v or not v.replace("_", "").isalnum():
            raise ValueError("Preset names use letters, digits and underscores only")
        return v

    @model_validator(mode="after")
    def validate_localize_dims(self):
        too_high = [d for d in self.localize_dims if d < 0 or d > self.max_dim]
        if too_high:
            raise ValueError(f"Localization dimensions {too_high} outside 0..{self.max_dim}")
        return self


class PresetLoader:
    """Loads and serves analysis presets."""

    def __init__(self, config_dir: Optional[Path] = None):
        """Initialize the loader.

        Args:
            config_dir: Directory holding preset JSON files. If None, uses the
                presets shipped with the package.
        """
        self.config_dir = Path(config_dir) if config_dir is not None else Path(__file__).parent / "presets"
        self._presets: Dict[str, AnalysisPreset] = {}
        self._load_all_presets()

    def _load_all_presets(self) -> None:
        if not self.config_dir.exists():
            logger.warning(f"Preset directory not found: {self.config_dir}")
            return
        for file_path in sorted(self.config_dir.glob("*.json")):
            preset = self._load_preset(file_path)
            self._presets[preset.name] = preset
            logger.debug(f"Loaded preset {preset.name} from {file_path}")

    def _load_preset(self, file_path: Path) -> AnalysisPreset:
        """Load one preset file.

        Raises:
            ValueError: If the file is not valid JSON or fails validation.
        """
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"Invalid JSON format in {file_path}: {e}")
        if "preset" not in data:
            raise ValueError(f"Missing 'preset' section in {file_path}")
        try:
            return AnalysisPreset(**data["preset"])
        except ValueError as e:
            raise ValueError(f"Error loading preset from {file_path}: {e}")

    def get_preset(self, name: str) -> AnalysisPreset:
        """Get a preset by name.

        Raises:
            ValueError: If no preset has that name.
        """
        if name not in self._presets:
            raise ValueError(f"Preset '{name}' not found. Available: {self.get_available_presets()}")
        return self._presets[name]

    def get_available_presets(self) -> List[str]:
        return sorted(self._presets)
