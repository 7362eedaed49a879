"""
Run manifests.

A manifest records the command, its effective configuration, a sha256 digest
of the input and the tool version. Wall time is the only field that changes
between repeated runs.
"""

import hashlib
import time
from pathlib import Path
from typing import Any, Dict, Mapping, Union

from .. import __version__
from ..core.models import RunManifest
from .reports import write_json

PathLike = Union[str, Path]


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path: PathLike) -> str:
    """Streaming sha256 of a file's bytes."""
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


class ManifestRecorder:
    """Times a command and builds its manifest."""

    def __init__(self, command: str, config: Mapping[str, Any]):
        self.command = command
        self.config: Dict[str, Any] = dict(config)
        self._started = time.perf_counter()

    def build(self, input_digest: str) -> RunManifest:
        return RunManifest(
            command=self.command,
            config=self.config,
            input_digest=input_digest,
            tool_version=__version__,
            wall_time_seconds=round(time.perf_counter() - self._started, 6),
        )

    def save(self, input_digest: str, path: PathLike) -> RunManifest:
        manifest = self.build(input_digest)
        write_json(manifest.model_dump(mode="json"), path)
        return manifest
