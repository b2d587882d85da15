# Copyright 2025 Christophe Roeder. All rights reserved.

"""Per-stage run manifests."""

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterator, Optional, Union

from .. import __version__
from ..sweep import atomic_write_text


@dataclass
class RunManifest:
    """Inputs, outputs and timings of one pipeline stage."""

    stage: str
    fingerprint: str = ""
    config_path: Optional[str] = None
    tool_version: str = __version__
    inputs: list[str] = field(default_factory=list)
    outputs: list[str] = field(default_factory=list)
    timings_s: dict[str, float] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    @property
    def filename(self) -> str:
        return f"{self.stage}_manifest.json"

    def add_output(self, path: Union[str, Path]) -> None:
        self.outputs.append(str(path))

    @contextmanager
    def timed(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings_s[name] = round(time.perf_counter() - start, 6)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def write(self, out_dir: Union[str, Path]) -> Path:
        """
        Write <stage>_manifest.json into out_dir.

        Raises:
            RuntimeError: If an output the manifest names does not exist
        """
        missing = [p for p in self.outputs if not Path(p).exists()]
        if missing:
            raise RuntimeError(f"{self.stage} outputs missing: {', '.join(missing)}")
        path = Path(out_dir) / self.filename
        text = json.dumps(self.to_dict(), indent=2, sort_keys=True)
        atomic_write_text(path, text + "\n")
        return path
