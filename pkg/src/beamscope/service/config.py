"""Service configuration: JSON file plus BEAMSCOPE_* environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigError

ENV_PREFIX = "BEAMSCOPE_"
DEFAULT_CALL_CAP = 20_000


@dataclass
class ServiceConfig:
    data_dir: str = "beamscope-data"
    host: str = "127.0.0.1"
    port: int = 8000
    call_cap: int = DEFAULT_CALL_CAP  # max candidate queries per generation
    provider_presets: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path: str | Path | None = None,
             env: dict | None = None) -> "ServiceConfig":
        values: dict = {}
        if path is not None:
            try:
                values = json.loads(Path(path).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot load service config {path}: {exc}")
            if not isinstance(values, dict):
                raise ConfigError("service config must be a JSON object")
        env = os.environ if env is None else env
        if ENV_PREFIX + "DATA_DIR" in env:
            values["data_dir"] = env[ENV_PREFIX + "DATA_DIR"]
        if ENV_PREFIX + "HOST" in env:
            values["host"] = env[ENV_PREFIX + "HOST"]
        if ENV_PREFIX + "PORT" in env:
            values["port"] = int(env[ENV_PREFIX + "PORT"])
        if ENV_PREFIX + "CALL_CAP" in env:
            values["call_cap"] = int(env[ENV_PREFIX + "CALL_CAP"])
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in values.items() if k in known})
