"""Run parameters for the verification suites.

Values come from class defaults, then an optional key=value file, then
command-line flags. The process environment is never read.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Mapping

from dotenv import dotenv_values

from lgmirror.errors import InvalidInputError

logger = logging.getLogger(__name__)


class Config:
    # LG potential and lattice
    K: int = 5
    S: float = 1e-2
    DELTA: float = 1e-2

    # cyclic quotient singularity 1/n(1,q)
    N: int = 5
    Q: int = 3

    # numerics
    STEPS: int = 400
    TOL: float = 1e-12
    SEED: int = 0
    MAX_STEP: float = 0.05
    RADIUS: float = 1e3
    SAMPLES: int = 10_000
    # base point for monodromy loops and trajectory export
    T0: float = 3.0

    OUT: str = "reports"

    KEYS = ("K", "S", "DELTA", "N", "Q", "STEPS", "TOL", "SEED", "MAX_STEP", "RADIUS", "SAMPLES", "T0", "OUT")

    def __init__(self, values: Mapping[str, Any] | None = None):
        for key, raw in (values or {}).items():
            self.set(key, raw)

    def set(self, key: str, raw: Any) -> None:
        name = key.strip().upper()
        if name not in self.KEYS:
            raise InvalidInputError(f"unknown config key {key!r}; expected one of {', '.join(self.KEYS)}")
        cast = type(getattr(Config, name))
        try:
            setattr(self, name, cast(raw))
        except (TypeError, ValueError) as e:
            raise InvalidInputError(f"bad value {raw!r} for {name}: {e}") from e

    @classmethod
    def from_file(cls, path: str | Path) -> Config:
        path = Path(path)
        if not path.is_file():
            raise InvalidInputError(f"config file {path} does not exist")
        values = dotenv_values(path)
        logger.debug(f"loaded {len(values)} keys from {path}")
        return cls(values)

    def merged(self, overrides: Mapping[str, Any]) -> Config:
        """Copy with every non-None override applied."""
        merged = Config(self.as_dict())
        for key, value in overrides.items():
            if value is not None:
                merged.set(key, value)
        return merged

    def as_dict(self) -> dict[str, Any]:
        return {name.lower(): getattr(self, name) for name in self.KEYS}


config = Config()
