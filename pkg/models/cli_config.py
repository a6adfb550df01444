"""Validated command-line configuration."""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from green_enums import Command, GridChoice, Normalization, OutputFormat
from models.params import Params


class CliConfig(BaseModel):
    """Everything the dispatcher needs, checked before any computation runs."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    command: Command
    params: Optional[Params] = None
    tol: Fraction
    output_format: OutputFormat = OutputFormat.JSON
    normalize: Normalization = Normalization.MAX_ZERO
    anchor: Optional[Tuple[int, int]] = None
    out: Optional[Path] = None
    threads: int = 1
    i: Optional[int] = None
    j: Optional[int] = None
    ell: Optional[int] = None
    grid: GridChoice = GridChoice.CELL

    @field_validator('tol')
    @classmethod
    def validate_tol(cls, v: Fraction) -> Fraction:
        """Tolerances feed interval radii and must be positive."""
        if v <= 0:
            raise ValueError(f"tolerance must be positive, got {v}")
        return v

    @field_validator('threads')
    @classmethod
    def validate_threads(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"threads must be >= 1, got {v}")
        return v

    @model_validator(mode='after')
    def validate_command_inputs(self) -> "CliConfig":
        """Per-command requirements that span several fields."""
        needs_params = not (self.command == Command.VERIFY and self.grid == GridChoice.ACCEPTANCE)
        if needs_params and self.params is None:
            raise ValueError(f"'{self.command.value}' needs --p and --m")
        if self.command == Command.BVALUE and None in (self.i, self.j, self.ell):
            raise ValueError("'bvalue' needs --i, --j and --ell")
        if self.command == Command.BVALUE and self.params is not None:
            m = self.params.m
            if not (0 <= (self.i or 0) < m and 0 <= (self.j or 0) < m):
                raise ValueError(f"--i and --j must lie in [0, {m})")
        if self.normalize == Normalization.ANCHORED and self.anchor is None:
            raise ValueError("--normalize anchored needs --anchor ROW,COL")
        return self
