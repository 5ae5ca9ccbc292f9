"""Validated parameter bundle for command-line runs."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class RunConfig:
    level: int | None = None
    weight: int | None = None
    orbit: str | None = None
    orbit_degree: int | None = None
    min_degree: int = 2
    bound: int = 1000
    grid: tuple[int, ...] = ()
    grid_max: int | None = None
    field_order: int | None = None
    output_format: str = "csv"
    cache_dir: Path | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.bound < 2:
            raise ValueError("bound must be at least 2")
        if self.workers < 1:
            raise ValueError("worker count must be at least 1")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.level is not None and self.level < 1:
            raise ValueError("level must be positive")
        if self.weight is not None and (self.weight < 2 or self.weight % 2):
            raise ValueError("weight must be a positive even integer")
        if any(a >= b for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly ascending")
