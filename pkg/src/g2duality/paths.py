"""Location of the shipped data files (cases, tables, scenarios)."""

from __future__ import annotations

import os
from pathlib import Path

ENV_VAR = "G2DUALITY_DATA"


def data_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def case_file(tag: str) -> Path:
    slug = tag.replace("/", "_").replace("-", "_")
    return data_dir() / "cases" / f"{slug}.g2c"


def tables_file() -> Path:
    return data_dir() / "tables.g2t"


def scenario_dir() -> Path:
    return data_dir() / "scenarios"
