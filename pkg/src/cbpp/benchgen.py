"""Benchmark instance families and instance file I/O.

Two radius laws (r_i = i and r_i = sqrt(i)) crossed with two compositions:
"fixed" ships exactly 5 copies of each of the n0 base circles, "random"
draws 2..5 copies per base circle from the seeded generator. The bin side
is always caller-supplied: the reference bin sizes come from published
best-known square-packing records, which are external data. A template
file (data/bin_sides.json) can be filled in by hand; missing values are an
error, never silently invented.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from .model import Instance, ParseError, instance_from_json, instance_to_json

Law = Literal["linear", "sqrt"]
Mode = Literal["fixed", "random"]

LAWS = {"linear": float, "sqrt": math.sqrt}


@dataclass(frozen=True)
class BenchmarkSpec:
    n0: int
    law: Law
    mode: Mode
    bin_side: float
    seed: int = 0

    def __post_init__(self):
        if self.n0 < 1:
            raise ValueError(f"n0 must be >= 1, got {self.n0}")
        if self.law not in LAWS:
            raise ValueError(f"law must be one of {sorted(LAWS)}, got {self.law!r}")
        if self.mode not in ("fixed", "random"):
            raise ValueError(f"mode must be 'fixed' or 'random', got {self.mode!r}")


def radius_of(law: Law, i: int) -> float:
    return LAWS[law](i)


def generate(spec: BenchmarkSpec) -> Instance:
    """Build the instance for a benchmark spec; deterministic given the seed.

    Circle ids run in (base index, copy) order. Fixed mode yields n = 5*n0
    circles, random mode between 2*n0 and 5*n0.
    """
    max_radius = radius_of(spec.law, spec.n0)
    if spec.bin_side < 2 * max_radius:
        raise ValueError(
            f"bin_side {spec.bin_side} cannot hold the largest circle "
            f"(diameter {2 * max_radius})"
        )
    rng = random.Random(spec.seed)
    radii: list[float] = []
    for i in range(1, spec.n0 + 1):
        copies = 5 if spec.mode == "fixed" else rng.randint(2, 5)
        radii.extend([radius_of(spec.law, i)] * copies)
    return Instance(spec.bin_side, tuple(radii))


def write_instance(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(instance_to_json(instance))


def read_instance(path: str | Path) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return instance_from_json(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def load_bin_sides(path: str | Path) -> dict[tuple[str, int], float]:
    """Read the user-populated bin-side table: {law: {n0: L}}.

    Entries that are null/absent are omitted from the result.
    """
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot load bin sides from {path}: {exc}") from exc
    out: dict[tuple[str, int], float] = {}
    for law, table in data.items():
        if law not in LAWS:
            raise ParseError(f"unknown law {law!r} in {path}")
        for n0, value in table.items():
            if value is None:
                continue
            out[(law, int(n0))] = float(value)
    return out
