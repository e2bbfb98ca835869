"""Region overwrite attacks on a single channel.

Coordinates are 1-based and inclusive, so rows 238-241 and columns 300-303
address a 4x4 patch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .image import CHANNELS, RgbImage


class AttackError(ValueError):
    pass


@dataclass(frozen=True)
class AttackSpec:
    target: str
    rows: tuple[int, int]
    cols: tuple[int, int]
    value: int | None = None    # constant fill
    source: str | None = None   # copy co-located samples from this channel

    def __post_init__(self):
        if self.target not in CHANNELS:
            raise AttackError(f"unknown target channel {self.target!r}")
        if (self.value is None) == (self.source is None):
            raise AttackError("give exactly one of a fill value or a source channel")
        if self.value is not None and not 0 <= int(self.value) <= 255:
            raise AttackError(f"fill value {self.value} outside [0, 255]")
        if self.source is not None:
            if self.source not in CHANNELS:
                raise AttackError(f"unknown source channel {self.source!r}")
            if self.source == self.target:
                raise AttackError("source and target channel must differ")
        for name, (lo, hi) in (("rows", self.rows), ("cols", self.cols)):
            if lo < 1 or hi < lo:
                raise AttackError(f"bad {name} range {lo}:{hi}")

    def describe(self) -> str:
        what = f"= {self.value}" if self.value is not None else f"<- {self.source}"
        return (f"{self.target} {what} rows {self.rows[0]}-{self.rows[1]} "
                f"cols {self.cols[0]}-{self.cols[1]}")

    def clipped(self, height: int, width: int) -> "AttackSpec | None":
        """The same attack restricted to the image, or None if nothing is left."""
        r1, r2 = self.rows[0], min(self.rows[1], height)
        c1, c2 = self.cols[0], min(self.cols[1], width)
        if r1 > r2 or c1 > c2:
            return None
        return replace(self, rows=(r1, r2), cols=(c1, c2))


def apply_attack(image: RgbImage, spec: AttackSpec) -> RgbImage:
    if spec.rows[1] > image.height or spec.cols[1] > image.width:
        raise AttackError(
            f"region rows {spec.rows} cols {spec.cols} exceeds "
            f"{image.height}x{image.width} image"
        )
    region = (slice(spec.rows[0] - 1, spec.rows[1]), slice(spec.cols[0] - 1, spec.cols[1]))
    planes = {c: np.array(image.channel(c)) for c in CHANNELS}
    if spec.value is not None:
        planes[spec.target][region] = spec.value
    else:
        planes[spec.target][region] = image.channel(spec.source)[region]
    return RgbImage(planes["red"], planes["green"], planes["blue"])


def changed_samples(before: RgbImage, after: RgbImage) -> int:
    return int(np.count_nonzero(before.to_array() != after.to_array()))


_A = dict(rows=(238, 241), cols=(300, 303))

PRESETS = {
    "fig9a": AttackSpec("red", source="blue", **_A),
    "fig9b": AttackSpec("red", source="blue", **_A),
    "fig10a": AttackSpec("blue", value=255, **_A),
    "fig10b": AttackSpec("blue", source="green", **_A),
    "fig11a": AttackSpec("blue", rows=(138, 141), cols=(200, 203), source="green"),
    "fig11b": AttackSpec("red", source="blue", **_A),
    # region and value not captioned for 12(a); mirrors 12(b)
    "fig12a": AttackSpec("red", value=255, **_A),
    "fig12b": AttackSpec("red", value=255, **_A),
    "fig13a": AttackSpec("blue", rows=(138, 141), cols=(200, 203), source="green"),
    "fig13b": AttackSpec("blue", rows=(238, 241), cols=(200, 203), value=255),
}

# one name per distinct attack in the catalogue
DISTINCT_PRESETS = ("fig9a", "fig10a", "fig10b", "fig11a", "fig12b", "fig13b")


def preset(name: str) -> AttackSpec:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise AttackError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None


def parse_range(text: str) -> tuple[int, int]:
    """``"238:241"`` or ``"238"`` -> (238, 241) / (238, 238)."""
    try:
        parts = [int(p) for p in str(text).split(":")]
    except ValueError:
        raise AttackError(f"bad range {text!r}") from None
    if len(parts) == 1:
        parts *= 2
    if len(parts) != 2 or not 1 <= parts[0] <= parts[1]:
        raise AttackError(f"bad range {text!r}")
    return parts[0], parts[1]


def spec_from_dict(data: dict) -> AttackSpec:
    """Build a spec from ``{"channel", "rows", "cols", "value" | "copy_from"}``."""
    try:
        rows, cols = data["rows"], data["cols"]
        rows = parse_range(rows) if isinstance(rows, str) else tuple(int(x) for x in rows)
        cols = parse_range(cols) if isinstance(cols, str) else tuple(int(x) for x in cols)
        value = data.get("value")
        return AttackSpec(
            target=data["channel"],
            rows=rows,
            cols=cols,
            value=None if value is None else int(value),
            source=data.get("copy_from"),
        )
    except (KeyError, TypeError) as exc:
        raise AttackError(f"malformed attack spec: {exc}") from exc


def load_spec_file(path) -> AttackSpec:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise AttackError(f"cannot read attack spec {path}: {exc}") from exc
    return spec_from_dict(data)
