"""Forgery detection: recompute the expected coefficient of every block from the
received blue channel and compare it with the one carried by the red channel."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .embed import Strategy, coverage_mask, embed, expected_coefficients
from .image import BLOCK, RgbImage, pad_to_block_multiple
from .transform import forward_blockwise

TOLERANCE_FLOOR = 0.5
TOLERANCE_ENV = "OICMARK_TOLERANCE"
COVERED_CHANNELS = ("red", "blue")


class VerificationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TamperMap:
    """Per-block comparison. Uncovered blocks hold NaN expected/deviation and are never flagged."""

    observed: np.ndarray
    expected: np.ndarray
    deviation: np.ndarray
    flagged: np.ndarray
    covered: np.ndarray
    tolerance: float
    strategy: Strategy
    image_rows: int
    image_cols: int

    @property
    def block_rows(self) -> int:
        return self.flagged.shape[0]

    @property
    def block_cols(self) -> int:
        return self.flagged.shape[1]

    @property
    def max_deviation(self) -> float:
        dev = self.deviation[self.covered]
        return float(dev.max()) if dev.size else 0.0


@dataclass(frozen=True)
class Verdict:
    tampered: bool
    flagged_count: int
    flagged_blocks: list   # 1-based (block_row, block_col)
    bounding_boxes: list   # 1-based inclusive (top, left, bottom, right) pixel boxes


def _check_tolerance(tolerance) -> float:
    tol = float(tolerance)
    if math.isnan(tol) or tol <= 0:
        raise VerificationError(f"tolerance must be > 0, got {tolerance!r}")
    return tol


def verify(image: RgbImage, device_id: str, strategy: Strategy = Strategy.MAC,
           tolerance: float | None = None, cipher_mode: str = "indexed") -> TamperMap:
    strategy = Strategy.parse(strategy)
    if image.height < BLOCK or image.width < BLOCK:
        raise VerificationError(
            f"image {image.height}x{image.width} is smaller than one {BLOCK}x{BLOCK} block"
        )
    tol = default_tolerance(strategy) if tolerance is None else _check_tolerance(tolerance)

    u, v = strategy.index
    expected = expected_coefficients(image.blue, device_id, strategy, cipher_mode)
    observed = forward_blockwise(pad_to_block_multiple(image.red))[:, :, u, v]
    covered = coverage_mask(image.height, image.width, strategy)
    expected = np.where(covered, expected, np.nan)
    deviation = np.abs(observed - expected)
    with np.errstate(invalid="ignore"):
        flagged = covered & (deviation > tol)
    return TamperMap(observed, expected, deviation, flagged, covered, tol, strategy,
                     image.height, image.width)


def summarize(tmap: TamperMap) -> Verdict:
    """Turn a tamper map into flagged tiles and their pixel rectangles.

    Adjacent tiles are reported as separate boxes; boxes on the right/bottom
    border are clipped to the image.
    """
    blocks, boxes = [], []
    for r, c in zip(*np.nonzero(tmap.flagged)):
        r, c = int(r), int(c)
        blocks.append((r + 1, c + 1))
        boxes.append((
            BLOCK * r + 1,
            BLOCK * c + 1,
            min(BLOCK * (r + 1), tmap.image_rows),
            min(BLOCK * (c + 1), tmap.image_cols),
        ))
    return Verdict(bool(blocks), len(blocks), blocks, boxes)


def clean_deviation(image: RgbImage, device_id: str, strategy: Strategy,
                    cipher_mode: str = "indexed") -> float:
    """Largest deviation seen when verifying a fresh, untouched embedding."""
    marked = embed(image, device_id, strategy, cipher_mode=cipher_mode).image
    return verify(marked, device_id, strategy, math.inf, cipher_mode).max_deviation


def calibrate_tolerance(corpus, device_id: str, strategy: Strategy,
                        cipher_mode: str = "indexed") -> float:
    """Twice the worst clean round-trip deviation over ``corpus``, floored at 0.5."""
    corpus = list(corpus)
    if not corpus:
        raise VerificationError("calibration corpus is empty")
    worst = max(clean_deviation(img, device_id, strategy, cipher_mode) for img in corpus)
    return max(TOLERANCE_FLOOR, 2.0 * worst)


def load_calibration() -> dict:
    text = resources.files("oicmark").joinpath("data/calibration.json").read_text()
    return json.loads(text)


def default_tolerance(strategy: Strategy) -> float:
    """Tolerance from ``$OICMARK_TOLERANCE`` if set, else the bundled calibration."""
    env = os.environ.get(TOLERANCE_ENV)
    if env:
        try:
            return _check_tolerance(env)
        except ValueError as exc:
            raise VerificationError(f"bad {TOLERANCE_ENV}={env!r}") from exc
    table = load_calibration()["tolerance"]
    return float(table[Strategy.parse(strategy).name])
