"""RGB image container, channel split/merge and padding to 8-pixel multiples."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

BLOCK = 8
CHANNELS = ("red", "green", "blue")


class ImageError(ValueError):
    """Raised for malformed, empty or mismatched image data."""


def _as_plane(samples, name="plane") -> np.ndarray:
    arr = np.asarray(samples)
    if arr.ndim != 2:
        raise ImageError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.size == 0:
        raise ImageError(f"{name} is empty")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            if not np.all(arr == np.round(arr)):
                raise ImageError(f"{name} holds non-integer samples")
        if arr.min() < 0 or arr.max() > 255:
            raise ImageError(f"{name} samples fall outside [0, 255]")
        arr = arr.astype(np.uint8)
    out = arr.copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class RgbImage:
    """Three aligned 8-bit planes. Arrays are stored read-only."""

    red: np.ndarray
    green: np.ndarray
    blue: np.ndarray

    def __post_init__(self):
        planes = [_as_plane(getattr(self, c), c) for c in CHANNELS]
        if len({p.shape for p in planes}) != 1:
            raise ImageError(
                "channel dimensions differ: " + ", ".join(str(p.shape) for p in planes)
            )
        for name, p in zip(CHANNELS, planes):
            object.__setattr__(self, name, p)

    @property
    def height(self) -> int:
        return self.red.shape[0]

    @property
    def width(self) -> int:
        return self.red.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.red.shape

    def channel(self, name: str) -> np.ndarray:
        if name not in CHANNELS:
            raise ImageError(f"unknown channel {name!r}")
        return getattr(self, name)

    def to_array(self) -> np.ndarray:
        """Return a fresh (height, width, 3) uint8 array."""
        return np.stack([self.red, self.green, self.blue], axis=-1)

    @classmethod
    def from_array(cls, arr) -> "RgbImage":
        arr = np.asarray(arr)
        if arr.ndim == 2:
            return cls(arr, arr, arr)
        if arr.ndim != 3 or arr.shape[2] < 3:
            raise ImageError(f"expected (h, w, 3) array, got shape {arr.shape}")
        return cls(arr[..., 0], arr[..., 1], arr[..., 2])

    def __eq__(self, other):
        if not isinstance(other, RgbImage):
            return NotImplemented
        return all(np.array_equal(getattr(self, c), getattr(other, c)) for c in CHANNELS)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class PaddedPlane:
    plane: np.ndarray
    original_rows: int
    original_cols: int

    @property
    def rows(self) -> int:
        return self.plane.shape[0]

    @property
    def cols(self) -> int:
        return self.plane.shape[1]


def split_channels(image: RgbImage) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return image.red, image.green, image.blue


def merge_channels(red, green, blue) -> RgbImage:
    return RgbImage(red, green, blue)


def padded_size(n: int) -> int:
    """Smallest multiple of 8 that is >= n."""
    rem = n % BLOCK
    return n if rem == 0 else n + (BLOCK - rem)


def pad_to_block_multiple(plane) -> PaddedPlane:
    """Grow a plane to 8-multiple dimensions by repeating its last row and column."""
    plane = _as_plane(plane)
    rows, cols = plane.shape
    pr, pc = padded_size(rows), padded_size(cols)
    padded = np.pad(plane, ((0, pr - rows), (0, pc - cols)), mode="edge")
    padded.flags.writeable = False
    return PaddedPlane(padded, rows, cols)


def crop_to_original(padded: PaddedPlane) -> np.ndarray:
    return padded.plane[: padded.original_rows, : padded.original_cols]


def load_image(path) -> RgbImage:
    """Decode a PNG, BMP or JPEG file to 8-bit RGB (alpha dropped, gray expanded)."""
    path = Path(path)
    try:
        with Image.open(path) as im:
            if im.format not in ("PNG", "BMP", "JPEG"):
                raise ImageError(f"{path}: unsupported format {im.format}")
            return RgbImage.from_array(np.asarray(im.convert("RGB")))
    except OSError as exc:
        raise ImageError(f"cannot read image {path}: {exc}") from exc


def save_image(image: RgbImage, path) -> None:
    """Write losslessly as PNG regardless of the file suffix."""
    Image.fromarray(image.to_array()).save(Path(path), format="PNG")
