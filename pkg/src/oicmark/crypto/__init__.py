"""Device-ID key derivation and deterministic encryption of a padded plane."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..image import BLOCK, PaddedPlane
from .aes import encrypt_blocks
from .sha1 import sha1_hex

__all__ = [
    "CIPHER_MODES",
    "CipheredPlane",
    "InvalidKeyError",
    "WatermarkKey",
    "derive_key",
    "encrypt_plane",
]


class InvalidKeyError(ValueError):
    """Invalid device ID or key material."""


@dataclass(frozen=True)
class WatermarkKey:
    device_id: str
    digest_hex: str
    cipher_key: bytes


@dataclass(frozen=True, eq=False)
class CipheredPlane:
    samples: np.ndarray  # uint8, same shape as the padded source plane

    @property
    def rows(self) -> int:
        return self.samples.shape[0]

    @property
    def cols(self) -> int:
        return self.samples.shape[1]


def derive_key(device_id: str) -> WatermarkKey:
    """SHA-1 the UTF-8 device ID; the first 16 hex digits, as ASCII, are the AES key.

    The digest is rendered uppercase so the key bytes match the uppercase
    hex convention (e.g. ``"abc"`` keys as ``b"A9993E364706816A"``).
    """
    if not isinstance(device_id, str) or not device_id:
        raise InvalidKeyError("device ID must be a non-empty string")
    digest = sha1_hex(device_id.encode("utf-8")).upper()
    return WatermarkKey(device_id, digest, digest[:16].encode("ascii"))


CIPHER_MODES = ("indexed", "ecb")


def _group_tweaks(count: int) -> np.ndarray:
    # 16-byte big-endian encoding of each group's index
    tweaks = np.zeros((count, 16), dtype=np.uint8)
    idx = np.arange(count, dtype=">u8").view(np.uint8).reshape(count, 8)
    tweaks[:, 8:] = idx
    return tweaks


def encrypt_plane(plane, key: WatermarkKey, mode: str = "indexed") -> CipheredPlane:
    """AES-128 over consecutive 16-byte runs of the row-major plane.

    Each run is enciphered on its own with no IV, so the output is a pure
    function of (key, plane) and a change inside one run only alters that
    run's ciphertext. ``"indexed"`` XORs the run's index into the plaintext
    first so equal runs at different positions (flat backgrounds) still get
    distinct ciphertext; ``"ecb"`` is the bare codebook mode.
    """
    if not isinstance(key, WatermarkKey) or len(key.cipher_key) != 16:
        raise InvalidKeyError("a derived 16-byte WatermarkKey is required")
    samples = plane.plane if isinstance(plane, PaddedPlane) else np.asarray(plane)
    if samples.dtype != np.uint8 or samples.ndim != 2:
        raise ValueError("plane must be a 2-D uint8 array")
    rows, cols = samples.shape
    if rows % BLOCK or cols % BLOCK:
        raise ValueError(f"plane {rows}x{cols} is not padded to a multiple of {BLOCK}")
    if mode not in CIPHER_MODES:
        raise ValueError(f"unknown cipher mode {mode!r}")
    flat = np.ascontiguousarray(samples).reshape(-1, 16)
    if mode == "indexed":
        flat = flat ^ _group_tweaks(flat.shape[0])
    out = encrypt_blocks(key.cipher_key, flat).reshape(rows, cols)
    out.flags.writeable = False
    return CipheredPlane(out)
