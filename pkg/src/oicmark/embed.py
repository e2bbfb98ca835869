"""Watermark creation: substitute one DCT coefficient per red 8x8 block with the
co-located coefficient of the AES-ciphered blue plane."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .crypto import derive_key, encrypt_plane
from .image import (
    BLOCK,
    PaddedPlane,
    RgbImage,
    crop_to_original,
    merge_channels,
    pad_to_block_multiple,
    padded_size,
    split_channels,
)
from .transform import (
    dct_basis,
    forward_blockwise,
    from_blocks,
    inverse_blockwise,
    to_blocks,
)

# Residual (in coefficient units) the settle pass aims for after integer rounding.
SETTLE_TOLERANCE = 0.1
_PROJECTION_ROUNDS = 40
_GREEDY_ROUNDS = 64
_COVERAGE_EPS = 1e-9


class Strategy(enum.Enum):
    """Which coefficient of each block carries the watermark (1-based (u, v))."""

    DC = (1, 1)
    FAC = (1, 2)
    MAC = (3, 6)
    LAC = (8, 8)

    @property
    def position(self) -> tuple[int, int]:
        return self.value

    @property
    def index(self) -> tuple[int, int]:
        return self.value[0] - 1, self.value[1] - 1

    @classmethod
    def parse(cls, name) -> "Strategy":
        if isinstance(name, cls):
            return name
        try:
            return cls[str(name).strip().upper()]
        except KeyError:
            choices = ", ".join(s.name.lower() for s in cls)
            raise ValueError(f"unknown strategy {name!r} (choose from {choices})") from None


@dataclass(frozen=True, eq=False)
class WatermarkedImage:
    image: RgbImage
    strategy: Strategy
    device_id_fingerprint: str


def substitute_coefficient(red_block, cipher_block, strategy: Strategy) -> np.ndarray:
    """Copy of ``red_block`` with the strategy position taken from ``cipher_block``.

    Works on single 8x8 blocks or on whole ``(..., 8, 8)`` grids.
    """
    out = np.array(red_block, dtype=np.float64, copy=True)
    u, v = strategy.index
    out[..., u, v] = np.asarray(cipher_block, dtype=np.float64)[..., u, v]
    return out


def round_clamp(values) -> np.ndarray:
    """Round half away from zero, then clamp into [0, 255]."""
    values = np.asarray(values, dtype=np.float64)
    rounded = np.sign(values) * np.floor(np.abs(values) + 0.5)
    return np.clip(rounded, 0, 255).astype(np.uint8)


def cipher_grid(blue, device_id: str, cipher_mode: str = "indexed") -> np.ndarray:
    key = derive_key(device_id)
    padded = blue if isinstance(blue, PaddedPlane) else pad_to_block_multiple(blue)
    return forward_blockwise(encrypt_plane(padded, key, cipher_mode).samples)


def expected_coefficients(blue, device_id: str, strategy: Strategy,
                          cipher_mode: str = "indexed") -> np.ndarray:
    """Per-block coefficient the red channel must carry, shape (block_rows, block_cols)."""
    u, v = strategy.index
    if isinstance(blue, PaddedPlane):
        rows, cols = blue.original_rows, blue.original_cols
    else:
        rows, cols = np.shape(blue)
    raw = cipher_grid(blue, device_id, cipher_mode)[:, :, u, v]
    return reachable_targets(raw, rows, cols, strategy)


def _replication_matrix(real: int) -> np.ndarray:
    # maps a zero-padded 8-vector to its edge-replicated version
    rep = np.zeros((BLOCK, BLOCK))
    for i in range(BLOCK):
        rep[i, min(i, real - 1)] = 1.0
    return rep


def coefficient_weights(rows: int, cols: int, strategy: Strategy) -> np.ndarray:
    """Per-block 8x8 weight maps ``W`` such that the strategy coefficient of the
    edge-padded plane equals ``sum(W * tile)`` over the zero-padded tile.

    Interior blocks get the plain DCT basis pattern; partial border blocks fold
    the replicated rows/columns back onto the last real ones.
    """
    basis = dct_basis(*strategy.index)
    br, bc = padded_size(rows) // BLOCK, padded_size(cols) // BLOCK
    row_real = np.minimum(BLOCK, rows - BLOCK * np.arange(br))
    col_real = np.minimum(BLOCK, cols - BLOCK * np.arange(bc))
    weights = np.empty((br, bc, BLOCK, BLOCK))
    cache = {}
    for i, rr in enumerate(row_real):
        for j, cr in enumerate(col_real):
            if (rr, cr) not in cache:
                a, b = _replication_matrix(rr), _replication_matrix(cr)
                cache[rr, cr] = a.T @ basis @ b
            weights[i, j] = cache[rr, cr]
    return weights


def coverage_mask(rows: int, cols: int, strategy: Strategy) -> np.ndarray:
    """Blocks whose strategy coefficient can carry a watermark at all.

    A border block with a single real column (or row) has every replicated
    column identical, so AC coefficients along that axis are forced to zero.
    """
    w = coefficient_weights(rows, cols, strategy)
    return (w ** 2).sum(axis=(2, 3)) > _COVERAGE_EPS


def reachable_targets(targets, rows: int, cols: int, strategy: Strategy) -> np.ndarray:
    """Clip targets into the coefficient range 8-bit samples can produce per block.

    Only narrow border blocks, whose folded weights are small, ever bind.
    """
    w = coefficient_weights(rows, cols, strategy)
    lo = 255.0 * np.minimum(w, 0).sum(axis=(2, 3))
    hi = 255.0 * np.maximum(w, 0).sum(axis=(2, 3))
    return np.clip(targets, lo, hi)


def _zero_padded_tiles(plane: np.ndarray) -> np.ndarray:
    rows, cols = plane.shape
    full = np.zeros((padded_size(rows), padded_size(cols)))
    full[:rows, :cols] = plane
    return to_blocks(full)


def settle(red: np.ndarray, targets: np.ndarray, strategy: Strategy) -> np.ndarray:
    """Adjust integer red samples so the receiver-side coefficient hits ``targets``.

    Rounding, clamping at 0/255 and re-padding a cropped border all move the
    coefficient a receiver recomputes. Blocks that drifted are first projected
    back onto the target along the free (non-saturated) pixels, then nudged by
    single-level steps until the residual is within ``SETTLE_TOLERANCE``.
    """
    rows, cols = red.shape
    weights = coefficient_weights(rows, cols, strategy)
    br, bc = weights.shape[:2]
    n = br * bc
    w = weights.reshape(n, BLOCK * BLOCK)
    real = _zero_padded_tiles(np.ones((rows, cols))).reshape(n, -1) > 0
    x = _zero_padded_tiles(red.astype(np.float64)).reshape(n, -1).copy()
    t = np.asarray(targets, dtype=np.float64).reshape(n)
    covered = (w ** 2).sum(axis=1) > _COVERAGE_EPS
    usable = real & (np.abs(w) > 1e-12)

    for _ in range(_PROJECTION_ROUNDS):
        d = t - (w * x).sum(axis=1)
        active = covered & (np.abs(d) > 1.0)
        if not active.any():
            break
        up = (d[:, None] * w) > 0
        free = usable & ((up & (x < 255)) | (~up & (x > 0)))
        wf = np.where(free, w, 0.0)
        norm = (wf ** 2).sum(axis=1)
        moving = active & (norm > 0)
        if not moving.any():
            break
        step = (d[moving] / norm[moving])[:, None] * wf[moving]
        x[moving] = round_clamp(x[moving] + step)

    for _ in range(_GREEDY_ROUNDS):
        d = t - (w * x).sum(axis=1)
        active = np.flatnonzero(covered & (np.abs(d) > SETTLE_TOLERANCE))
        if active.size == 0:
            break
        wa, xa, da = w[active], x[active], d[active][:, None]
        plus = np.where(usable[active] & (xa < 255), np.abs(da - wa), np.inf)
        minus = np.where(usable[active] & (xa > 0), np.abs(da + wa), np.inf)
        cand = np.concatenate([plus, minus], axis=1)
        best = cand.argmin(axis=1)
        gain = cand[np.arange(active.size), best] < np.abs(da[:, 0]) - 1e-12
        if not gain.any():
            break
        blocks = active[gain]
        pix = best[gain] % (BLOCK * BLOCK)
        sign = np.where(best[gain] < BLOCK * BLOCK, 1.0, -1.0)
        x[blocks, pix] += sign

    plane = from_blocks(x.reshape(br, bc, BLOCK, BLOCK))
    return plane[:rows, :cols].astype(np.uint8)


def embed(image: RgbImage, device_id: str, strategy: Strategy = Strategy.MAC,
          *, settle_blocks: bool = True, cipher_mode: str = "indexed") -> WatermarkedImage:
    """Embed the device-keyed watermark into the red channel.

    Parameters
    ----------
    image : RgbImage
        Source image; green and blue are carried over untouched.
    device_id : str
        Capture-device identifier the key is derived from.
    strategy : Strategy
        Coefficient position to substitute in every block.
    settle_blocks : bool
        Run :func:`settle` after rounding so that verification sees the exact
        embedded coefficients. With ``False`` the output is the plain
        substitute / inverse-DCT / round result.
    cipher_mode : str
        Passed to :func:`oicmark.crypto.encrypt_plane`.
    """
    strategy = Strategy.parse(strategy)
    key = derive_key(device_id)
    red, green, blue = split_channels(image)
    red_p = pad_to_block_multiple(red)
    blue_p = pad_to_block_multiple(blue)
    ciphered = encrypt_plane(blue_p, key, cipher_mode)
    if ciphered.samples.shape != red_p.plane.shape:
        raise AssertionError("ciphered blue and padded red disagree in shape")

    red_grid = forward_blockwise(red_p)
    blue_grid = forward_blockwise(ciphered.samples)
    marked = substitute_coefficient(red_grid, blue_grid, strategy)
    spatial = round_clamp(inverse_blockwise(marked))
    new_red = crop_to_original(PaddedPlane(spatial, red_p.original_rows, red_p.original_cols))

    if settle_blocks:
        u, v = strategy.index
        targets = reachable_targets(blue_grid[:, :, u, v], *image.shape, strategy)
        new_red = settle(new_red, targets, strategy)

    return WatermarkedImage(merge_channels(new_red, green, blue), strategy, key.digest_hex)
