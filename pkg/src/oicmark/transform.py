"""Orthonormal 8x8 DCT-II / DCT-III and blockwise traversal of planes.

A coefficient grid is a float64 array of shape ``(block_rows, block_cols, 8, 8)``;
``grid[i, j]`` is the DCT of the tile covering rows ``8i..8i+7`` and columns
``8j..8j+7``.
"""

from __future__ import annotations

import numpy as np
from scipy.fft import dctn, idctn

from .image import BLOCK, PaddedPlane


class TransformError(ValueError):
    pass


def dct2_block(block) -> np.ndarray:
    block = np.asarray(block, dtype=np.float64)
    if block.shape != (BLOCK, BLOCK):
        raise TransformError(f"expected an 8x8 block, got {block.shape}")
    return dctn(block, norm="ortho")


def idct2_block(coeffs) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.shape != (BLOCK, BLOCK):
        raise TransformError(f"expected an 8x8 block, got {coeffs.shape}")
    return idctn(coeffs, norm="ortho")


def to_blocks(plane: np.ndarray) -> np.ndarray:
    """View a (rows, cols) array as (rows/8, cols/8, 8, 8) tiles."""
    rows, cols = plane.shape
    if rows % BLOCK or cols % BLOCK:
        raise TransformError(f"plane {rows}x{cols} is not a multiple of {BLOCK}")
    return plane.reshape(rows // BLOCK, BLOCK, cols // BLOCK, BLOCK).swapaxes(1, 2)


def from_blocks(blocks: np.ndarray) -> np.ndarray:
    br, bc = blocks.shape[:2]
    return blocks.swapaxes(1, 2).reshape(br * BLOCK, bc * BLOCK)


def forward_blockwise(plane) -> np.ndarray:
    if isinstance(plane, PaddedPlane):
        plane = plane.plane
    tiles = to_blocks(np.asarray(plane, dtype=np.float64))
    return dctn(tiles, axes=(2, 3), norm="ortho")


def inverse_blockwise(grid) -> np.ndarray:
    """Real-valued plane from a coefficient grid; no rounding is applied."""
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 4 or grid.shape[2:] != (BLOCK, BLOCK):
        raise TransformError(f"expected a (br, bc, 8, 8) grid, got {grid.shape}")
    return from_blocks(idctn(grid, axes=(2, 3), norm="ortho"))


def dct_basis(u: int, v: int) -> np.ndarray:
    """Spatial 8x8 pattern whose orthonormal DCT is 1 at 0-based (u, v), 0 elsewhere."""
    unit = np.zeros((BLOCK, BLOCK))
    unit[u, v] = 1.0
    return idctn(unit, norm="ortho")
