import numpy as np
import pytest
from oracles import dct2_direct

from oicmark.image import pad_to_block_multiple
from oicmark.transform import (
    TransformError,
    dct2_block,
    dct_basis,
    forward_blockwise,
    idct2_block,
    inverse_blockwise,
)
from oicmark.embed import round_clamp


def test_zero_block():
    assert not dct2_block(np.zeros((8, 8))).any()
    assert not idct2_block(np.zeros((8, 8))).any()


def test_constant_block_dc():
    coeffs = dct2_block(np.full((8, 8), 128.0))
    assert coeffs[0, 0] == pytest.approx(1024.0, abs=1e-9)
    ac = coeffs.copy()
    ac[0, 0] = 0
    assert np.abs(ac).max() < 1e-9


def test_inverse_of_constant_case():
    coeffs = np.zeros((8, 8))
    coeffs[0, 0] = 1024.0
    assert np.allclose(idct2_block(coeffs), 128.0, atol=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_matches_direct_summation(seed):
    block = np.random.default_rng(seed).uniform(0, 255, (8, 8))
    expected = np.array(dct2_direct(block.tolist()))
    assert np.abs(dct2_block(block) - expected).max() < 1e-9


def test_round_trip_and_parseval():
    rng = np.random.default_rng(11)
    for _ in range(200):
        b = rng.uniform(-300, 300, (8, 8))
        c = dct2_block(b)
        assert np.abs(idct2_block(c) - b).max() < 1e-10
        assert np.sum(c ** 2) == pytest.approx(np.sum(b ** 2), rel=1e-6)


def test_basis_pattern_is_unit_coefficient():
    for u, v in [(0, 0), (0, 1), (2, 5), (7, 7)]:
        c = dct2_block(dct_basis(u, v))
        target = np.zeros((8, 8))
        target[u, v] = 1
        assert np.abs(c - target).max() < 1e-12


def test_grid_shapes():
    assert forward_blockwise(np.zeros((8, 8))).shape == (1, 1, 8, 8)
    padded = pad_to_block_multiple(np.zeros((473, 499), np.uint8))
    assert forward_blockwise(padded).shape == (60, 63, 8, 8)
    assert forward_blockwise(np.zeros((472, 504))).shape == (59, 63, 8, 8)


def test_non_multiple_rejected():
    with pytest.raises(TransformError):
        forward_blockwise(np.zeros((8, 12)))


def test_constant_plane_has_no_ac():
    grid = forward_blockwise(np.full((24, 16), 77.0))
    grid[:, :, 0, 0] = 0
    assert np.abs(grid).max() < 1e-9


def test_block_independence():
    plane = np.random.default_rng(4).uniform(0, 255, (24, 32))
    grid = forward_blockwise(plane)
    for i in range(3):
        for j in range(4):
            tile = plane[8 * i:8 * i + 8, 8 * j:8 * j + 8]
            assert np.abs(grid[i, j] - dct2_block(tile)).max() < 1e-12


def test_blockwise_round_trip():
    plane = np.random.default_rng(5).uniform(0, 255, (40, 56))
    assert np.abs(inverse_blockwise(forward_blockwise(plane)) - plane).max() < 1e-9


def test_single_constant_block_inverse():
    grid = np.zeros((1, 1, 8, 8))
    grid[0, 0, 0, 0] = 1024.0
    assert np.allclose(inverse_blockwise(grid), 128.0, atol=1e-12)


def test_integer_round_trip_within_one():
    rng = np.random.default_rng(6)
    for _ in range(10):
        plane = rng.integers(0, 256, (32, 48), dtype=np.uint8)
        back = round_clamp(inverse_blockwise(forward_blockwise(plane)))
        assert np.abs(back.astype(int) - plane).max() <= 1
