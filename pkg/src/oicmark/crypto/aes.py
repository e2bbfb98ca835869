"""AES-128 encryption (FIPS-197), vectorised over many 16-byte blocks.

State bytes follow the standard's column-major layout: input byte ``i`` sits
at row ``i % 4``, column ``i // 4``. Only the forward cipher is provided.
"""

from __future__ import annotations

import numpy as np

ROUNDS = 10
KEY_BYTES = 16


def _xtime(a: int) -> int:
    a <<= 1
    return (a ^ 0x11B) if a & 0x100 else a


def _gf_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a = _xtime(a)
        b >>= 1
    return out


def _build_sbox() -> np.ndarray:
    inv = [0] * 256
    for a in range(1, 256):
        for b in range(1, 256):
            if _gf_mul(a, b) == 1:
                inv[a] = b
                break
    box = np.empty(256, dtype=np.uint8)
    for a in range(256):
        x = inv[a]
        s = x
        for shift in range(1, 5):
            s ^= ((x << shift) | (x >> (8 - shift))) & 0xFF
        box[a] = s ^ 0x63
    return box


SBOX = _build_sbox()
XTIME = np.array([_xtime(a) & 0xFF for a in range(256)], dtype=np.uint8)
_RCON = [0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1B, 0x36]

# new[i] = old[SHIFT_ROWS[i]]; row r of column c takes column (c + r) % 4
SHIFT_ROWS = np.array([(i % 4) + 4 * (((i // 4) + (i % 4)) % 4) for i in range(16)])


def expand_key(key: bytes) -> np.ndarray:
    """Round keys as an (11, 16) uint8 array built from the 44-word schedule."""
    key = bytes(key)
    if len(key) != KEY_BYTES:
        raise ValueError(f"AES-128 needs a 16-byte key, got {len(key)} bytes")
    words = [list(key[4 * i:4 * i + 4]) for i in range(4)]
    for i in range(4, 4 * (ROUNDS + 1)):
        temp = list(words[i - 1])
        if i % 4 == 0:
            temp = temp[1:] + temp[:1]
            temp = [int(SBOX[b]) for b in temp]
            temp[0] ^= _RCON[i // 4 - 1]
        words.append([a ^ b for a, b in zip(words[i - 4], temp)])
    return np.array(words, dtype=np.uint8).reshape(ROUNDS + 1, 16)


def _mix_columns(state: np.ndarray) -> np.ndarray:
    cols = state.reshape(-1, 4, 4)
    a0, a1, a2, a3 = (cols[:, :, r] for r in range(4))
    total = a0 ^ a1 ^ a2 ^ a3
    out = np.empty_like(cols)
    out[:, :, 0] = a0 ^ total ^ XTIME[a0 ^ a1]
    out[:, :, 1] = a1 ^ total ^ XTIME[a1 ^ a2]
    out[:, :, 2] = a2 ^ total ^ XTIME[a2 ^ a3]
    out[:, :, 3] = a3 ^ total ^ XTIME[a3 ^ a0]
    return out.reshape(-1, 16)


def encrypt_blocks(key: bytes, blocks) -> np.ndarray:
    """Encrypt an (n, 16) uint8 array, each row as an independent block."""
    state = np.asarray(blocks, dtype=np.uint8)
    if state.ndim != 2 or state.shape[1] != 16:
        raise ValueError(f"expected (n, 16) blocks, got {state.shape}")
    round_keys = expand_key(key)
    state = state ^ round_keys[0]
    for rnd in range(1, ROUNDS + 1):
        state = SBOX[state][:, SHIFT_ROWS]
        if rnd < ROUNDS:
            state = _mix_columns(state)
        state = state ^ round_keys[rnd]
    return state


def encrypt_ecb(key: bytes, data: bytes) -> bytes:
    if len(data) % 16:
        raise ValueError("ECB input length must be a multiple of 16")
    blocks = np.frombuffer(bytes(data), dtype=np.uint8).reshape(-1, 16)
    return encrypt_blocks(key, blocks).tobytes()
