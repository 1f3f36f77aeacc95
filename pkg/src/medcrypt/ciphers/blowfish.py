"""Blowfish: 64-bit block, 32..448-bit key, 16-round Feistel network.

The P-array and S-boxes start from the hexadecimal digits of pi
(``_pi_tables``) and are then mixed with the key by running the cipher
itself over a zero block, replacing entries pairwise.  Words are held in
int64 and masked to 32 bits after every addition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from medcrypt.ciphers._pi_tables import P_INIT, S_INIT
from medcrypt.ciphers.core import BlockCipher, BlockKey, Suite
from medcrypt.errors import KeyLengthError

ROUNDS = 16
P_ENTRIES = 18
S_BOXES = 4
S_ENTRIES = 256
MIN_KEY_BYTES = 4
MAX_KEY_BYTES = 56

_P0 = np.array(P_INIT, dtype=np.int64)
_S0 = np.array(S_INIT, dtype=np.int64)
_NO_TRACE = np.zeros((0, 2), dtype=np.int64)


@njit(cache=True)
def _feistel(s, x):
    return ((((s[0, x >> 24] + s[1, (x >> 16) & 0xFF]) & 0xFFFFFFFF)
             ^ s[2, (x >> 8) & 0xFF]) + s[3, x & 0xFF]) & 0xFFFFFFFF


@njit(cache=True)
def _encrypt_words(left, right, p, s, trace):
    for i in range(16):
        left ^= p[i]
        right ^= _feistel(s, left)
        left, right = right, left
        if trace.shape[0] > 0:
            trace[i, 0] = left
            trace[i, 1] = right
    left, right = right, left
    right ^= p[16]
    left ^= p[17]
    return left, right


@njit(cache=True)
def _decrypt_words(left, right, p, s):
    for i in range(17, 1, -1):
        left ^= p[i]
        right ^= _feistel(s, left)
        left, right = right, left
    left, right = right, left
    right ^= p[1]
    left ^= p[0]
    return left, right


@njit(cache=True)
def _setup(key, p0, s0):
    p = p0.copy()
    s = s0.copy()
    n = key.shape[0]
    j = 0
    for i in range(18):
        word = 0
        for _ in range(4):
            word = (word << 8) | key[j]
            j = (j + 1) % n
        p[i] ^= word
    no_trace = np.zeros((0, 2), dtype=np.int64)
    left = 0
    right = 0
    for i in range(0, 18, 2):
        left, right = _encrypt_words(left, right, p, s, no_trace)
        p[i] = left
        p[i + 1] = right
    for box in range(4):
        for i in range(0, 256, 2):
            left, right = _encrypt_words(left, right, p, s, no_trace)
            s[box, i] = left
            s[box, i + 1] = right
    return p, s


@njit(cache=True)
def _load(data, off):
    left = 0
    right = 0
    for i in range(4):
        left = (left << 8) | data[off + i]
        right = (right << 8) | data[off + 4 + i]
    return left, right


@njit(cache=True)
def _store(out, off, left, right):
    for i in range(4):
        out[off + i] = (left >> (24 - 8 * i)) & 0xFF
        out[off + 4 + i] = (right >> (24 - 8 * i)) & 0xFF


@njit(cache=True)
def _ecb(data, p, s, decrypt, trace):
    out = np.empty_like(data)
    for off in range(0, data.shape[0], 8):
        left, right = _load(data, off)
        if decrypt:
            left, right = _decrypt_words(left, right, p, s)
        else:
            left, right = _encrypt_words(left, right, p, s, trace)
        _store(out, off, left, right)
    return out


@njit(cache=True)
def _cbc_encrypt(data, iv, p, s):
    out = np.empty_like(data)
    no_trace = np.zeros((0, 2), dtype=np.int64)
    prev_l, prev_r = _load(iv, 0)
    for off in range(0, data.shape[0], 8):
        left, right = _load(data, off)
        prev_l, prev_r = _encrypt_words(left ^ prev_l, right ^ prev_r, p, s, no_trace)
        _store(out, off, prev_l, prev_r)
    return out


@dataclass(frozen=True, eq=False)
class BlowfishState:
    """Key-dependent P-array (18 words) and S-boxes (4 x 256 words)."""

    p_array: np.ndarray
    s_boxes: np.ndarray

    def __post_init__(self):
        if self.p_array.shape != (P_ENTRIES,) or self.s_boxes.shape != (S_BOXES, S_ENTRIES):
            raise ValueError("Blowfish state is 18 P entries and 4x256 S entries")
        self.p_array.flags.writeable = False
        self.s_boxes.flags.writeable = False

    def __eq__(self, other):
        if not isinstance(other, BlowfishState):
            return NotImplemented
        return (np.array_equal(self.p_array, other.p_array)
                and np.array_equal(self.s_boxes, other.s_boxes))

    __hash__ = None


def blowfish_init(key: bytes) -> BlowfishState:
    key = bytes(key)
    if not MIN_KEY_BYTES <= len(key) <= MAX_KEY_BYTES:
        raise KeyLengthError(f"Blowfish key must be 32..448 bits, got {8 * len(key)}")
    p, s = _setup(np.frombuffer(key, dtype=np.uint8), _P0, _S0)
    return BlowfishState(p, s)


def _block_bytes(block: int) -> np.ndarray:
    return np.frombuffer(block.to_bytes(8, "big"), dtype=np.uint8)


def blowfish_encrypt_block(block: int, state: BlowfishState) -> int:
    out = _ecb(_block_bytes(block), state.p_array, state.s_boxes, False, _NO_TRACE)
    return int.from_bytes(out.tobytes(), "big")


def blowfish_decrypt_block(block: int, state: BlowfishState) -> int:
    out = _ecb(_block_bytes(block), state.p_array, state.s_boxes, True, _NO_TRACE)
    return int.from_bytes(out.tobytes(), "big")


class Blowfish(BlockCipher):
    rounds = ROUNDS

    def __init__(self, key: BlockKey):
        super().__init__(key, (Suite.BLOWFISH,))
        self.state = blowfish_init(key.key_bytes)

    def encrypt_blocks(self, data: bytes) -> bytes:
        return _ecb(np.frombuffer(bytes(data), dtype=np.uint8),
                    self.state.p_array, self.state.s_boxes, False, _NO_TRACE).tobytes()

    def decrypt_blocks(self, data: bytes) -> bytes:
        return _ecb(np.frombuffer(bytes(data), dtype=np.uint8),
                    self.state.p_array, self.state.s_boxes, True, _NO_TRACE).tobytes()

    def chain_encrypt(self, iv: bytes, data: bytes) -> bytes:
        return _cbc_encrypt(np.frombuffer(bytes(data), dtype=np.uint8),
                            np.frombuffer(bytes(iv), dtype=np.uint8),
                            self.state.p_array, self.state.s_boxes).tobytes()

    def trace_block(self, block: bytes) -> list[tuple[int, int]]:
        trace = np.zeros((ROUNDS, 2), dtype=np.int64)
        _ecb(np.frombuffer(bytes(block), dtype=np.uint8),
             self.state.p_array, self.state.s_boxes, False, trace)
        return [(int(a), int(b)) for a, b in trace]
