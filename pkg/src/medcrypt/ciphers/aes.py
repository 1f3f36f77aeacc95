"""AES-128/192/256 (Rijndael with a 128-bit block).

The S-box is computed from GF(2^8) inversion plus the affine map rather
than pasted in.  The state is the FIPS-197 column-major 4x4 byte matrix
stored flat: ``state[row + 4 * col]`` is input byte ``4 * col + row``, so a
16-byte block maps onto the state without reordering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from medcrypt.ciphers.core import BlockCipher, BlockKey, Suite
from medcrypt.errors import KeyLengthError

# A 16-byte block read column-major: byte (row r, col c) sits at index 4c + r.
AesState = bytes

ROUNDS_BY_KEY_BYTES = {16: 10, 24: 12, 32: 14}
REDUCTION_POLY = 0x11B


def gf_mul(a: int, b: int) -> int:
    """Multiply in GF(2^8) modulo x^8 + x^4 + x^3 + x + 1."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        if a & 0x100:
            a ^= REDUCTION_POLY
        b >>= 1
    return out


def gf_inverse(a: int) -> int:
    # a^254 = a^-1 in GF(2^8); 0 maps to 0 by convention.
    result = 1
    for _ in range(254):
        result = gf_mul(result, a)
    return result if a else 0


def _affine(x: int) -> int:
    """b xor rotl(b,1..4) xor 0x63: the S-box affine step."""
    rot = x
    for shift in (1, 2, 3, 4):
        rot ^= ((x << shift) | (x >> (8 - shift))) & 0xFF
    return rot ^ 0x63


def _build_sbox() -> tuple[np.ndarray, np.ndarray]:
    sbox = np.zeros(256, dtype=np.uint8)
    inv = np.zeros(256, dtype=np.uint8)
    for x in range(256):
        y = _affine(gf_inverse(x))
        sbox[x] = y
        inv[y] = x
    return sbox, inv


SBOX, INV_SBOX = _build_sbox()
_MUL = np.array([[gf_mul(k, x) for x in range(256)] for k in range(16)], dtype=np.uint8)


@njit(cache=True)
def _sub_bytes(state, box):
    for i in range(16):
        state[i] = box[state[i]]


@njit(cache=True)
def _shift_rows(state, inverse):
    tmp = state.copy()
    for row in range(1, 4):
        for col in range(4):
            src = (col - row) % 4 if inverse else (col + row) % 4
            state[row + 4 * col] = tmp[row + 4 * src]


@njit(cache=True)
def _mix_columns(state, mul, inverse):
    for col in range(4):
        a0 = state[4 * col]
        a1 = state[4 * col + 1]
        a2 = state[4 * col + 2]
        a3 = state[4 * col + 3]
        if inverse:
            state[4 * col] = mul[14, a0] ^ mul[11, a1] ^ mul[13, a2] ^ mul[9, a3]
            state[4 * col + 1] = mul[9, a0] ^ mul[14, a1] ^ mul[11, a2] ^ mul[13, a3]
            state[4 * col + 2] = mul[13, a0] ^ mul[9, a1] ^ mul[14, a2] ^ mul[11, a3]
            state[4 * col + 3] = mul[11, a0] ^ mul[13, a1] ^ mul[9, a2] ^ mul[14, a3]
        else:
            state[4 * col] = mul[2, a0] ^ mul[3, a1] ^ a2 ^ a3
            state[4 * col + 1] = a0 ^ mul[2, a1] ^ mul[3, a2] ^ a3
            state[4 * col + 2] = a0 ^ a1 ^ mul[2, a2] ^ mul[3, a3]
            state[4 * col + 3] = mul[3, a0] ^ a1 ^ a2 ^ mul[2, a3]


@njit(cache=True)
def _add_round_key(state, round_key):
    for i in range(16):
        state[i] ^= round_key[i]


@njit(cache=True)
def _encrypt_state(state, round_keys, sbox, mul, trace):
    nr = round_keys.shape[0] - 1
    _add_round_key(state, round_keys[0])
    for rnd in range(1, nr + 1):
        _sub_bytes(state, sbox)
        _shift_rows(state, False)
        if rnd < nr:
            _mix_columns(state, mul, False)
        _add_round_key(state, round_keys[rnd])
        if trace.shape[0] > 0:
            trace[rnd - 1, :] = state


@njit(cache=True)
def _decrypt_state(state, round_keys, inv_sbox, mul):
    nr = round_keys.shape[0] - 1
    _add_round_key(state, round_keys[nr])
    for rnd in range(nr - 1, -1, -1):
        _shift_rows(state, True)
        _sub_bytes(state, inv_sbox)
        _add_round_key(state, round_keys[rnd])
        if rnd > 0:
            _mix_columns(state, mul, True)


@njit(cache=True)
def _ecb(data, round_keys, box, mul, decrypt):
    out = np.empty_like(data)
    state = np.empty(16, dtype=np.uint8)
    no_trace = np.zeros((0, 16), dtype=np.uint8)
    for off in range(0, data.shape[0], 16):
        state[:] = data[off:off + 16]
        if decrypt:
            _decrypt_state(state, round_keys, box, mul)
        else:
            _encrypt_state(state, round_keys, box, mul, no_trace)
        out[off:off + 16] = state
    return out


@njit(cache=True)
def _cbc_encrypt(data, iv, round_keys, sbox, mul):
    out = np.empty_like(data)
    state = iv.copy()
    no_trace = np.zeros((0, 16), dtype=np.uint8)
    for off in range(0, data.shape[0], 16):
        for i in range(16):
            state[i] ^= data[off + i]
        _encrypt_state(state, round_keys, sbox, mul, no_trace)
        out[off:off + 16] = state
    return out


def _state(block: bytes) -> np.ndarray:
    if len(block) != 16:
        raise ValueError("AES state is exactly 16 bytes")
    return np.frombuffer(bytes(block), dtype=np.uint8).copy()


# Single-phase transforms on a 16-byte state, for inspection and tests.

def sub_bytes(state: bytes, inverse: bool = False) -> bytes:
    s = _state(state)
    _sub_bytes(s, INV_SBOX if inverse else SBOX)
    return s.tobytes()


def shift_rows(state: bytes, inverse: bool = False) -> bytes:
    s = _state(state)
    _shift_rows(s, inverse)
    return s.tobytes()


def mix_columns(state: bytes, inverse: bool = False) -> bytes:
    s = _state(state)
    _mix_columns(s, _MUL, inverse)
    return s.tobytes()


def add_round_key(state: bytes, round_key: bytes) -> bytes:
    s = _state(state)
    _add_round_key(s, _state(round_key))
    return s.tobytes()


@dataclass(frozen=True)
class AesRoundKeys:
    rounds: int
    round_keys: tuple[bytes, ...]

    def __post_init__(self):
        if self.rounds not in (10, 12, 14) or len(self.round_keys) != self.rounds + 1:
            raise ValueError("AES uses 10/12/14 rounds and rounds+1 round keys")

    def as_array(self) -> np.ndarray:
        return np.frombuffer(b"".join(self.round_keys), dtype=np.uint8).reshape(-1, 16)


def aes_key_expansion(key: bytes) -> AesRoundKeys:
    key = bytes(key)
    if len(key) not in ROUNDS_BY_KEY_BYTES:
        raise KeyLengthError(f"AES key must be 16, 24 or 32 bytes, got {len(key)}")
    nk = len(key) // 4
    nr = ROUNDS_BY_KEY_BYTES[len(key)]
    words = [list(key[4 * i:4 * i + 4]) for i in range(nk)]
    rcon = 1
    for i in range(nk, 4 * (nr + 1)):
        temp = list(words[i - 1])
        if i % nk == 0:
            temp = [int(SBOX[b]) for b in temp[1:] + temp[:1]]
            temp[0] ^= rcon
            rcon = gf_mul(rcon, 2)
        elif nk > 6 and i % nk == 4:
            temp = [int(SBOX[b]) for b in temp]
        words.append([a ^ b for a, b in zip(words[i - nk], temp)])
    flat = bytes(b for w in words for b in w)
    return AesRoundKeys(nr, tuple(flat[16 * r:16 * r + 16] for r in range(nr + 1)))


def aes_encrypt_block(block: bytes, keys: AesRoundKeys) -> bytes:
    return _ecb(_state(block), keys.as_array(), SBOX, _MUL, False).tobytes()


def aes_decrypt_block(block: bytes, keys: AesRoundKeys) -> bytes:
    return _ecb(_state(block), keys.as_array(), INV_SBOX, _MUL, True).tobytes()


class Aes(BlockCipher):
    def __init__(self, key: BlockKey):
        super().__init__(key, (Suite.AES128, Suite.AES192, Suite.AES256))
        self.round_keys = aes_key_expansion(key.key_bytes)
        self.rounds = self.round_keys.rounds
        self._rk = self.round_keys.as_array()

    def encrypt_blocks(self, data: bytes) -> bytes:
        return _ecb(np.frombuffer(bytes(data), dtype=np.uint8), self._rk, SBOX, _MUL, False).tobytes()

    def decrypt_blocks(self, data: bytes) -> bytes:
        return _ecb(np.frombuffer(bytes(data), dtype=np.uint8), self._rk, INV_SBOX, _MUL, True).tobytes()

    def chain_encrypt(self, iv: bytes, data: bytes) -> bytes:
        return _cbc_encrypt(np.frombuffer(bytes(data), dtype=np.uint8), _state(iv),
                            self._rk, SBOX, _MUL).tobytes()

    def trace_block(self, block: bytes) -> list[bytes]:
        """State after every round (the last entry is the ciphertext)."""
        trace = np.zeros((self.rounds, 16), dtype=np.uint8)
        _encrypt_state(_state(block), self._rk, SBOX, _MUL, trace)
        return [row.tobytes() for row in trace]
