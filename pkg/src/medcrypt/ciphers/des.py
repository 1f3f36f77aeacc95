"""DES and three-key 3DES (EDE).

Tables are the FIPS 46-3 ones.  At import they are folded into lookup
tables the kernels use: byte-indexed tables for the fixed bit permutations
(IP, FP, PC-1, PC-2) and eight combined S-box+P tables for the round
function.  Intermediate values are kept in int64 and never exceed 56 bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from medcrypt.ciphers.core import BlockCipher, BlockKey, Suite

ROUNDS = 16

IP = (
    58, 50, 42, 34, 26, 18, 10, 2, 60, 52, 44, 36, 28, 20, 12, 4,
    62, 54, 46, 38, 30, 22, 14, 6, 64, 56, 48, 40, 32, 24, 16, 8,
    57, 49, 41, 33, 25, 17, 9, 1, 59, 51, 43, 35, 27, 19, 11, 3,
    61, 53, 45, 37, 29, 21, 13, 5, 63, 55, 47, 39, 31, 23, 15, 7,
)

FP = (
    40, 8, 48, 16, 56, 24, 64, 32, 39, 7, 47, 15, 55, 23, 63, 31,
    38, 6, 46, 14, 54, 22, 62, 30, 37, 5, 45, 13, 53, 21, 61, 29,
    36, 4, 44, 12, 52, 20, 60, 28, 35, 3, 43, 11, 51, 19, 59, 27,
    34, 2, 42, 10, 50, 18, 58, 26, 33, 1, 41, 9, 49, 17, 57, 25,
)

E = (
    32, 1, 2, 3, 4, 5, 4, 5, 6, 7, 8, 9,
    8, 9, 10, 11, 12, 13, 12, 13, 14, 15, 16, 17,
    16, 17, 18, 19, 20, 21, 20, 21, 22, 23, 24, 25,
    24, 25, 26, 27, 28, 29, 28, 29, 30, 31, 32, 1,
)

P = (
    16, 7, 20, 21, 29, 12, 28, 17, 1, 15, 23, 26, 5, 18, 31, 10,
    2, 8, 24, 14, 32, 27, 3, 9, 19, 13, 30, 6, 22, 11, 4, 25,
)

PC1 = (
    57, 49, 41, 33, 25, 17, 9, 1, 58, 50, 42, 34, 26, 18,
    10, 2, 59, 51, 43, 35, 27, 19, 11, 3, 60, 52, 44, 36,
    63, 55, 47, 39, 31, 23, 15, 7, 62, 54, 46, 38, 30, 22,
    14, 6, 61, 53, 45, 37, 29, 21, 13, 5, 28, 20, 12, 4,
)

PC2 = (
    14, 17, 11, 24, 1, 5, 3, 28, 15, 6, 21, 10,
    23, 19, 12, 4, 26, 8, 16, 7, 27, 20, 13, 2,
    41, 52, 31, 37, 47, 55, 30, 40, 51, 45, 33, 48,
    44, 49, 39, 56, 34, 53, 46, 42, 50, 36, 29, 32,
)

SHIFTS = (1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1)

SBOXES = (
    (
        (14, 4, 13, 1, 2, 15, 11, 8, 3, 10, 6, 12, 5, 9, 0, 7),
        (0, 15, 7, 4, 14, 2, 13, 1, 10, 6, 12, 11, 9, 5, 3, 8),
        (4, 1, 14, 8, 13, 6, 2, 11, 15, 12, 9, 7, 3, 10, 5, 0),
        (15, 12, 8, 2, 4, 9, 1, 7, 5, 11, 3, 14, 10, 0, 6, 13),
    ),
    (
        (15, 1, 8, 14, 6, 11, 3, 4, 9, 7, 2, 13, 12, 0, 5, 10),
        (3, 13, 4, 7, 15, 2, 8, 14, 12, 0, 1, 10, 6, 9, 11, 5),
        (0, 14, 7, 11, 10, 4, 13, 1, 5, 8, 12, 6, 9, 3, 2, 15),
        (13, 8, 10, 1, 3, 15, 4, 2, 11, 6, 7, 12, 0, 5, 14, 9),
    ),
    (
        (10, 0, 9, 14, 6, 3, 15, 5, 1, 13, 12, 7, 11, 4, 2, 8),
        (13, 7, 0, 9, 3, 4, 6, 10, 2, 8, 5, 14, 12, 11, 15, 1),
        (13, 6, 4, 9, 8, 15, 3, 0, 11, 1, 2, 12, 5, 10, 14, 7),
        (1, 10, 13, 0, 6, 9, 8, 7, 4, 15, 14, 3, 11, 5, 2, 12),
    ),
    (
        (7, 13, 14, 3, 0, 6, 9, 10, 1, 2, 8, 5, 11, 12, 4, 15),
        (13, 8, 11, 5, 6, 15, 0, 3, 4, 7, 2, 12, 1, 10, 14, 9),
        (10, 6, 9, 0, 12, 11, 7, 13, 15, 1, 3, 14, 5, 2, 8, 4),
        (3, 15, 0, 6, 10, 1, 13, 8, 9, 4, 5, 11, 12, 7, 2, 14),
    ),
    (
        (2, 12, 4, 1, 7, 10, 11, 6, 8, 5, 3, 15, 13, 0, 14, 9),
        (14, 11, 2, 12, 4, 7, 13, 1, 5, 0, 15, 10, 3, 9, 8, 6),
        (4, 2, 1, 11, 10, 13, 7, 8, 15, 9, 12, 5, 6, 3, 0, 14),
        (11, 8, 12, 7, 1, 14, 2, 13, 6, 15, 0, 9, 10, 4, 5, 3),
    ),
    (
        (12, 1, 10, 15, 9, 2, 6, 8, 0, 13, 3, 4, 14, 7, 5, 11),
        (10, 15, 4, 2, 7, 12, 9, 5, 6, 1, 13, 14, 0, 11, 3, 8),
        (9, 14, 15, 5, 2, 8, 12, 3, 7, 0, 4, 10, 1, 13, 11, 6),
        (4, 3, 2, 12, 9, 5, 15, 10, 11, 14, 1, 7, 6, 0, 8, 13),
    ),
    (
        (4, 11, 2, 14, 15, 0, 8, 13, 3, 12, 9, 7, 5, 10, 6, 1),
        (13, 0, 11, 7, 4, 9, 1, 10, 14, 3, 5, 12, 2, 15, 8, 6),
        (1, 4, 11, 13, 12, 3, 7, 14, 10, 15, 6, 8, 0, 5, 9, 2),
        (6, 11, 13, 8, 1, 4, 10, 7, 9, 5, 0, 15, 14, 2, 3, 12),
    ),
    (
        (13, 2, 8, 4, 6, 15, 11, 1, 10, 9, 3, 14, 5, 0, 12, 7),
        (1, 15, 13, 8, 10, 3, 7, 4, 12, 5, 6, 11, 0, 14, 9, 2),
        (7, 11, 4, 1, 9, 12, 14, 2, 0, 6, 10, 13, 15, 3, 5, 8),
        (2, 1, 14, 7, 4, 10, 8, 13, 15, 12, 9, 0, 3, 5, 6, 11),
    ),
)


def permute(value: int, table, width_in: int) -> int:
    """Reference bit permutation: output bit k is input bit ``table[k]`` (1 = MSB)."""
    out = 0
    for src in table:
        out = (out << 1) | ((value >> (width_in - src)) & 1)
    return out


def sbox_lookup(box: int, six: int) -> int:
    row = ((six >> 4) & 2) | (six & 1)
    return SBOXES[box][row][(six >> 1) & 0xF]


def _byte_tables(table, width_in: int, out_lo: int = 0, out_bits: int | None = None) -> np.ndarray:
    """Byte-indexed tables: OR of ``t[i, byte_i]`` over input bytes == permute(x).

    ``out_lo``/``out_bits`` select a slice of the output (counted from the LSB)
    so 64-bit outputs can be split into two 32-bit halves.
    """
    width_out = len(table)
    out_bits = width_out if out_bits is None else out_bits
    nbytes = width_in // 8
    bit_contrib = np.zeros((nbytes, 8), dtype=np.int64)
    for k, src in enumerate(table):
        shift = width_out - 1 - k - out_lo
        if 0 <= shift < out_bits:
            pos = src - 1
            bit_contrib[pos // 8, pos % 8] |= 1 << shift
    t = np.zeros((nbytes, 256), dtype=np.int64)
    for i in range(nbytes):
        for v in range(256):
            acc = 0
            for b in range(8):
                if (v >> (7 - b)) & 1:
                    acc |= int(bit_contrib[i, b])
            t[i, v] = acc
    return t


def _sp_tables() -> np.ndarray:
    sp = np.zeros((8, 64), dtype=np.int64)
    for box in range(8):
        for six in range(64):
            nibble = sbox_lookup(box, six) << (28 - 4 * box)
            sp[box, six] = permute(nibble, P, 32)
    return sp


_IP_HI = _byte_tables(IP, 64, out_lo=32, out_bits=32)
_IP_LO = _byte_tables(IP, 64, out_lo=0, out_bits=32)
_FP_HI = _byte_tables(FP, 64, out_lo=32, out_bits=32)
_FP_LO = _byte_tables(FP, 64, out_lo=0, out_bits=32)
_PC1 = _byte_tables(PC1, 64)
# PC-2 reads the 56-bit C||D register, i.e. 7 input bytes.
_PC2 = _byte_tables(PC2, 56)
_SP = _sp_tables()
_SHIFTS = np.array(SHIFTS, dtype=np.int64)
_NO_TRACE = np.zeros((0, 2), dtype=np.int64)


@njit(cache=True)
def _key_schedule(key, pc1, pc2, shifts):
    cd = 0
    for i in range(8):
        cd |= pc1[i, key[i]]
    c = cd >> 28
    d = cd & 0xFFFFFFF
    out = np.empty(16, dtype=np.int64)
    for r in range(16):
        s = shifts[r]
        c = ((c << s) | (c >> (28 - s))) & 0xFFFFFFF
        d = ((d << s) | (d >> (28 - s))) & 0xFFFFFFF
        cd = (c << 28) | d
        k = 0
        for i in range(7):
            k |= pc2[i, (cd >> (48 - 8 * i)) & 0xFF]
        out[r] = k
    return out


@njit(cache=True)
def _f(r, k, sp):
    # E-expansion: 6-bit group j covers input bits 4j..4j+5 with wrap-around,
    # read from the 34-bit register bit32 || R || bit1.
    x = ((r & 1) << 33) | (r << 1) | (r >> 31)
    out = 0
    for j in range(8):
        out |= sp[j, ((x >> (28 - 4 * j)) ^ (k >> (42 - 6 * j))) & 0x3F]
    return out


@njit(cache=True)
def _crypt_one(src, s_off, dst, d_off, schedules, ip_hi, ip_lo, fp_hi, fp_lo, sp, trace):
    left = 0
    right = 0
    for i in range(8):
        b = src[s_off + i]
        left |= ip_hi[i, b]
        right |= ip_lo[i, b]
    n = 0
    for stage in range(schedules.shape[0]):
        for rnd in range(16):
            left, right = right, left ^ _f(right, schedules[stage, rnd], sp)
            if trace.shape[0] > 0:
                trace[n, 0] = left
                trace[n, 1] = right
            n += 1
        # Undo the last swap: the pre-output (R16, L16) feeds FP, or IP of the
        # next stage, and IP(FP(x)) = x.
        left, right = right, left
    hi = 0
    lo = 0
    for i in range(8):
        word = left if i < 4 else right
        b = (word >> (24 - 8 * (i % 4))) & 0xFF
        hi |= fp_hi[i, b]
        lo |= fp_lo[i, b]
    for i in range(4):
        dst[d_off + i] = (hi >> (24 - 8 * i)) & 0xFF
        dst[d_off + 4 + i] = (lo >> (24 - 8 * i)) & 0xFF


@njit(cache=True)
def _ecb(data, schedules, ip_hi, ip_lo, fp_hi, fp_lo, sp, trace):
    out = np.empty_like(data)
    for off in range(0, data.shape[0], 8):
        _crypt_one(data, off, out, off, schedules, ip_hi, ip_lo, fp_hi, fp_lo, sp, trace)
    return out


@njit(cache=True)
def _cbc_encrypt(data, iv, schedules, ip_hi, ip_lo, fp_hi, fp_lo, sp, trace):
    out = np.empty_like(data)
    buf = iv.copy()
    for off in range(0, data.shape[0], 8):
        for i in range(8):
            buf[i] ^= data[off + i]
        _crypt_one(buf, 0, out, off, schedules, ip_hi, ip_lo, fp_hi, fp_lo, sp, trace)
        for i in range(8):
            buf[i] = out[off + i]
    return out


@njit(cache=True)
def _brute_force(pt, ct, template, byte_idx, bit_mask, ip_hi, ip_lo, fp_hi, fp_lo, sp, pc1, pc2, shifts):
    key = template.copy()
    out = np.empty(8, dtype=np.uint8)
    sched = np.empty((1, 16), dtype=np.int64)
    trace = np.zeros((0, 2), dtype=np.int64)
    k = byte_idx.shape[0]
    for counter in range(1 << k):
        for j in range(k):
            if (counter >> j) & 1:
                key[byte_idx[j]] |= bit_mask[j]
            else:
                key[byte_idx[j]] &= ~bit_mask[j]
        sched[0, :] = _key_schedule(key, pc1, pc2, shifts)
        _crypt_one(pt, 0, out, 0, sched, ip_hi, ip_lo, fp_hi, fp_lo, sp, trace)
        match = True
        for i in range(8):
            if out[i] != ct[i]:
                match = False
                break
        if match:
            return counter
    return -1


def _as_array(data: bytes) -> np.ndarray:
    return np.frombuffer(bytes(data), dtype=np.uint8)


@dataclass(frozen=True)
class DesSubkeys:
    """The 16 48-bit round keys, in encryption order."""

    round_keys: tuple[int, ...]

    def __post_init__(self):
        if len(self.round_keys) != ROUNDS:
            raise ValueError(f"DES needs exactly {ROUNDS} round keys")
        if any(not 0 <= k < 1 << 48 for k in self.round_keys):
            raise ValueError("DES round keys are 48-bit values")

    def reversed(self) -> DesSubkeys:
        return DesSubkeys(self.round_keys[::-1])

    def as_array(self) -> np.ndarray:
        return np.array(self.round_keys, dtype=np.int64)


@dataclass(frozen=True)
class TdesKeyBundle:
    k1: int
    k2: int
    k3: int

    @classmethod
    def from_bytes(cls, key: bytes) -> TdesKeyBundle:
        if len(key) != 24:
            raise ValueError("3DES key bundle is 24 bytes")
        return cls(*(int.from_bytes(key[i:i + 8], "big") for i in (0, 8, 16)))


def des_key_schedule(key: int | bytes) -> DesSubkeys:
    if isinstance(key, int):
        key = key.to_bytes(8, "big")
    if len(key) != 8:
        raise ValueError("DES key is 8 bytes (64 bits with parity)")
    return DesSubkeys(tuple(int(k) for k in _key_schedule(_as_array(key), _PC1, _PC2, _SHIFTS)))


def _run(block: int, schedules: np.ndarray) -> int:
    out = _ecb(_as_array(block.to_bytes(8, "big")), schedules,
               _IP_HI, _IP_LO, _FP_HI, _FP_LO, _SP, _NO_TRACE)
    return int.from_bytes(out.tobytes(), "big")


def des_encrypt_block(block: int, subkeys: DesSubkeys) -> int:
    return _run(block, subkeys.as_array()[None, :])


def des_decrypt_block(block: int, subkeys: DesSubkeys) -> int:
    return _run(block, subkeys.reversed().as_array()[None, :])


def _tdes_schedules(bundle: TdesKeyBundle) -> tuple[np.ndarray, np.ndarray]:
    ks = [des_key_schedule(k).as_array() for k in (bundle.k1, bundle.k2, bundle.k3)]
    # Decrypting with a DES key is encrypting with its subkeys reversed.
    enc = np.stack([ks[0], ks[1][::-1], ks[2]])
    dec = np.stack([ks[2][::-1], ks[1], ks[0][::-1]])
    return enc, dec


def tdes_encrypt_block(block: int, bundle: TdesKeyBundle) -> int:
    """E_k3(D_k2(E_k1(block)))."""
    return _run(block, _tdes_schedules(bundle)[0])


def tdes_decrypt_block(block: int, bundle: TdesKeyBundle) -> int:
    return _run(block, _tdes_schedules(bundle)[1])


class _FeistelDes(BlockCipher):
    _enc: np.ndarray
    _dec: np.ndarray

    def encrypt_blocks(self, data: bytes) -> bytes:
        return self._ecb(data, self._enc)

    def decrypt_blocks(self, data: bytes) -> bytes:
        return self._ecb(data, self._dec)

    def _ecb(self, data, schedules):
        return _ecb(_as_array(data), schedules, _IP_HI, _IP_LO, _FP_HI, _FP_LO, _SP, _NO_TRACE).tobytes()

    def chain_encrypt(self, iv: bytes, data: bytes) -> bytes:
        return _cbc_encrypt(_as_array(data), _as_array(iv).copy(), self._enc,
                            _IP_HI, _IP_LO, _FP_HI, _FP_LO, _SP, _NO_TRACE).tobytes()

    def trace_block(self, block: bytes) -> list[tuple[int, int]]:
        """(L_i, R_i) after every executed Feistel round."""
        trace = np.zeros((self.rounds, 2), dtype=np.int64)
        _ecb(_as_array(block), self._enc, _IP_HI, _IP_LO, _FP_HI, _FP_LO, _SP, trace)
        return [(int(a), int(b)) for a, b in trace]


class Des(_FeistelDes):
    rounds = ROUNDS

    def __init__(self, key: BlockKey):
        super().__init__(key, (Suite.DES,))
        self.subkeys = des_key_schedule(key.key_bytes)
        self._enc = self.subkeys.as_array()[None, :]
        self._dec = self.subkeys.reversed().as_array()[None, :]


class TripleDes(_FeistelDes):
    rounds = 3 * ROUNDS

    def __init__(self, key: BlockKey):
        super().__init__(key, (Suite.TDES,))
        self.bundle = TdesKeyBundle.from_bytes(key.key_bytes)
        self._enc, self._dec = _tdes_schedules(self.bundle)


def _effective_bit_positions() -> list[int]:
    """Non-parity bit positions of a 64-bit DES key, LSB first (shift amounts)."""
    return [pos for pos in range(64) if pos % 8 != 0]


def brute_force_key(plaintext: int, ciphertext: int, template: int, unknown_bits: int) -> int | None:
    """Search the ``unknown_bits`` lowest effective key bits of ``template``.

    Candidates are tried in increasing order of the unknown-bit counter, so
    the lowest matching completion is returned.  ``None`` if nothing matches.
    """
    if not 0 <= unknown_bits <= 56:
        raise ValueError("unknown_bits must be in [0, 56]")
    positions = _effective_bit_positions()[:unknown_bits]
    byte_idx = np.array([7 - pos // 8 for pos in positions], dtype=np.int64)
    bit_mask = np.array([1 << (pos % 8) for pos in positions], dtype=np.uint8)
    counter = int(_brute_force(
        _as_array(plaintext.to_bytes(8, "big")), _as_array(ciphertext.to_bytes(8, "big")),
        _as_array(template.to_bytes(8, "big")).copy(), byte_idx, bit_mask,
        _IP_HI, _IP_LO, _FP_HI, _FP_LO, _SP, _PC1, _PC2, _SHIFTS,
    ))
    if counter < 0:
        return None
    key = template
    for j, pos in enumerate(positions):
        key = (key & ~(1 << pos)) | (((counter >> j) & 1) << pos)
    return key
