"""Shared block-cipher plumbing: suites, tagged keys, padding and chaining modes.

Every cipher in this package implements :class:`BlockCipher`.  Ciphers are
keyed at construction, so a cipher object *is* the keyed block function the
modes operate on.
"""

from __future__ import annotations

import abc
import enum
import random
from dataclasses import dataclass

import numpy as np

from medcrypt.errors import KeyLengthError, LengthError, PaddingError, SuiteMismatchError


class Suite(enum.Enum):
    """Block cipher suites.  The value doubles as the wire-format suite id."""

    DES = 1
    TDES = 2
    AES128 = 3
    AES192 = 4
    AES256 = 5
    BLOWFISH = 6

    @property
    def block_size(self) -> int:
        return 16 if self.name.startswith("AES") else 8

    @property
    def key_bits(self) -> tuple[int, int]:
        """Effective key size range in bits (DES parity bits excluded)."""
        return _KEY_BITS[self]

    @property
    def key_bytes(self) -> tuple[int, int]:
        """Accepted raw key length range in bytes (DES parity bits included)."""
        return _KEY_BYTES[self]

    @classmethod
    def from_name(cls, name: str) -> Suite:
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown cipher suite {name!r}") from None


BlockCipherSuite = Suite

_KEY_BITS = {
    Suite.DES: (56, 56),
    Suite.TDES: (168, 168),
    Suite.AES128: (128, 128),
    Suite.AES192: (192, 192),
    Suite.AES256: (256, 256),
    Suite.BLOWFISH: (32, 448),
}

_KEY_BYTES = {
    Suite.DES: (8, 8),
    Suite.TDES: (24, 24),
    Suite.AES128: (16, 16),
    Suite.AES192: (24, 24),
    Suite.AES256: (32, 32),
    Suite.BLOWFISH: (4, 56),
}


class Mode(enum.Enum):
    ECB = "ECB"
    CBC = "CBC"


@dataclass(frozen=True)
class BlockKey:
    """Symmetric key material tagged with the suite it belongs to."""

    suite: Suite
    key_bytes: bytes

    def __post_init__(self):
        lo, hi = self.suite.key_bytes
        if not lo <= len(self.key_bytes) <= hi:
            raise KeyLengthError(
                f"{self.suite.name} key must be {lo}..{hi} bytes, got {len(self.key_bytes)}"
            )
        object.__setattr__(self, "key_bytes", bytes(self.key_bytes))

    def __repr__(self):
        return f"BlockKey({self.suite.name}, <{len(self.key_bytes)} bytes>)"

    @property
    def effective_bits(self) -> int:
        if self.suite in (Suite.DES, Suite.TDES):
            return len(self.key_bytes) * 7
        return len(self.key_bytes) * 8

    def to_line(self) -> str:
        return f"{self.suite.name}:{self.key_bytes.hex()}"

    @classmethod
    def from_line(cls, line: str) -> BlockKey:
        name, sep, hexkey = line.strip().partition(":")
        if not sep:
            raise ValueError(f"key line must look like SUITE:hex, got {line!r}")
        return cls(Suite.from_name(name), bytes.fromhex(hexkey))


def set_odd_parity(key: bytes) -> bytes:
    """Set the low bit of each byte so every byte has odd parity (DES convention)."""
    out = bytearray()
    for b in key:
        b &= 0xFE
        out.append(b | (bin(b).count("1") % 2 == 0))
    return bytes(out)


def generate_key(suite: Suite, rng: random.Random, bits: int | None = None) -> BlockKey:
    """Draw a fresh random key.  ``bits`` only matters for Blowfish (default 128)."""
    if suite is Suite.BLOWFISH:
        bits = 128 if bits is None else bits
        if bits % 8 or not 32 <= bits <= 448:
            raise KeyLengthError(f"Blowfish key must be 32..448 bits in whole bytes, got {bits}")
        return BlockKey(suite, rng.randbytes(bits // 8))
    raw = rng.randbytes(suite.key_bytes[0])
    if suite in (Suite.DES, Suite.TDES):
        raw = set_odd_parity(raw)
    return BlockKey(suite, raw)


def read_key_file(path) -> list[BlockKey]:
    with open(path, encoding="ascii") as fh:
        return [BlockKey.from_line(line) for line in fh if line.strip()]


def write_key_file(path, keys) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for key in keys:
            fh.write(key.to_line() + "\n")


def pad(data: bytes, block_size: int) -> bytes:
    if not 1 <= block_size <= 255:
        raise ValueError("block_size must be in [1, 255]")
    count = block_size - len(data) % block_size
    return bytes(data) + bytes([count]) * count


def unpad(data: bytes, block_size: int) -> bytes:
    if not data or len(data) % block_size:
        raise PaddingError(f"padded data must be a nonzero multiple of {block_size} bytes")
    count = data[-1]
    if count == 0 or count > block_size:
        raise PaddingError(f"invalid pad count {count}")
    if data[-count:] != bytes([count]) * count:
        raise PaddingError("pad bytes disagree")
    return bytes(data[:-count])


class BlockCipher(abc.ABC):
    """A keyed block cipher.

    Subclasses supply whole-buffer ECB transforms (``encrypt_blocks`` /
    ``decrypt_blocks``); ``chain_encrypt`` has a generic fallback that
    subclasses override with a fused kernel.
    """

    suite: Suite
    block_size: int
    rounds: int

    def __init__(self, key: BlockKey, suites: tuple[Suite, ...]):
        if not isinstance(key, BlockKey):
            raise TypeError("cipher keys must be BlockKey instances")
        if key.suite not in suites:
            raise SuiteMismatchError(
                f"{type(self).__name__} cannot use a {key.suite.name} key"
            )
        self.suite = key.suite
        self.block_size = key.suite.block_size

    @abc.abstractmethod
    def encrypt_blocks(self, data: bytes) -> bytes:
        """ECB-encrypt a whole number of blocks."""

    @abc.abstractmethod
    def decrypt_blocks(self, data: bytes) -> bytes:
        """ECB-decrypt a whole number of blocks."""

    @abc.abstractmethod
    def trace_block(self, block: bytes) -> list:
        """Intermediate state after every round executed on one block."""

    def encrypt_block(self, block: bytes) -> bytes:
        if len(block) != self.block_size:
            raise LengthError(f"block must be {self.block_size} bytes")
        return self.encrypt_blocks(block)

    def decrypt_block(self, block: bytes) -> bytes:
        if len(block) != self.block_size:
            raise LengthError(f"block must be {self.block_size} bytes")
        return self.decrypt_blocks(block)

    def chain_encrypt(self, iv: bytes, data: bytes) -> bytes:
        bs = self.block_size
        out = bytearray()
        prev = iv
        for i in range(0, len(data), bs):
            block = bytes(a ^ b for a, b in zip(data[i:i + bs], prev))
            prev = self.encrypt_blocks(block)
            out += prev
        return bytes(out)


@dataclass(frozen=True)
class InitializationVector:
    """One block of CBC chaining input."""

    iv_bytes: bytes

    def __bytes__(self):
        return self.iv_bytes

    def __len__(self):
        return len(self.iv_bytes)

    @classmethod
    def random(cls, suite: Suite, rng: random.Random) -> InitializationVector:
        return cls(rng.randbytes(suite.block_size))

    def check(self, suite: Suite) -> None:
        if len(self.iv_bytes) != suite.block_size:
            raise LengthError(f"{suite.name} needs a {suite.block_size}-byte IV, got {len(self.iv_bytes)}")


def _check_blocks(cipher: BlockCipher, data: bytes, iv, mode: Mode) -> None:
    if len(data) % cipher.block_size:
        raise LengthError(
            f"input length {len(data)} is not a multiple of the {cipher.block_size}-byte block"
        )
    if mode is Mode.CBC and (iv is None or len(iv) != cipher.block_size):
        raise LengthError(f"CBC needs an IV of exactly {cipher.block_size} bytes")


def mode_encrypt(cipher: BlockCipher, iv: bytes | InitializationVector | None, mode: Mode, plaintext: bytes) -> bytes:
    """Encrypt already-padded ``plaintext`` under ``mode``.  ``iv`` is ignored for ECB."""
    mode = Mode(mode)
    _check_blocks(cipher, plaintext, iv, mode)
    if not plaintext:
        return b""
    if mode is Mode.ECB:
        return cipher.encrypt_blocks(plaintext)
    return cipher.chain_encrypt(bytes(iv), plaintext)


def mode_decrypt(cipher: BlockCipher, iv: bytes | InitializationVector | None, mode: Mode, ciphertext: bytes) -> bytes:
    mode = Mode(mode)
    _check_blocks(cipher, ciphertext, iv, mode)
    if not ciphertext:
        return b""
    raw = cipher.decrypt_blocks(ciphertext)
    if mode is Mode.ECB:
        return raw
    # CBC: P_i = D(C_i) xor C_{i-1}, with C_{-1} = IV; fully parallel.
    prev = np.frombuffer(bytes(iv) + ciphertext[: -cipher.block_size], dtype=np.uint8)
    return (np.frombuffer(raw, dtype=np.uint8) ^ prev).tobytes()
