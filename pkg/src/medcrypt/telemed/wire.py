"""Sealed envelopes and their binary frame.

Frame layout, integers big-endian::

    magic          4   "MEDC" (4D 45 44 43)
    version        1   01
    sender_id     16
    nonce         16
    suite_id       1   01 DES .. 06 BLOWFISH
    wrapped_len    2   + wrapped_key
    iv_len         1   + iv
    ct_len         4   + ciphertext
    sig_len        2   + signature

Everything before ``sig_len`` is the signed header.  Parsing is strict:
any mismatch, overrun or trailing byte is a ``FrameError``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import BinaryIO, Iterator

from medcrypt.ciphers.core import Suite
from medcrypt.errors import FrameError

MAGIC = b"MEDC"
VERSION = 1
ID_SIZE = 16
NONCE_SIZE = 16
_FIXED = struct.Struct(">4sB16s16sB")

WireFrame = bytes  # output of encode_frame


@dataclass(frozen=True)
class SealedEnvelope:
    """One transfer unit.

    ``signature`` is the signer's integer in fixed modulus-width bytes, so
    the frame is self-contained; ``wrapped_key`` is empty unless the
    envelope starts a session or rotates its key.
    """

    sender_id: bytes
    nonce: bytes
    suite: Suite
    wrapped_key: bytes
    iv: bytes
    ciphertext: bytes
    signature: bytes

    def __post_init__(self):
        if len(self.sender_id) != ID_SIZE or len(self.nonce) != NONCE_SIZE:
            raise ValueError("sender_id and nonce are 16 bytes each")
        if len(self.wrapped_key) > 0xFFFF or len(self.signature) > 0xFFFF:
            raise ValueError("wrapped key and signature are limited to 65535 bytes")
        if len(self.iv) > 0xFF or len(self.ciphertext) > 0xFFFFFFFF:
            raise ValueError("iv or ciphertext too long for the frame")


def signed_header(env: SealedEnvelope) -> bytes:
    """Every frame byte before the signature: what the signature covers."""
    return b"".join((
        _FIXED.pack(MAGIC, VERSION, env.sender_id, env.nonce, env.suite.value),
        struct.pack(">H", len(env.wrapped_key)), env.wrapped_key,
        struct.pack(">B", len(env.iv)), env.iv,
        struct.pack(">I", len(env.ciphertext)), env.ciphertext,
    ))


def encode_frame(env: SealedEnvelope) -> bytes:
    return signed_header(env) + struct.pack(">H", len(env.signature)) + env.signature


class _Reader:
    def __init__(self, buf: bytes, pos: int = 0):
        self.buf = buf
        self.pos = pos

    def take(self, n: int, what: str) -> bytes:
        end = self.pos + n
        if end > len(self.buf):
            raise FrameError(f"frame truncated in {what}")
        out = self.buf[self.pos:end]
        self.pos = end
        return out

    def length(self, fmt: str, what: str) -> int:
        size = struct.calcsize(fmt)
        return struct.unpack(fmt, self.take(size, what + " length"))[0]


def _parse(buf: bytes, pos: int) -> tuple[SealedEnvelope, int]:
    r = _Reader(buf, pos)
    magic, version, sender_id, nonce, suite_id = _FIXED.unpack(r.take(_FIXED.size, "fixed header"))
    if magic != MAGIC:
        raise FrameError(f"bad magic {magic.hex()}")
    if version != VERSION:
        raise FrameError(f"unsupported frame version {version}")
    try:
        suite = Suite(suite_id)
    except ValueError:
        raise FrameError(f"unknown suite id {suite_id}") from None
    wrapped_key = r.take(r.length(">H", "wrapped key"), "wrapped key")
    iv = r.take(r.length(">B", "iv"), "iv")
    if len(iv) != suite.block_size:
        raise FrameError(f"iv is {len(iv)} bytes, {suite.name} needs {suite.block_size}")
    ciphertext = r.take(r.length(">I", "ciphertext"), "ciphertext")
    if len(ciphertext) % suite.block_size:
        raise FrameError("ciphertext is not a whole number of blocks")
    signature = r.take(r.length(">H", "signature"), "signature")
    env = SealedEnvelope(sender_id, nonce, suite, wrapped_key, iv, ciphertext, signature)
    return env, r.pos


def decode_frame(data: bytes) -> SealedEnvelope:
    data = bytes(data)
    env, end = _parse(data, 0)
    if end != len(data):
        raise FrameError(f"{len(data) - end} trailing bytes after frame")
    return env


def iter_frames(data: bytes) -> Iterator[SealedEnvelope]:
    """Parse a concatenation of frames (frames are self-delimiting)."""
    data = bytes(data)
    pos = 0
    while pos < len(data):
        env, pos = _parse(data, pos)
        yield env


def write_frames(stream: BinaryIO, envelopes) -> None:
    for env in envelopes:
        stream.write(encode_frame(env))
    stream.flush()


def read_frames(stream: BinaryIO) -> list[SealedEnvelope]:
    return list(iter_frames(stream.read()))
