"""Hash-then-sign RSA signatures, blind signing, and signing-key rotation.

A digest is read as a big-endian integer and reduced mod n before the
private exponent is applied.  Blinding is the multiplicative kind:
``m * r^e`` is signed to ``m^d * r``, and multiplying by ``r^-1`` leaves a
plain signature on ``m``.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from pathlib import Path

from medcrypt.errors import BlindingError
from medcrypt.rsa import (
    RsaKeyPair,
    RsaPrivateKey,
    RsaPublicKey,
    egcd,
    mod_inverse,
    mod_pow,
    rsa_keygen,
)

DIGEST_SIZE = 32


@dataclass(frozen=True)
class Digest:
    value: bytes

    def __post_init__(self):
        if len(self.value) != DIGEST_SIZE:
            raise ValueError(f"digest is {DIGEST_SIZE} bytes")

    def to_int(self) -> int:
        return int.from_bytes(self.value, "big")

    def hex(self) -> str:
        return self.value.hex()


def hash(data: bytes) -> Digest:  # noqa: A001 - mirrors the operation name
    """SHA-256 of ``data``."""
    return Digest(hashlib.sha256(data).digest())


@dataclass(frozen=True)
class Signature:
    sig_value: int
    signer_key_id: str

    def to_bytes(self, n: int) -> bytes:
        return self.sig_value.to_bytes((n.bit_length() + 7) // 8, "big")

    def to_text(self) -> str:
        return f"{self.sig_value:x}\n{self.signer_key_id}\n"

    @classmethod
    def from_text(cls, text: str) -> Signature:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if len(lines) != 2:
            raise ValueError("signature file holds a hex value line and a key id line")
        return cls(int(lines[0], 16), lines[1])


def _as_int(digest: Digest | int, n: int) -> int:
    value = digest.to_int() if isinstance(digest, Digest) else digest
    return value % n


def sign(digest: Digest | int, priv: RsaPrivateKey) -> Signature:
    return Signature(mod_pow(_as_int(digest, priv.n), priv.d, priv.n), priv.key_id)


def verify(digest: Digest | int, sig: Signature, pub: RsaPublicKey) -> bool:
    if not 0 <= sig.sig_value < pub.n:
        return False
    return mod_pow(sig.sig_value, pub.e, pub.n) == _as_int(digest, pub.n)


def sign_bytes(data: bytes, priv: RsaPrivateKey) -> Signature:
    return sign(hash(data), priv)


def verify_bytes(data: bytes, sig: Signature, pub: RsaPublicKey) -> bool:
    return verify(hash(data), sig, pub)


@dataclass(frozen=True)
class BlindingFactor:
    r: int

    def check(self, n: int) -> None:
        if not 0 < self.r < n or egcd(self.r, n)[0] != 1:
            raise BlindingError(f"blinding factor {self.r} is not a unit modulo n")

    @classmethod
    def random(cls, pub: RsaPublicKey, rng: random.Random) -> BlindingFactor:
        while True:
            r = rng.randrange(2, pub.n)
            if egcd(r, pub.n)[0] == 1:
                return cls(r)


def blind(m: int, r: BlindingFactor, pub: RsaPublicKey) -> int:
    """m * r^e mod n: what the signer sees instead of m."""
    if not 0 <= m < pub.n:
        raise ValueError(f"message must lie in [0, {pub.n})")
    r.check(pub.n)
    return m * mod_pow(r.r, pub.e, pub.n) % pub.n


def sign_blinded(blinded: int, priv: RsaPrivateKey) -> int:
    return mod_pow(blinded, priv.d, priv.n)


def unblind(blind_sig: int, r: BlindingFactor, pub: RsaPublicKey) -> int:
    r.check(pub.n)
    return blind_sig * mod_inverse(r.r, pub.n) % pub.n


def rotate_signing_key(current: RsaKeyPair, bits: int, rng: random.Random) -> RsaKeyPair:
    """Fresh signing key pair with a modulus different from ``current``'s."""
    while True:
        fresh = rsa_keygen(bits, rng)
        if fresh.n != current.n:
            return fresh


@dataclass
class SigningKeyring:
    """A signer's current key pair plus every public key it has retired.

    ``rotate`` drops the old private material; signatures made under it stay
    verifiable through the archived public key, looked up by key id.
    """

    current: RsaKeyPair
    archive: dict[str, RsaPublicKey] = field(default_factory=dict)

    def __post_init__(self):
        self.archive.setdefault(self.current.key_id, self.current.public)

    def sign(self, data: bytes) -> Signature:
        return sign_bytes(data, self.current.private)

    def rotate(self, bits: int, rng: random.Random) -> None:
        self.current = rotate_signing_key(self.current, bits, rng)
        self.archive[self.current.key_id] = self.current.public

    def verify(self, data: bytes, sig: Signature) -> bool:
        pub = self.archive.get(sig.signer_key_id)
        return pub is not None and verify_bytes(data, sig, pub)


def write_signature(path, sig: Signature) -> None:
    Path(path).write_text(sig.to_text(), encoding="ascii")


def read_signature(path) -> Signature:
    return Signature.from_text(Path(path).read_text(encoding="ascii"))
