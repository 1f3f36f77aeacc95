"""Hybrid sessions: RSA-wrapped symmetric keys, encrypt-then-hash-then-sign envelopes.

One symmetric key is shared per patient-doctor pair.  The first envelope
of a session carries that key wrapped under the peer's RSA public key;
afterwards the key is replaced every ``rotation_period`` envelopes and the
replacement travels, wrapped, in the envelope that first uses it.

Receiving checks run in a fixed order: nonce freshness, sender and
signature, key unwrap, then decryption.  A nonce is remembered only once
the whole envelope has been accepted.

Sessions are immutable; sealing and opening return the successor session.
"""

from __future__ import annotations

import dataclasses
import hashlib
import random
from dataclasses import dataclass, field
from typing import Iterable

from medcrypt import digsig, rsa
from medcrypt.ciphers import BlockKey, Mode, Suite, generate_key, new_cipher
from medcrypt.ciphers.core import mode_decrypt, mode_encrypt, pad, unpad
from medcrypt.errors import AuthenticityError, DecryptError, MedcryptError, ReplayError
from medcrypt.rsa import RsaPrivateKey, RsaPublicKey
from medcrypt.telemed.records import PatientRecord, deserialize_records, serialize_records
from medcrypt.telemed.wire import ID_SIZE, NONCE_SIZE, SealedEnvelope, signed_header

DEFAULT_SUITE = Suite.AES128
DEFAULT_ROTATION_PERIOD = 100


@dataclass(frozen=True)
class Session:
    session_id: bytes
    local_id: bytes
    suite: Suite
    session_key: BlockKey
    own_key: RsaPrivateKey
    peer_public_key: RsaPublicKey
    peer_id: bytes | None = None
    rotation_period: int = DEFAULT_ROTATION_PERIOD
    send_counter: int = 0
    messages_since_rotation: int = 0
    seen_nonces: frozenset[bytes] = field(default_factory=frozenset)

    def __repr__(self):
        return (f"Session(id={self.session_id.hex()}, suite={self.suite.name}, "
                f"sent={self.send_counter}, seen={len(self.seen_nonces)})")


def wrap_key(key: BlockKey, pub: RsaPublicKey, rng: random.Random) -> bytes:
    return rsa.encrypt_bytes(key.key_bytes, pub, rng)


def unwrap_key(blob: bytes, suite: Suite, priv: RsaPrivateKey) -> BlockKey:
    try:
        return BlockKey(suite, rsa.decrypt_bytes(blob, priv))
    except (ValueError, MedcryptError) as exc:
        raise DecryptError(f"cannot unwrap session key: {exc}") from None


def _fresh_key(suite: Suite, rng: random.Random, like: BlockKey | None = None) -> BlockKey:
    bits = 8 * len(like.key_bytes) if like is not None and suite is Suite.BLOWFISH else None
    return generate_key(suite, rng, bits)


def _seal(session: Session, records: Iterable[PatientRecord], rng: random.Random,
          wrapped_key: bytes) -> SealedEnvelope:
    cipher = new_cipher(session.session_key)
    iv = rng.randbytes(cipher.block_size)
    ciphertext = mode_encrypt(cipher, iv, Mode.CBC, pad(serialize_records(records), cipher.block_size))
    unsigned = SealedEnvelope(session.local_id, rng.randbytes(NONCE_SIZE), session.suite,
                              wrapped_key, iv, ciphertext, b"")
    sig = digsig.sign(digsig.hash(signed_header(unsigned)), session.own_key)
    return dataclasses.replace(unsigned, signature=sig.to_bytes(session.own_key.n))


def start_session(own_key: RsaPrivateKey, peer_pub: RsaPublicKey, rng: random.Random, *,
                  sender_id: bytes, suite: Suite = DEFAULT_SUITE,
                  rotation_period: int = DEFAULT_ROTATION_PERIOD,
                  blowfish_bits: int = 128) -> tuple[Session, SealedEnvelope]:
    """New session plus the opening envelope (no records) carrying the wrapped key."""
    if len(sender_id) != ID_SIZE:
        raise ValueError("sender_id is 16 bytes")
    if rotation_period < 1:
        raise ValueError("rotation period must be positive")
    key = generate_key(suite, rng, blowfish_bits if suite is Suite.BLOWFISH else None)
    session = Session(
        session_id=rng.randbytes(16), local_id=bytes(sender_id), suite=suite, session_key=key,
        own_key=own_key, peer_public_key=peer_pub, rotation_period=rotation_period,
    )
    env = _seal(session, (), rng, wrap_key(key, peer_pub, rng))
    return dataclasses.replace(session, send_counter=1), env


def seal_envelope(session: Session, records: Iterable[PatientRecord],
                  rng: random.Random) -> tuple[SealedEnvelope, Session]:
    wrapped = b""
    since = session.messages_since_rotation
    if since >= session.rotation_period:
        key = _fresh_key(session.suite, rng, like=session.session_key)
        wrapped = wrap_key(key, session.peer_public_key, rng)
        session = dataclasses.replace(session, session_key=key)
        since = 0
    env = _seal(session, records, rng, wrapped)
    return env, dataclasses.replace(session, send_counter=session.send_counter + 1,
                                    messages_since_rotation=since + 1)


def _check_signature(env: SealedEnvelope, peer_pub: RsaPublicKey) -> None:
    sig = digsig.Signature(int.from_bytes(env.signature, "big"), peer_pub.key_id)
    if not env.signature or not digsig.verify(digsig.hash(signed_header(env)), sig, peer_pub):
        raise AuthenticityError("envelope signature does not verify")


def open_envelope(env: SealedEnvelope, own_key: RsaPrivateKey, peer_pub: RsaPublicKey,
                  session: Session | None = None, *,
                  local_id: bytes = bytes(ID_SIZE)) -> tuple[list[PatientRecord], Session]:
    """Authenticate and decrypt ``env``.

    With ``session=None`` the envelope must open a session (carry a wrapped
    key); the returned session then tracks that peer.
    """
    if session is not None:
        if session.peer_public_key != peer_pub or session.own_key != own_key:
            raise ValueError("keys do not match the session")
        if env.nonce in session.seen_nonces:
            raise ReplayError(f"nonce {env.nonce.hex()} already accepted")
        if session.peer_id is not None and env.sender_id != session.peer_id:
            raise AuthenticityError("sender is not this session's peer")
    _check_signature(env, peer_pub)

    if env.wrapped_key:
        key = unwrap_key(env.wrapped_key, env.suite, own_key)
    elif session is None:
        raise DecryptError("first envelope of a session must carry a wrapped key")
    elif env.suite is not session.suite:
        raise DecryptError("suite changed without a new key")
    else:
        key = session.session_key

    try:
        plain = unpad(mode_decrypt(new_cipher(key), env.iv, Mode.CBC, env.ciphertext),
                      env.suite.block_size)
        records = deserialize_records(plain)
    except (ValueError, MedcryptError) as exc:
        raise DecryptError(f"envelope contents unreadable: {exc}") from None

    if session is None:
        session = Session(
            session_id=hashlib.sha256(env.wrapped_key + env.nonce).digest()[:16],
            local_id=bytes(local_id), suite=env.suite, session_key=key, own_key=own_key,
            peer_public_key=peer_pub, peer_id=env.sender_id,
        )
    session = dataclasses.replace(
        session, suite=env.suite, session_key=key, peer_id=env.sender_id,
        seen_nonces=session.seen_nonces | {env.nonce},
    )
    return records, session
