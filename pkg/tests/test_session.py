import dataclasses
import random
from decimal import Decimal

import pytest

from medcrypt import rsa
from medcrypt.ciphers import Suite
from medcrypt.errors import AuthenticityError, DecryptError, ReplayError
from medcrypt.telemed import (
    PatientRecord,
    decode_frame,
    encode_frame,
    open_envelope,
    seal_envelope,
    start_session,
)

RNG = random.Random(77)
PATIENT = rsa.rsa_keygen(512, RNG)
DOCTOR = rsa.rsa_keygen(512, RNG)
MALLORY = rsa.rsa_keygen(512, RNG)
PID = bytes.fromhex("0a" * 16)
SENDER = b"patient-device-1"


def _records(n, start=0):
    return [PatientRecord(PID, start + i, "heart_rate", Decimal(f"{60 + i}.5"), "bpm") for i in range(n)]


def _handshake(rng, suite=Suite.AES128, **kw):
    sess, opening = start_session(PATIENT.private, DOCTOR.public, rng, sender_id=SENDER, suite=suite, **kw)
    got, doc = open_envelope(opening, DOCTOR.private, PATIENT.public)
    assert got == []
    return sess, doc


@pytest.mark.parametrize("suite", list(Suite))
def test_round_trip_every_suite(suite):
    rng = random.Random(suite.value)
    sess, doc = _handshake(rng, suite)
    for batch in (_records(3), [], _records(5, 10)):
        env, sess = seal_envelope(sess, batch, rng)
        got, doc = open_envelope(decode_frame(encode_frame(env)), DOCTOR.private, PATIENT.public, doc)
        assert got == batch


def test_replay_rejected():
    rng = random.Random(1)
    sess, doc = _handshake(rng)
    env, sess = seal_envelope(sess, _records(2), rng)
    _, doc = open_envelope(env, DOCTOR.private, PATIENT.public, doc)
    with pytest.raises(ReplayError):
        open_envelope(env, DOCTOR.private, PATIENT.public, doc)


def test_failed_open_does_not_burn_nonce():
    rng = random.Random(2)
    sess, doc = _handshake(rng)
    env, sess = seal_envelope(sess, _records(2), rng)
    bad = dataclasses.replace(env, ciphertext=bytes(len(env.ciphertext)))
    with pytest.raises(AuthenticityError):
        open_envelope(bad, DOCTOR.private, PATIENT.public, doc)
    got, _ = open_envelope(env, DOCTOR.private, PATIENT.public, doc)
    assert got == _records(2)


def test_wrong_signer_rejected():
    rng = random.Random(3)
    sess, doc = _handshake(rng)
    forged_sess = dataclasses.replace(sess, own_key=MALLORY.private)
    env, _ = seal_envelope(forged_sess, _records(1), rng)
    with pytest.raises(AuthenticityError):
        open_envelope(env, DOCTOR.private, PATIENT.public, doc)


def test_sender_switch_rejected():
    rng = random.Random(4)
    sess, doc = _handshake(rng)
    env, _ = seal_envelope(dataclasses.replace(sess, local_id=b"other-device-002"), _records(1), rng)
    with pytest.raises(AuthenticityError):
        open_envelope(env, DOCTOR.private, PATIENT.public, doc)


def test_key_for_someone_else_is_undecryptable():
    rng = random.Random(5)
    sess, opening = start_session(PATIENT.private, MALLORY.public, rng, sender_id=SENDER)
    with pytest.raises(DecryptError):
        open_envelope(opening, DOCTOR.private, PATIENT.public)


def test_session_must_open_with_key():
    rng = random.Random(6)
    sess, doc = _handshake(rng)
    env, _ = seal_envelope(sess, _records(1), rng)
    with pytest.raises(DecryptError):
        open_envelope(env, DOCTOR.private, PATIENT.public)


def test_key_rotation():
    rng = random.Random(7)
    sess, doc = _handshake(rng, rotation_period=5)
    keys = {sess.session_key}
    for i in range(12):
        env, sess = seal_envelope(sess, _records(1, i), rng)
        assert bool(env.wrapped_key) == (i in (5, 10))
        keys.add(sess.session_key)
        got, doc = open_envelope(env, DOCTOR.private, PATIENT.public, doc)
        assert got == _records(1, i)
        assert doc.session_key == sess.session_key
    assert len(keys) == 3


def test_sessions_are_immutable():
    rng = random.Random(8)
    sess, doc = _handshake(rng)
    env, sess2 = seal_envelope(sess, _records(1), rng)
    assert sess.send_counter == 1 and sess2.send_counter == 2
    _, doc2 = open_envelope(env, DOCTOR.private, PATIENT.public, doc)
    assert env.nonce in doc2.seen_nonces and env.nonce not in doc.seen_nonces


def test_start_session_validation():
    with pytest.raises(ValueError):
        start_session(PATIENT.private, DOCTOR.public, random.Random(), sender_id=b"short")
    with pytest.raises(ValueError):
        start_session(PATIENT.private, DOCTOR.public, random.Random(), sender_id=SENDER, rotation_period=0)


def test_session_repr_hides_key():
    sess, _ = _handshake(random.Random(9))
    assert sess.session_key.key_bytes.hex() not in repr(sess)
