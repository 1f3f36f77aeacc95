import pytest
from hypothesis import given, settings, strategies as st

from medcrypt.ciphers import BlockKey, Suite
from medcrypt.ciphers.aes import (
    INV_SBOX,
    SBOX,
    Aes,
    aes_decrypt_block,
    aes_encrypt_block,
    aes_key_expansion,
    add_round_key,
    gf_inverse,
    gf_mul,
    mix_columns,
    shift_rows,
    sub_bytes,
)
from medcrypt.errors import KeyLengthError
from vectors import AES128, AES192, AES256

block = st.binary(min_size=16, max_size=16)


@pytest.mark.parametrize("key,pt,ct", AES128 + AES192 + AES256)
def test_known_answers(key, pt, ct):
    rk = aes_key_expansion(bytes.fromhex(key))
    assert aes_encrypt_block(bytes.fromhex(pt), rk).hex() == ct
    assert aes_decrypt_block(bytes.fromhex(ct), rk).hex() == pt


def test_sbox_spot_values():
    assert SBOX[0x00] == 0x63
    assert SBOX[0x53] == 0xED
    assert INV_SBOX[0x63] == 0x00


def test_sbox_is_a_permutation_without_fixed_points():
    assert sorted(SBOX.tolist()) == list(range(256))
    for x in range(256):
        assert INV_SBOX[SBOX[x]] == x
        assert SBOX[x] != x and SBOX[x] != x ^ 0xFF


def test_field_inverse():
    assert gf_inverse(0) == 0
    for a in range(1, 256):
        assert gf_mul(a, gf_inverse(a)) == 1


def test_gf_mul_examples():
    # xtime chain from the standard's worked multiplication
    assert gf_mul(0x57, 0x83) == 0xC1
    assert gf_mul(0x57, 0x13) == 0xFE


@pytest.mark.parametrize("nbytes,rounds", [(16, 10), (24, 12), (32, 14)])
def test_round_count_by_key_size(nbytes, rounds):
    rk = aes_key_expansion(bytes(nbytes))
    assert rk.rounds == rounds
    suite = {16: Suite.AES128, 24: Suite.AES192, 32: Suite.AES256}[nbytes]
    cipher = Aes(BlockKey(suite, bytes(nbytes)))
    assert cipher.rounds == rounds
    assert len(cipher.trace_block(bytes(16))) == rounds


def test_key_expansion_last_word():
    rk = aes_key_expansion(bytes.fromhex("2b7e151628aed2a6abf7158809cf4f3c"))
    assert bytes(rk.round_keys[-1]).hex() == "d014f9a8c9ee2589e13f0cc8b6630ca6"


@pytest.mark.parametrize("n", [0, 15, 17, 20, 33])
def test_bad_key_lengths(n):
    with pytest.raises(KeyLengthError):
        aes_key_expansion(bytes(n))


@given(block)
def test_phase_inverses(state):
    assert sub_bytes(sub_bytes(state), inverse=True) == state
    assert shift_rows(shift_rows(state), inverse=True) == state
    assert mix_columns(mix_columns(state), inverse=True) == state


@given(block, block)
def test_mix_columns_is_linear(a, b):
    xor = bytes(x ^ y for x, y in zip(a, b))
    mixed = bytes(x ^ y for x, y in zip(mix_columns(a), mix_columns(b)))
    assert mix_columns(xor) == mixed


@given(block, block)
def test_add_round_key_is_xor(state, key):
    assert add_round_key(add_round_key(state, key), key) == state


def test_shift_rows_moves_rows_left():
    # column-major: byte (row r, col c) at index 4c + r
    state = bytes(range(16))
    out = shift_rows(state)
    for r in range(4):
        for c in range(4):
            assert out[4 * c + r] == state[4 * ((c + r) % 4) + r]


def test_mix_columns_standard_column():
    col = bytes.fromhex("db135345") * 4
    assert mix_columns(col) == bytes.fromhex("8e4da1bc") * 4


@settings(max_examples=100)
@given(st.sampled_from([16, 24, 32]).flatmap(lambda n: st.binary(min_size=n, max_size=n)), block)
def test_block_round_trip(key, pt):
    rk = aes_key_expansion(key)
    assert aes_decrypt_block(aes_encrypt_block(pt, rk), rk) == pt
