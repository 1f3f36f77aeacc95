import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from medcrypt import rsa
from medcrypt.errors import MessageRangeError, ScaleError

_pair_256 = rsa.rsa_keygen(256, random.Random(99))


@pytest.fixture(scope="module")
def toy():
    return rsa.keypair_from_primes(3, 11)


def test_toy_key(toy):
    assert (toy.n, toy.phi_n, toy.e, toy.d) == (33, 20, 3, 7)


def test_toy_examples(toy):
    assert rsa.rsa_encrypt(2, toy.public) == 8
    assert rsa.rsa_encrypt(4, toy.public) == 31
    assert rsa.rsa_decrypt(8, toy.private) == 2


def test_toy_exhaustive_round_trip(toy):
    for m in range(33):
        assert rsa.rsa_decrypt(rsa.rsa_encrypt(m, toy.public), toy.private) == m


def test_cycle_attack_on_toy(toy):
    result = rsa.cycle_attack(8, toy.public, 100)
    assert result == rsa.CycleResult(plaintext=2, iterations=4)


def test_cycle_attack_gives_up():
    pair = rsa.rsa_keygen(128, random.Random(5))
    c = rsa.rsa_encrypt(123456789, pair.public)
    assert rsa.cycle_attack(c, pair.public, 3) is None


def test_brute_force_private_key(toy):
    assert rsa.brute_force_private_key(toy.public).d == 7
    with pytest.raises(ScaleError):
        rsa.brute_force_private_key(rsa.RsaPublicKey(3, 10**6 + 3))


def test_range_errors(toy):
    for bad in (-1, 33, 100):
        with pytest.raises(MessageRangeError):
            rsa.rsa_encrypt(bad, toy.public)
        with pytest.raises(MessageRangeError):
            rsa.rsa_decrypt(bad, toy.private)


def test_exponent_choice():
    assert rsa.choose_public_exponent(20) == 3
    assert rsa.choose_public_exponent(10**6) == 65537
    # 65537 divides phi: fall back to a small coprime
    assert rsa.choose_public_exponent(65537 * 6) == 5


def test_inconsistent_keypair_rejected():
    with pytest.raises(ValueError):
        rsa.RsaKeyPair(3, 11, 33, 20, 3, 9)
    with pytest.raises(ValueError):
        rsa.keypair_from_primes(3, 11, e=5)


@given(st.integers(0, 2**200), st.integers(0, 2**200), st.integers(2, 2**200))
def test_mod_pow_matches_builtin(b, e, m):
    assert rsa.mod_pow(b, e, m) == pow(b, e, m)


@given(st.integers(1, 2**128), st.integers(2, 2**128))
def test_mod_inverse(a, m):
    if sympy.gcd(a, m) == 1:
        assert a * rsa.mod_inverse(a, m) % m == 1
    else:
        with pytest.raises(ValueError):
            rsa.mod_inverse(a, m)


def test_primality_against_sympy():
    rng = random.Random(11)
    for n in list(range(0, 3000)) + [rng.getrandbits(64) for _ in range(300)]:
        assert rsa.is_probable_prime(n, rng) == sympy.isprime(n), n


@pytest.mark.parametrize("n", [561, 1105, 1729, 2465, 2821, 6601, 3215031751, 2152302898747])
def test_carmichael_and_strong_pseudoprimes_rejected(n):
    assert not rsa.is_probable_prime(n, random.Random(0))


@pytest.mark.parametrize("bits", [16, 64, 128, 256, 512])
def test_keygen_properties(bits):
    pair = rsa.rsa_keygen(bits, random.Random(bits))
    assert pair.n.bit_length() == bits
    assert sympy.isprime(pair.p) and sympy.isprime(pair.q)
    assert pair.e * pair.d % pair.phi_n == 1


def test_keygen_is_reproducible():
    assert rsa.rsa_keygen(256, random.Random(3)) == rsa.rsa_keygen(256, random.Random(3))


@settings(max_examples=50)
@given(st.binary(max_size=200), st.integers(0, 2**32))
def test_byte_round_trip(data, seed):
    rng = random.Random(seed)
    pair = _pair_256
    blob = rsa.encrypt_bytes(data, pair.public, rng)
    assert len(blob) % rsa.modulus_bytes(pair.n) == 0
    assert rsa.decrypt_bytes(blob, pair.private) == data


def test_leading_zero_bytes_survive():
    data = bytes(40)
    blob = rsa.encrypt_bytes(data, _pair_256.public, random.Random(1))
    assert rsa.decrypt_bytes(blob, _pair_256.private) == data


def test_key_files(tmp_path):
    pair = _pair_256
    rsa.write_public_key(tmp_path / "k.pub", pair.public)
    rsa.write_private_key(tmp_path / "k.key", pair.private)
    assert rsa.read_public_key(tmp_path / "k.pub") == pair.public
    assert rsa.read_private_key(tmp_path / "k.key") == pair.private
    assert pair.key_id == pair.public.key_id == pair.private.key_id
    assert str(pair.d) not in repr(pair.private)
