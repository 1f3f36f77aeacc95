"""Block ciphers written from their published definitions, plus shared modes."""

from medcrypt.ciphers.aes import Aes
from medcrypt.ciphers.blowfish import Blowfish
from medcrypt.ciphers.core import (
    BlockCipher,
    BlockCipherSuite,
    BlockKey,
    InitializationVector,
    Mode,
    Suite,
    generate_key,
    mode_decrypt,
    mode_encrypt,
    pad,
    read_key_file,
    unpad,
    write_key_file,
)
from medcrypt.ciphers.des import Des, TripleDes

_CIPHERS = {
    Suite.DES: Des,
    Suite.TDES: TripleDes,
    Suite.AES128: Aes,
    Suite.AES192: Aes,
    Suite.AES256: Aes,
    Suite.BLOWFISH: Blowfish,
}


def new_cipher(key: BlockKey) -> BlockCipher:
    """Keyed cipher object for ``key``'s suite."""
    return _CIPHERS[key.suite](key)


def encrypt(key: BlockKey, plaintext: bytes, rng, mode: Mode = Mode.CBC) -> bytes:
    """Pad and encrypt; CBC output is ``iv || ciphertext`` with a fresh IV."""
    cipher = new_cipher(key)
    mode = Mode(mode)
    iv = rng.randbytes(cipher.block_size) if mode is Mode.CBC else b""
    return iv + mode_encrypt(cipher, iv or None, mode, pad(plaintext, cipher.block_size))


def decrypt(key: BlockKey, data: bytes, mode: Mode = Mode.CBC) -> bytes:
    cipher = new_cipher(key)
    mode = Mode(mode)
    bs = cipher.block_size
    iv, body = (data[:bs], data[bs:]) if mode is Mode.CBC else (None, data)
    return unpad(mode_decrypt(cipher, iv, mode, body), bs)


__all__ = [
    "Aes", "Blowfish", "BlockCipher", "BlockCipherSuite", "BlockKey", "Des", "InitializationVector",
    "Mode", "Suite", "TripleDes", "decrypt", "encrypt", "generate_key", "mode_decrypt", "mode_encrypt",
    "new_cipher", "pad", "read_key_file", "unpad", "write_key_file",
]
