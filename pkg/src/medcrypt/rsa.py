"""Textbook RSA, plus the two attacks on it worth demonstrating at desk scale.

Key generation follows the classic five steps: draw primes p and q, form
n = p*q and phi(n) = (p-1)(q-1), pick e coprime to phi(n), and take
d = e^-1 mod phi(n).  No message padding happens here; callers that need
randomised encryption (key wrapping) add it themselves.

Randomness is always passed in as a ``random.Random``-compatible object.
Use ``random.SystemRandom()`` for real keys.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from pathlib import Path

from medcrypt.errors import MessageRangeError, ScaleError

PREFERRED_E = 65537
MILLER_RABIN_ROUNDS = 40
BRUTE_FORCE_LIMIT = 10**6

_SMALL_PRIMES = [p for p in range(3, 1000) if all(p % q for q in range(2, int(p**0.5) + 1))]


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """Left-to-right square-and-multiply."""
    if modulus == 1:
        return 0
    result = 1
    base %= modulus
    for bit in bin(exponent)[2:]:
        result = result * result % modulus
        if bit == "1":
            result = result * base % modulus
    return result


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def mod_inverse(a: int, m: int) -> int:
    g, x, _ = egcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} has no inverse modulo {m}")
    return x % m


def is_probable_prime(n: int, rng: random.Random, rounds: int = MILLER_RABIN_ROUNDS) -> bool:
    if n < 2:
        return False
    if n in (2, 3):
        return True
    if n % 2 == 0:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        x = mod_pow(rng.randrange(2, n - 1), d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def generate_prime(bits: int, rng: random.Random) -> int:
    """Probable prime of exactly ``bits`` bits (Miller-Rabin, 40 rounds)."""
    if bits < 8:
        raise ValueError("prime size must be at least 8 bits")
    while True:
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(candidate, rng):
            return candidate


@dataclass(frozen=True)
class RsaPublicKey:
    e: int
    n: int

    def __post_init__(self):
        if self.e <= 0 or self.n <= 1:
            raise ValueError("public key values must be positive")

    @property
    def key_id(self) -> str:
        return key_id(self.n)


@dataclass(frozen=True)
class RsaPrivateKey:
    d: int
    n: int

    def __post_init__(self):
        if self.d <= 0 or self.n <= 1:
            raise ValueError("private key values must be positive")

    @property
    def key_id(self) -> str:
        return key_id(self.n)

    def __repr__(self):
        return f"RsaPrivateKey(n={self.n.bit_length()} bits, id={self.key_id})"


@dataclass(frozen=True)
class RsaKeyPair:
    p: int
    q: int
    n: int
    phi_n: int
    e: int
    d: int

    def __post_init__(self):
        if min(self.p, self.q, self.e, self.d) <= 0:
            raise ValueError("RSA key values must be positive")
        if self.p == self.q:
            raise ValueError("p and q must differ")
        if self.n != self.p * self.q or self.phi_n != (self.p - 1) * (self.q - 1):
            raise ValueError("n or phi(n) inconsistent with p, q")
        if egcd(self.phi_n, self.e)[0] != 1 or self.e * self.d % self.phi_n != 1:
            raise ValueError("e and d are not inverse modulo phi(n)")

    @property
    def public(self) -> RsaPublicKey:
        return RsaPublicKey(self.e, self.n)

    @property
    def private(self) -> RsaPrivateKey:
        return RsaPrivateKey(self.d, self.n)

    @property
    def key_id(self) -> str:
        return key_id(self.n)

    def __repr__(self):
        return f"RsaKeyPair(n={self.n.bit_length()} bits, e={self.e}, id={self.key_id})"


def key_id(n: int) -> str:
    """Short stable identifier for a modulus."""
    return hashlib.sha256(n.to_bytes((n.bit_length() + 7) // 8 or 1, "big")).hexdigest()[:16]


def choose_public_exponent(phi_n: int) -> int:
    """65537 if it fits below phi(n) and is coprime to it, else the smallest odd coprime >= 3."""
    if PREFERRED_E < phi_n and egcd(phi_n, PREFERRED_E)[0] == 1:
        return PREFERRED_E
    e = 3
    while egcd(phi_n, e)[0] != 1:
        e += 2
    if e >= phi_n:
        raise ValueError(f"no usable public exponent below phi(n)={phi_n}")
    return e


def keypair_from_primes(p: int, q: int, e: int | None = None) -> RsaKeyPair:
    if p == q:
        raise ValueError("p and q must differ")
    n = p * q
    phi_n = (p - 1) * (q - 1)
    if e is None:
        e = choose_public_exponent(phi_n)
    elif egcd(phi_n, e)[0] != 1:
        raise ValueError(f"e={e} is not coprime to phi(n)={phi_n}")
    d = mod_inverse(e, phi_n)
    return RsaKeyPair(p, q, n, phi_n, e, d)


def rsa_keygen(bits: int, rng: random.Random) -> RsaKeyPair:
    """Key pair whose modulus has exactly ``bits`` bits."""
    if bits < 16:
        raise ValueError("modulus must be at least 16 bits")
    p_bits = (bits + 1) // 2
    q_bits = bits - p_bits
    while True:
        p = generate_prime(p_bits, rng)
        q = generate_prime(q_bits, rng)
        if p == q or (p * q).bit_length() != bits:
            continue
        try:
            return keypair_from_primes(p, q)
        except ValueError:
            continue


def _check_range(value: int, n: int) -> None:
    if not 0 <= value < n:
        raise MessageRangeError(f"value must lie in [0, {n}), got {value}")


def rsa_encrypt(m: int, pub: RsaPublicKey) -> int:
    _check_range(m, pub.n)
    return mod_pow(m, pub.e, pub.n)


def rsa_decrypt(c: int, priv: RsaPrivateKey) -> int:
    _check_range(c, priv.n)
    return mod_pow(c, priv.d, priv.n)


@dataclass(frozen=True)
class CycleResult:
    plaintext: int
    iterations: int


def cycle_attack(c: int, pub: RsaPublicKey, max_iterations: int) -> CycleResult | None:
    """Re-encrypt ``c`` until it comes back; the value just before is the plaintext.

    Returns ``None`` if the cycle does not close within ``max_iterations``.
    """
    _check_range(c, pub.n)
    prev = c
    for k in range(1, max_iterations + 1):
        cur = rsa_encrypt(prev, pub)
        if cur == c:
            return CycleResult(prev, k)
        prev = cur
    return None


def brute_force_private_key(pub: RsaPublicKey) -> RsaPrivateKey:
    """Recover d by trial-division factoring.  Only feasible for tiny moduli."""
    if pub.n > BRUTE_FORCE_LIMIT:
        raise ScaleError(f"n={pub.n} exceeds the desk-scale limit {BRUTE_FORCE_LIMIT}")
    p = next((f for f in range(2, int(pub.n**0.5) + 1) if pub.n % f == 0), None)
    if p is None:
        raise ValueError(f"n={pub.n} is prime; not an RSA modulus")
    q = pub.n // p
    return RsaPrivateKey(mod_inverse(pub.e, (p - 1) * (q - 1)), pub.n)


# Byte-level helpers: chunking with a nonzero random lead byte per chunk.

def modulus_bytes(n: int) -> int:
    return (n.bit_length() + 7) // 8


def chunk_capacity(n: int) -> int:
    """Payload bytes per chunk: one byte for the random lead, one below the modulus width."""
    return modulus_bytes(n) - 2


def encrypt_bytes(data: bytes, pub: RsaPublicKey, rng: random.Random) -> bytes:
    """Chunked textbook encryption; each chunk is ``lead || data`` with lead in 1..255.

    The nonzero lead keeps every chunk below n and preserves leading zero
    bytes of the data.  Output is a run of fixed-width ciphertext integers.
    """
    cap = chunk_capacity(pub.n)
    if cap < 1:
        raise ValueError("modulus too small to carry byte chunks (need at least 3 bytes)")
    width = modulus_bytes(pub.n)
    out = bytearray()
    for i in range(0, len(data), cap):
        chunk = bytes([rng.randrange(1, 256)]) + data[i:i + cap]
        out += rsa_encrypt(int.from_bytes(chunk, "big"), pub).to_bytes(width, "big")
    return bytes(out)


def decrypt_bytes(blob: bytes, priv: RsaPrivateKey) -> bytes:
    width = modulus_bytes(priv.n)
    if len(blob) % width:
        raise ValueError("ciphertext is not a whole number of modulus-width chunks")
    out = bytearray()
    for i in range(0, len(blob), width):
        m = rsa_decrypt(int.from_bytes(blob[i:i + width], "big"), priv)
        chunk = m.to_bytes(modulus_bytes(m) or 1, "big")
        if len(chunk) < 2 or chunk[0] == 0:
            raise ValueError("chunk does not carry a lead byte")
        out += chunk[1:]
    return bytes(out)


# Key files: "e=", "d=", "n=" lines, decimal or 0x-prefixed hex.

def _read_fields(path) -> dict[str, int]:
    fields = {}
    for line in Path(path).read_text(encoding="ascii").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"bad key file line {line!r}")
        fields[name.strip().lower()] = int(value.strip(), 0)
    return fields


def write_public_key(path, pub: RsaPublicKey) -> None:
    Path(path).write_text(f"e={pub.e}\nn={pub.n}\n", encoding="ascii")


def write_private_key(path, priv: RsaPrivateKey) -> None:
    Path(path).write_text(f"d={priv.d}\nn={priv.n}\n", encoding="ascii")


def read_public_key(path) -> RsaPublicKey:
    f = _read_fields(path)
    return RsaPublicKey(f["e"], f["n"])


def read_private_key(path) -> RsaPrivateKey:
    f = _read_fields(path)
    return RsaPrivateKey(f["d"], f["n"])
