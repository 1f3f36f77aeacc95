"""Throughput comparison of the symmetric suites against textbook RSA, and
the desk-scale DES key search.

Every row in a report is measured on the same seeded payload.  Symmetric
suites run CBC over the padded payload; RSA runs chunk-by-chunk through
``rsa.encrypt_bytes`` (one random lead byte per chunk).  Each timing is the
median of ``repetitions`` runs.
"""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from medcrypt import rsa
from medcrypt.ciphers import Mode, Suite, generate_key, new_cipher
from medcrypt.ciphers.core import mode_decrypt, mode_encrypt, pad
from medcrypt.ciphers.des import brute_force_key, des_encrypt_block, des_key_schedule

MAX_UNKNOWN_BITS = 24
DIRECTIONS = ("encrypt", "decrypt")


@dataclass(frozen=True)
class BenchRow:
    algorithm: str
    payload_bytes: int
    elapsed: float
    direction: str

    @property
    def throughput(self) -> float:
        """Bytes per second."""
        return self.payload_bytes / self.elapsed if self.elapsed > 0 else float("inf")


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    HEADER = ("algorithm", "payload_bytes", "elapsed_s", "throughput_Bps", "direction")

    def to_tsv(self) -> str:
        lines = ["\t".join(self.HEADER)]
        for r in self.rows:
            lines.append(f"{r.algorithm}\t{r.payload_bytes}\t{r.elapsed:.6f}\t{r.throughput:.1f}\t{r.direction}")
        return "\n".join(lines) + "\n"

    def get(self, algorithm: str, direction: str = "encrypt") -> BenchRow:
        for r in self.rows:
            if r.algorithm == algorithm and r.direction == direction:
                return r
        raise KeyError((algorithm, direction))


def _median_time(fn: Callable[[], object], repetitions: int) -> float:
    times = []
    for _ in range(repetitions):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def run_benchmark(suites: Iterable[Suite | str], rsa_bits: int = 1024, payload_size: int = 1 << 20,
                  repetitions: int = 3, seed: int = 0,
                  directions: Iterable[str] = ("encrypt",)) -> BenchReport:
    suites = [s if isinstance(s, Suite) else Suite.from_name(s) for s in suites]
    directions = tuple(directions)
    if any(d not in DIRECTIONS for d in directions):
        raise ValueError(f"directions must be drawn from {DIRECTIONS}")
    if payload_size < 16:
        raise ValueError("payload must be at least one block (16 bytes)")
    if repetitions < 3:
        raise ValueError("at least 3 repetitions are needed for a median")
    rng = random.Random(seed)
    payload = rng.randbytes(payload_size)
    report = BenchReport()

    for suite in suites:
        cipher = new_cipher(generate_key(suite, rng))
        iv = rng.randbytes(cipher.block_size)
        padded = pad(payload, cipher.block_size)
        # Warm-up: first call may load compiled kernels.
        ciphertext = mode_encrypt(cipher, iv, Mode.CBC, padded)
        mode_decrypt(cipher, iv, Mode.CBC, ciphertext)
        if "encrypt" in directions:
            t = _median_time(lambda: mode_encrypt(cipher, iv, Mode.CBC, padded), repetitions)
            report.rows.append(BenchRow(suite.name, payload_size, t, "encrypt"))
        if "decrypt" in directions:
            t = _median_time(lambda: mode_decrypt(cipher, iv, Mode.CBC, ciphertext), repetitions)
            report.rows.append(BenchRow(suite.name, payload_size, t, "decrypt"))

    keys = rsa.rsa_keygen(rsa_bits, rng)
    name = f"RSA{rsa_bits}"
    wrapped = rsa.encrypt_bytes(payload, keys.public, rng)
    if "encrypt" in directions:
        t = _median_time(lambda: rsa.encrypt_bytes(payload, keys.public, rng), repetitions)
        report.rows.append(BenchRow(name, payload_size, t, "encrypt"))
    if "decrypt" in directions:
        t = _median_time(lambda: rsa.decrypt_bytes(wrapped, keys.private), repetitions)
        report.rows.append(BenchRow(name, payload_size, t, "decrypt"))
    return report


@dataclass(frozen=True)
class BruteForceTask:
    """Known plaintext/ciphertext pair plus a key template.

    The ``unknown_key_bits`` lowest effective (non-parity) bits of the
    template are searched; the rest are taken as known.
    """

    known_plaintext: int
    known_ciphertext: int
    unknown_key_bits: int
    fixed_key_template: int

    def __post_init__(self):
        if not 0 <= self.unknown_key_bits <= MAX_UNKNOWN_BITS:
            raise ValueError(f"unknown_key_bits must be in [0, {MAX_UNKNOWN_BITS}]")

    @classmethod
    def from_random_key(cls, unknown_bits: int, rng: random.Random) -> tuple[BruteForceTask, int]:
        """A solvable task built from a random key; returns (task, the key)."""
        key = rng.getrandbits(64)
        pt = rng.getrandbits(64)
        ct = des_encrypt_block(pt, des_key_schedule(key))
        # Scramble the unknown bits so the template alone is not the answer.
        template = key ^ rng.getrandbits(64)
        known_mask = 0
        for pos in [p for p in range(64) if p % 8][unknown_bits:]:
            known_mask |= 1 << pos
        template = (template & ~known_mask) | (key & known_mask)
        return cls(pt, ct, unknown_bits, template), key


def des_brute_force(task: BruteForceTask) -> int | None:
    """First (lowest-counter) key consistent with the pair, or ``None``."""
    return brute_force_key(task.known_plaintext, task.known_ciphertext,
                           task.fixed_key_template, task.unknown_key_bits)
