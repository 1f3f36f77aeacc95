"""medcrypt command line.

Exit status: 0 success, 1 usage error, 2 cryptographic or protocol failure.
Results go to stdout; diagnostics to stderr.  ``--seed`` makes every
random choice (keys, IVs, nonces, padding bytes) reproducible.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from decimal import Decimal, InvalidOperation
from pathlib import Path

from medcrypt import digsig, rsa
from medcrypt.bench import BruteForceTask, des_brute_force, run_benchmark
from medcrypt.ciphers import Mode, Suite, decrypt, encrypt, generate_key, read_key_file
from medcrypt.errors import MedcryptError
from medcrypt.telemed import (
    PatientRecord,
    RecordStore,
    iter_frames,
    open_envelope,
    seal_envelope,
    serialize_records,
    start_session,
    write_frames,
)

EXIT_OK, EXIT_USAGE, EXIT_CRYPTO = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _rng(args) -> random.Random:
    return random.Random(args.seed) if args.seed is not None else random.SystemRandom()


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write_output(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _hex_bytes(text: str, size: int | None = None, what: str = "value") -> bytes:
    try:
        raw = bytes.fromhex(text)
    except ValueError:
        raise UsageError(f"{what} is not hex: {text!r}") from None
    if size is not None and len(raw) != size:
        raise UsageError(f"{what} must be {size} bytes")
    return raw


def _int(text: str) -> int:
    return int(text, 0)


def _one_key(path: str):
    keys = read_key_file(path)
    if len(keys) != 1:
        raise UsageError(f"{path} must hold exactly one key line")
    return keys[0]


# -- subcommands ------------------------------------------------------------

def cmd_keygen(args) -> int:
    rng = _rng(args)
    if args.rsa is not None:
        if not args.out:
            raise UsageError("--rsa needs --out PREFIX")
        pair = rsa.rsa_keygen(args.rsa, rng)
        rsa.write_public_key(f"{args.out}.pub", pair.public)
        rsa.write_private_key(f"{args.out}.key", pair.private)
        print(pair.key_id)
        return EXIT_OK
    if args.suite is None:
        raise UsageError("keygen needs --suite or --rsa")
    key = generate_key(Suite.from_name(args.suite), rng, args.bits)
    line = key.to_line() + "\n"
    if args.out:
        Path(args.out).write_text(line, encoding="ascii")
    else:
        sys.stdout.write(line)
    return EXIT_OK


def cmd_encrypt(args) -> int:
    key = _one_key(args.key)
    data = encrypt(key, _read_input(args.input), _rng(args), Mode[args.mode.upper()])
    _write_output(args.output, data)
    return EXIT_OK


def cmd_decrypt(args) -> int:
    key = _one_key(args.key)
    _write_output(args.output, decrypt(key, _read_input(args.input), Mode[args.mode.upper()]))
    return EXIT_OK


def cmd_sign(args) -> int:
    priv = rsa.read_private_key(args.key)
    sig = digsig.sign_bytes(_read_input(args.input), priv)
    if args.output == "-":
        sys.stdout.write(sig.to_text())
    else:
        digsig.write_signature(args.output, sig)
    return EXIT_OK


def cmd_verify(args) -> int:
    pub = rsa.read_public_key(args.key)
    sig = digsig.read_signature(args.sig)
    if sig.signer_key_id != pub.key_id:
        print("invalid: signature names a different key", file=sys.stderr)
        return EXIT_CRYPTO
    if not digsig.verify_bytes(_read_input(args.input), sig, pub):
        print("invalid")
        return EXIT_CRYPTO
    print("valid")
    return EXIT_OK


def cmd_record_add(args) -> int:
    try:
        value = Decimal(args.value)
    except InvalidOperation:
        raise UsageError(f"bad value {args.value!r}") from None
    record = PatientRecord(_hex_bytes(args.patient, 16, "patient id"), args.timestamp,
                           args.measurement, value, args.unit)
    store = RecordStore(args.store)
    store.append(record)
    print(len(store))
    return EXIT_OK


def _seal_frames(args) -> list:
    records = RecordStore.load(args.records)
    rng = _rng(args)
    own = rsa.read_private_key(args.own)
    peer = rsa.read_public_key(args.peer)
    session, opening = start_session(own, peer, rng, sender_id=_hex_bytes(args.sender, 16, "sender id"),
                                     suite=Suite.from_name(args.suite),
                                     rotation_period=args.rotation)
    envelopes = [opening]
    batch = max(1, args.batch) if records else 1
    for start in range(0, max(len(records), 1), batch):
        env, session = seal_envelope(session, records[start:start + batch], rng)
        envelopes.append(env)
    return envelopes


def cmd_seal(args) -> int:
    envelopes = _seal_frames(args)
    with open(args.output, "wb") as fh:
        write_frames(fh, envelopes)
    print(len(envelopes))
    return EXIT_OK


def cmd_send(args) -> int:
    envelopes = _seal_frames(args)
    if args.output == "-":
        write_frames(sys.stdout.buffer, envelopes)
    else:
        with open(args.output, "ab" if args.append else "wb") as fh:
            write_frames(fh, envelopes)
    print(f"sent {len(envelopes)} frames", file=sys.stderr)
    return EXIT_OK


def _open_frames(args) -> list[PatientRecord]:
    own = rsa.read_private_key(args.own)
    peer = rsa.read_public_key(args.peer)
    session = None
    records: list[PatientRecord] = []
    for env in iter_frames(_read_input(args.input)):
        got, session = open_envelope(env, own, peer, session)
        records.extend(got)
    return records


def cmd_open(args) -> int:
    _write_output(args.output, serialize_records(_open_frames(args)))
    return EXIT_OK


def cmd_receive(args) -> int:
    records = _open_frames(args)
    store = RecordStore(args.store)
    for record in records:
        store.append(record)
    print(len(records))
    return EXIT_OK


def cmd_bench(args) -> int:
    suites = [s for s in args.suites.split(",") if s] if args.suites else []
    directions = ("encrypt", "decrypt") if args.decrypt else ("encrypt",)
    report = run_benchmark(suites, args.rsa_bits, args.size, args.repetitions,
                           seed=args.seed if args.seed is not None else 0, directions=directions)
    sys.stdout.write(report.to_tsv())
    return EXIT_OK


def cmd_attack_cycle(args) -> int:
    result = rsa.cycle_attack(args.c, rsa.RsaPublicKey(args.e, args.n), args.max_iterations)
    if result is None:
        print(f"no cycle within {args.max_iterations} iterations", file=sys.stderr)
        return EXIT_CRYPTO
    print(f"plaintext={result.plaintext}")
    print(f"iterations={result.iterations}")
    return EXIT_OK


def cmd_attack_des(args) -> int:
    if not 0 <= args.unknown_bits <= 24:
        raise UsageError("--unknown-bits must be between 0 and 24")
    given = (args.plaintext, args.ciphertext, args.template)
    if all(v is None for v in given):
        task, _ = BruteForceTask.from_random_key(args.unknown_bits, _rng(args))
    elif any(v is None for v in given):
        raise UsageError("give all of --plaintext, --ciphertext, --template or none of them")
    else:
        task = BruteForceTask(args.plaintext, args.ciphertext, args.unknown_bits, args.template)
    start = time.perf_counter()
    key = des_brute_force(task)
    elapsed = time.perf_counter() - start
    print(f"elapsed={elapsed:.3f}s", file=sys.stderr)
    if key is None:
        print("not found", file=sys.stderr)
        return EXIT_CRYPTO
    print(f"key={key:016x}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="medcrypt", description="Symmetric and RSA tools for telemedicine records.")
    p.add_argument("--seed", type=int, default=None, help="fix all randomness")
    # Accept --seed after the subcommand too, without clobbering an earlier one.
    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def command(name, **kw):
        return sub.add_parser(name, parents=[seeded], **kw)

    s = command("keygen", help="generate a symmetric key or an RSA key pair")
    s.add_argument("--suite", choices=[x.name for x in Suite])
    s.add_argument("--bits", type=int, help="Blowfish key length in bits")
    s.add_argument("--rsa", type=int, metavar="BITS", help="RSA modulus size")
    s.add_argument("--out", help="key file (symmetric) or PREFIX for PREFIX.pub/PREFIX.key")
    s.set_defaults(func=cmd_keygen)

    for name, func in (("encrypt", cmd_encrypt), ("decrypt", cmd_decrypt)):
        s = command(name, help=f"{name} a file with a symmetric key")
        s.add_argument("--key", required=True)
        s.add_argument("--in", dest="input", default="-")
        s.add_argument("--out", dest="output", default="-")
        s.add_argument("--mode", choices=["cbc", "ecb"], default="cbc")
        s.set_defaults(func=func)

    s = command("sign", help="sign a file")
    s.add_argument("--key", required=True, help="RSA private key file")
    s.add_argument("--in", dest="input", default="-")
    s.add_argument("--out", dest="output", default="-")
    s.set_defaults(func=cmd_sign)

    s = command("verify", help="verify a file signature")
    s.add_argument("--key", required=True, help="RSA public key file")
    s.add_argument("--sig", required=True)
    s.add_argument("--in", dest="input", default="-")
    s.set_defaults(func=cmd_verify)

    s = command("record-add", help="append a measurement to a record store")
    s.add_argument("--store", required=True)
    s.add_argument("--patient", required=True, help="16-byte patient id, hex")
    s.add_argument("--timestamp", type=int, required=True)
    s.add_argument("--measurement", required=True)
    s.add_argument("--value", required=True)
    s.add_argument("--unit", default="")
    s.set_defaults(func=cmd_record_add)

    for name, func, out_default in (("seal", cmd_seal, None), ("send", cmd_send, "-")):
        s = command(name, help=f"{name} a record file as signed, encrypted frames")
        s.add_argument("--records", required=True)
        s.add_argument("--own", required=True, help="sender's RSA private key")
        s.add_argument("--peer", required=True, help="receiver's RSA public key")
        s.add_argument("--sender", required=True, help="16-byte sender id, hex")
        s.add_argument("--suite", default="AES128", choices=[x.name for x in Suite])
        s.add_argument("--batch", type=int, default=16, help="records per envelope")
        s.add_argument("--rotation", type=int, default=100, help="envelopes per session key")
        if out_default is None:
            s.add_argument("--out", dest="output", required=True)
        else:
            s.add_argument("--out", dest="output", default=out_default)
            s.add_argument("--append", action="store_true", help="append to the frame file")
        s.set_defaults(func=func)

    for name, func in (("open", cmd_open), ("receive", cmd_receive)):
        s = command(name, help="authenticate and decrypt a frame stream")
        s.add_argument("--own", required=True, help="receiver's RSA private key")
        s.add_argument("--peer", required=True, help="sender's RSA public key")
        s.add_argument("--in", dest="input", default="-")
        if name == "open":
            s.add_argument("--out", dest="output", default="-")
        else:
            s.add_argument("--store", required=True)
        s.set_defaults(func=func)

    s = command("bench", help="symmetric vs RSA throughput, as TSV")
    s.add_argument("--suites", default="AES128,TDES,BLOWFISH,DES",
                   help="comma-separated suite names; empty for RSA only")
    s.add_argument("--rsa-bits", type=int, default=1024)
    s.add_argument("--size", type=int, default=1 << 20, help="payload bytes")
    s.add_argument("--repetitions", type=int, default=3)
    s.add_argument("--decrypt", action="store_true", help="also time decryption")
    s.set_defaults(func=cmd_bench)

    s = command("attack-cycle", help="repeated-encryption attack on textbook RSA")
    s.add_argument("--e", type=_int, required=True)
    s.add_argument("--n", type=_int, required=True)
    s.add_argument("--c", type=_int, required=True)
    s.add_argument("--max-iterations", type=int, default=1 << 20)
    s.set_defaults(func=cmd_attack_cycle)

    s = command("attack-des", help="exhaustive search over unknown DES key bits")
    s.add_argument("--unknown-bits", type=int, default=16)
    s.add_argument("--plaintext", type=_int)
    s.add_argument("--ciphertext", type=_int)
    s.add_argument("--template", type=_int)
    s.set_defaults(func=cmd_attack_des)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"medcrypt: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MedcryptError, ValueError) as exc:
        print(f"medcrypt: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CRYPTO


cli_dispatch = main
