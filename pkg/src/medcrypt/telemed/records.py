"""Patient measurement records and the append-only local record store.

Text form of a record (file lines and envelope payload alike)::

    hex(patient_id) TAB timestamp TAB measurement TAB value TAB unit

Values are ``Decimal`` so that "72.50" survives a round trip unchanged.
"""

from __future__ import annotations

import fcntl
import os
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Iterable

from medcrypt.errors import OrderError

PATIENT_ID_SIZE = 16
_FORBIDDEN = ("\t", "\n", "\r")


@dataclass(frozen=True)
class PatientRecord:
    patient_id: bytes
    timestamp: int
    measurement: str
    value: Decimal
    unit: str

    def __post_init__(self):
        if len(self.patient_id) != PATIENT_ID_SIZE:
            raise ValueError(f"patient_id is {PATIENT_ID_SIZE} bytes")
        if self.timestamp < 0:
            raise ValueError("timestamp must be non-negative")
        if not isinstance(self.value, Decimal):
            object.__setattr__(self, "value", Decimal(str(self.value)))
        if not self.value.is_finite():
            raise ValueError("value must be a finite number")
        for name in ("measurement", "unit"):
            text = getattr(self, name)
            if any(ch in text for ch in _FORBIDDEN):
                raise ValueError(f"{name} may not contain tabs or newlines")
        if not self.measurement:
            raise ValueError("measurement label is empty")

    def to_line(self) -> str:
        return "\t".join(
            (self.patient_id.hex(), str(self.timestamp), self.measurement, str(self.value), self.unit)
        )

    @classmethod
    def from_line(cls, line: str) -> PatientRecord:
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 5:
            raise ValueError(f"record line needs 5 tab-separated fields, got {len(parts)}")
        pid, ts, measurement, value, unit = parts
        try:
            return cls(bytes.fromhex(pid), int(ts), measurement, Decimal(value), unit)
        except InvalidOperation:
            raise ValueError(f"bad value field {value!r}") from None


def serialize_records(records: Iterable[PatientRecord]) -> bytes:
    return "".join(r.to_line() + "\n" for r in records).encode("utf-8")


def deserialize_records(data: bytes) -> list[PatientRecord]:
    text = data.decode("utf-8")
    if text and not text.endswith("\n"):
        raise ValueError("record payload must end with a newline")
    # split on "\n" only: splitlines() would also break at U+0085, U+2028 etc.
    return [PatientRecord.from_line(line) for line in text.split("\n")[:-1]]


class RecordStore:
    """Append-only record table backed by a text file.

    Writers take an exclusive ``flock`` for each append; ``load`` takes a
    shared lock so it never sees a half-written line.
    """

    def __init__(self, path):
        self.path = Path(path)
        self._records: list[PatientRecord] = []
        self._last_ts: dict[bytes, int] = {}
        if self.path.exists():
            for record in self.load(self.path):
                self._track(record)
                self._records.append(record)

    @staticmethod
    def load(path) -> list[PatientRecord]:
        with open(path, encoding="utf-8", newline="") as fh:
            fcntl.flock(fh, fcntl.LOCK_SH)
            try:
                return [PatientRecord.from_line(line) for line in fh.read().split("\n") if line]
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def _track(self, record: PatientRecord) -> None:
        last = self._last_ts.get(record.patient_id)
        if last is not None and record.timestamp < last:
            raise OrderError(
                f"timestamp {record.timestamp} precedes {last} for patient {record.patient_id.hex()}"
            )
        self._last_ts[record.patient_id] = record.timestamp

    def append(self, record: PatientRecord) -> None:
        self._track(record)
        line = (record.to_line() + "\n").encode("utf-8")
        with open(self.path, "ab") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        self._records.append(record)

    @property
    def records(self) -> tuple[PatientRecord, ...]:
        return tuple(self._records)

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(self._records)


def record_append(store: RecordStore, record: PatientRecord) -> RecordStore:
    store.append(record)
    return store
