import threading
from decimal import Decimal

import pytest
from hypothesis import given, strategies as st

from medcrypt.errors import OrderError
from medcrypt.telemed import PatientRecord, RecordStore, deserialize_records, record_append, serialize_records

PID = bytes.fromhex("00112233445566778899aabbccddeeff")

labels = st.text(st.characters(blacklist_characters="\t\n\r", blacklist_categories=("Cs",)), max_size=12)
records = st.builds(
    PatientRecord,
    st.binary(min_size=16, max_size=16),
    st.integers(0, 2**40),
    labels.filter(bool),
    st.decimals(allow_nan=False, allow_infinity=False, places=3, min_value=-10**6, max_value=10**6),
    labels,
)


@given(st.lists(records, max_size=8))
def test_serialization_round_trip(batch):
    assert deserialize_records(serialize_records(batch)) == batch


def test_unicode_line_separators_in_labels(tmp_path):
    rec = PatientRecord(PID, 1, "temp\u2028", Decimal(1), "\x85")
    assert deserialize_records(serialize_records([rec])) == [rec]
    store = RecordStore(tmp_path / "r.txt")
    store.append(rec)
    assert RecordStore.load(tmp_path / "r.txt") == [rec]


def test_decimal_text_preserved():
    rec = PatientRecord(PID, 1, "temp", Decimal("36.60"), "C")
    assert rec.to_line().endswith("36.60\tC")
    assert PatientRecord.from_line(rec.to_line()).value.as_tuple() == Decimal("36.60").as_tuple()


@pytest.mark.parametrize("kwargs", [
    dict(patient_id=bytes(15)),
    dict(timestamp=-1),
    dict(measurement="heart\trate"),
    dict(unit="b\npm"),
    dict(measurement=""),
    dict(value=Decimal("NaN")),
])
def test_invalid_records(kwargs):
    base = dict(patient_id=PID, timestamp=1, measurement="hr", value=Decimal(70), unit="bpm")
    base.update(kwargs)
    with pytest.raises(ValueError):
        PatientRecord(**base)


def test_malformed_lines():
    with pytest.raises(ValueError):
        PatientRecord.from_line("00\t1\thr\t70")
    with pytest.raises(ValueError):
        PatientRecord.from_line(f"{PID.hex()}\t1\thr\tabc\tbpm")
    with pytest.raises(ValueError):
        deserialize_records(b"no newline at end")


def test_store_append_and_reload(tmp_path):
    path = tmp_path / "records.txt"
    store = RecordStore(path)
    for ts in (1, 2, 2, 5):
        record_append(store, PatientRecord(PID, ts, "hr", Decimal(70 + ts), "bpm"))
    assert len(store) == 4
    assert RecordStore(path).records == store.records
    assert path.read_bytes() == serialize_records(store)


def test_store_rejects_time_regression(tmp_path):
    store = RecordStore(tmp_path / "r.txt")
    store.append(PatientRecord(PID, 10, "hr", Decimal(70), "bpm"))
    store.append(PatientRecord(bytes(16), 3, "hr", Decimal(70), "bpm"))
    with pytest.raises(OrderError):
        store.append(PatientRecord(PID, 9, "hr", Decimal(70), "bpm"))
    assert len(RecordStore(tmp_path / "r.txt")) == 2


def test_concurrent_appends_do_not_interleave(tmp_path):
    path = tmp_path / "r.txt"

    def writer(i):
        store = RecordStore(path)
        for ts in range(25):
            store.append(PatientRecord(bytes([i]) * 16, ts, "hr", Decimal(ts), "bpm"))

    threads = [threading.Thread(target=writer, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(RecordStore.load(path)) == 100
