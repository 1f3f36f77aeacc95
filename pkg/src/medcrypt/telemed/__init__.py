"""Patient-to-doctor record exchange over sealed envelopes."""

from medcrypt.telemed.records import (
    PatientRecord,
    RecordStore,
    deserialize_records,
    record_append,
    serialize_records,
)
from medcrypt.telemed.session import (
    DEFAULT_ROTATION_PERIOD,
    DEFAULT_SUITE,
    Session,
    open_envelope,
    seal_envelope,
    start_session,
    unwrap_key,
    wrap_key,
)
from medcrypt.telemed.wire import (
    SealedEnvelope,
    WireFrame,
    decode_frame,
    encode_frame,
    iter_frames,
    read_frames,
    signed_header,
    write_frames,
)

__all__ = [
    "DEFAULT_ROTATION_PERIOD", "DEFAULT_SUITE", "PatientRecord", "RecordStore", "SealedEnvelope", "WireFrame",
    "Session", "decode_frame", "deserialize_records", "encode_frame", "iter_frames",
    "open_envelope", "read_frames", "record_append", "seal_envelope", "serialize_records",
    "signed_header", "start_session", "unwrap_key", "wrap_key", "write_frames",
]
