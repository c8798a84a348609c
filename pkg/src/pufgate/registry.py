"""Append-only enrollment registry of <device id, SHA256_K0, helper data> tuples.

File format: a ``PUFBIND-REGISTRY v1`` header, then one record per line::

    id=<device id> sha256_k0=<64 hex> n=128 k=<k> offset=<32 hex> salt=<32 hex>
"""

import fcntl
import os
from dataclasses import dataclass
from pathlib import Path

from pufgate.errors import FormatError, RegistryError
from pufgate.fuzzy import FuzzyParams, fe_decode, fe_encode, helper_from_fields
from pufgate.puf import nominal_response, read_response
from pufgate.sha256 import digest_key

REGISTRY_HEADER = "PUFBIND-REGISTRY v1"
_FIELDS = ("id", "sha256_k0", "n", "k", "offset", "salt")


@dataclass(frozen=True)
class EnrollmentRecord:
    device_id: str
    sha256_k0: bytes
    helper: object

    def to_line(self):
        h = self.helper
        return (
            f"id={self.device_id} sha256_k0={self.sha256_k0.hex()} n={h.params.n} k={h.params.k} "
            f"offset={h.code_offset.hex()} salt={h.extractor_salt.hex()}"
        )

    @classmethod
    def from_line(cls, line):
        tokens = line.split()
        fields = {}
        for token in tokens:
            key, sep, value = token.partition("=")
            if not sep or key in fields:
                raise FormatError(f"malformed registry token {token!r}")
            fields[key] = value
        if tuple(fields) != _FIELDS:
            raise FormatError(f"registry record must have fields {' '.join(_FIELDS)}")
        digest_hex = fields["sha256_k0"]
        if len(digest_hex) != 64 or digest_hex != digest_hex.lower():
            raise FormatError("sha256_k0 must be 64 lowercase hex characters")
        try:
            digest = bytes.fromhex(digest_hex)
        except ValueError:
            raise FormatError("sha256_k0 is not valid hex") from None
        if not fields["id"]:
            raise FormatError("empty device id")
        return cls(fields["id"], digest, helper_from_fields(fields))


class Registry:
    def __init__(self, path):
        self.path = Path(path)

    def records(self):
        if not self.path.exists():
            return {}
        return _parse(self.path.read_text())

    def get(self, device_id):
        try:
            return self.records()[device_id]
        except KeyError:
            raise RegistryError(f"device {device_id!r} is not enrolled") from None

    def __contains__(self, device_id):
        return device_id in self.records()

    def append(self, record):
        line = record.to_line()
        EnrollmentRecord.from_line(line)  # never write what we cannot read back
        fd = os.open(self.path, os.O_RDWR | os.O_CREAT | os.O_APPEND, 0o644)
        with os.fdopen(fd, "r+") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.seek(0)
                existing = fh.read()
                records = _parse(existing) if existing else {}
                if record.device_id in records:
                    raise RegistryError(f"device {record.device_id!r} is already enrolled")
                if not existing:
                    fh.write(REGISTRY_HEADER + "\n")
                fh.write(line + "\n")
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)


def _parse(text):
    lines = text.splitlines()
    if not lines or lines[0] != REGISTRY_HEADER:
        raise FormatError(f"registry must start with {REGISTRY_HEADER!r}")
    records = {}
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        try:
            record = EnrollmentRecord.from_line(line)
        except FormatError as exc:
            raise FormatError(f"registry line {lineno}: {exc}") from None
        if record.device_id in records:
            raise FormatError(f"registry line {lineno}: duplicate id {record.device_id!r}")
        records[record.device_id] = record
    return records


def enroll_device(device, registry, encode_seed=0, params=FuzzyParams()):
    """One-time enrollment from the noise-free reference readout."""
    if device.device_id in registry:
        raise RegistryError(f"device {device.device_id!r} is already enrolled")
    key, helper = fe_encode(nominal_response(device), params, encode_seed)
    record = EnrollmentRecord(device.device_id, digest_key(key), helper)
    registry.append(record)
    return record


def authenticate_device(device, record, read_seed):
    """Platform check: digest of the regenerated key against SHA256_K0."""
    key = fe_decode(read_response(device, read_seed), record.helper)
    return digest_key(key) == record.sha256_k0
