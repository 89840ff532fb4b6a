"""The fuzzy commitment scheme: enrollment, verification, record format.

A record publishes f = c + T(w) for a random codeword c, a public
record-specific transform T and a secret feature vector w, optionally
binding c with a cryptographic digest.  Enrollment can additionally flip
a few positions of the transformed feature vector as enrollment-time
noise; the flip positions are secret and never stored, so noisy records
are schema-identical to plain ones.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Callable

from .codes import LinearCode, code_descriptor, decode_bounded, is_codeword, parse_code_descriptor, random_codeword
from .fields import FieldSpec, field
from .linalg import FieldVector
from .transforms import TransformDescriptor, apply, identity_transform, transform_from_json

RECORD_VERSION = 1


class RecordFormatError(ValueError):
    """Record bytes are not well-formed (bad JSON / bad encodings)."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at byte {position})")
        self.position = position


class MalformedRecordError(ValueError):
    """Structurally parseable record violating an invariant."""


@dataclass(frozen=True)
class HashBinding:
    """Named deterministic digest used to bind the enrolled codeword."""

    hash_id: str
    digest: Callable[[bytes], bytes]
    digest_size: int


def _hashlib_binding(name: str) -> HashBinding:
    h = hashlib.new(name)
    return HashBinding(name, lambda data, _n=name: hashlib.new(_n, data).digest(), h.digest_size)


HASH_BINDINGS = {name: _hashlib_binding(name) for name in ("sha256", "sha512", "sha1")}
DEFAULT_HASH = "sha256"


def canonical_bytes(v: FieldVector) -> bytes:
    """Canonical byte encoding of a vector for hashing.

    GF(2): packed bits, big-endian within bytes, zero-padded to full
    bytes.  Other fields: fixed-width big-endian entries.
    """
    if v.bits is not None:
        out = bytearray((v.n + 7) // 8)
        bits = v.bits
        for i in range(v.n):
            if (bits >> i) & 1:
                out[i // 8] |= 0x80 >> (i % 8)
        return bytes(out)
    width = max(1, (v.field.q - 1).bit_length() + 7 >> 3)
    out = bytearray()
    for e in v.entries:
        out += e.to_bytes(width, "big")
    return bytes(out)


def codeword_digest(c: FieldVector, hash_id: str = DEFAULT_HASH) -> bytes:
    return HASH_BINDINGS[hash_id].digest(canonical_bytes(c))


@dataclass(frozen=True)
class Record:
    """Published protected record."""

    code_id: object               # "bch:n:t" or inline generator mapping
    commitment: FieldVector       # the value f
    transform: TransformDescriptor
    codeword_hash: bytes | None = None
    hash_id: str | None = None

    def __post_init__(self):
        if self.transform.n != self.commitment.n or self.transform.field != self.commitment.field:
            raise MalformedRecordError("transform does not match commitment domain")
        if (self.codeword_hash is None) != (self.hash_id is None):
            raise MalformedRecordError("hash digest and algorithm must come together")
        if self.hash_id is not None:
            binding = HASH_BINDINGS.get(self.hash_id)
            if binding is None:
                raise MalformedRecordError(f"unknown hash algorithm {self.hash_id!r}")
            if len(self.codeword_hash) != binding.digest_size:
                raise MalformedRecordError("digest length does not match hash algorithm")


@dataclass(frozen=True)
class VerifyResult:
    """Accept carries the recovered codeword; hash_checked distinguishes a
    digest-verified accept from a re-encoding-consistency ("unverified")
    accept."""

    accepted: bool
    codeword: FieldVector | None = None
    hash_checked: bool = False


def enroll(w: FieldVector, code: LinearCode, transform: TransformDescriptor | None = None,
           *, with_hash: bool = False, noise_flips: int = 0, rng=None,
           hash_id: str = DEFAULT_HASH) -> Record:
    """Protect a feature vector: draw a random codeword c, transform w,
    optionally flip noise_flips random positions (binary fields only;
    positions are discarded), publish the sum."""
    if w.n != code.n or w.field != code.field:
        raise ValueError("feature vector does not match the code")
    if transform is None:
        transform = identity_transform(code.field, code.n)
    if transform.n != code.n or transform.field != code.field:
        raise ValueError("transform does not match the code")
    if noise_flips:
        if code.field.q != 2:
            raise ValueError("enrollment noise is defined for GF(2) only")
        if noise_flips > code.n:
            raise ValueError("more flips than positions")
    if rng is None:
        raise ValueError("enrollment draws randomness; pass an rng")
    c = random_codeword(code, rng)
    v = apply(transform, w)
    if noise_flips:
        flips = 0
        for i in rng.choice(code.n, size=noise_flips, replace=False):
            flips |= 1 << int(i)
        v = FieldVector(code.field, n=code.n, bits=v.bits ^ flips)
    commitment = c + v
    digest = codeword_digest(c, hash_id) if with_hash else None
    return Record(code_descriptor(code), commitment, transform,
                  digest, hash_id if with_hash else None)


def verify(record: Record, code: LinearCode, w_prime: FieldVector) -> VerifyResult:
    """Accept when the residual commitment - T(w') decodes and the decoded
    codeword passes the digest check (or, without a digest, re-encoding
    consistency)."""
    if w_prime.n != code.n or w_prime.field != code.field:
        raise ValueError("candidate feature vector does not match the code")
    if record.commitment.n != code.n or record.commitment.field != code.field:
        raise MalformedRecordError("record does not match the code")
    residual = record.commitment - apply(record.transform, w_prime)
    c = decode_bounded(code, residual)
    if c is None:
        return VerifyResult(False)
    if record.codeword_hash is not None:
        if codeword_digest(c, record.hash_id) == record.codeword_hash:
            return VerifyResult(True, c, hash_checked=True)
        return VerifyResult(False)
    if not is_codeword(code, c):  # decode_bounded guarantees this; keep the contract explicit
        return VerifyResult(False)
    return VerifyResult(True, c, hash_checked=False)


# ---------------------------------------------------------------------------
# record wire format
# ---------------------------------------------------------------------------

def _vector_to_json(v: FieldVector):
    if v.bits is not None:
        return canonical_bytes(v).hex()
    return list(v.entries)


def _vector_from_json(obj, f: FieldSpec, n: int | None = None) -> FieldVector:
    if isinstance(obj, str):
        if f.q != 2:
            raise MalformedRecordError("hex-packed vectors are valid only over GF(2)")
        if n is None:
            raise MalformedRecordError("packed vector needs an explicit length")
        try:
            raw = bytes.fromhex(obj)
        except ValueError as exc:
            raise RecordFormatError(f"bad hex vector: {exc}") from None
        if len(raw) != (n + 7) // 8:
            raise MalformedRecordError(f"packed vector has {len(raw)} bytes, expected {(n + 7) // 8}")
        bits = 0
        for i in range(n):
            if raw[i // 8] & (0x80 >> (i % 8)):
                bits |= 1 << i
        for i in range(n, 8 * len(raw)):
            if raw[i // 8] & (0x80 >> (i % 8)):
                raise MalformedRecordError("non-zero padding bits in packed vector")
        return FieldVector(f, n=n, bits=bits)
    if not isinstance(obj, list):
        raise RecordFormatError("vector must be a hex string or an integer array")
    try:
        return FieldVector(f, [int(e) for e in obj])
    except ValueError as exc:
        raise MalformedRecordError(str(exc)) from None


def serialize_record(record: Record) -> bytes:
    """Canonical JSON encoding; byte-identical for identical records."""
    f = record.commitment.field
    fdesc: dict = {"p": f.p, "m": f.m}
    if f.modulus is not None:
        fdesc["modulus"] = list(f.modulus)
    obj = {
        "version": RECORD_VERSION,
        "field": fdesc,
        "code": record.code_id,
        "f": _vector_to_json(record.commitment),
        "transform": record.transform.to_json(),
    }
    if record.codeword_hash is not None:
        obj["hash"] = {"alg": record.hash_id, "digest": record.codeword_hash.hex()}
    return json.dumps(obj, separators=(",", ":")).encode()


def parse_record(data: bytes) -> Record:
    """Inverse of serialize_record; raises RecordFormatError (with byte
    position for JSON errors) or MalformedRecordError."""
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise RecordFormatError(exc.msg, position=exc.pos) from None
    if not isinstance(obj, dict):
        raise RecordFormatError("record must be a JSON object")
    if obj.get("version") != RECORD_VERSION:
        raise MalformedRecordError(f"unsupported record version {obj.get('version')!r}")
    for key in ("field", "code", "f", "transform"):
        if key not in obj:
            raise RecordFormatError(f"missing record key {key!r}")
    fdesc = obj["field"]
    try:
        f = field(int(fdesc["p"]), int(fdesc.get("m", 1)),
                  tuple(fdesc["modulus"]) if "modulus" in fdesc else None)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedRecordError(f"bad field description: {exc}") from None
    code_id = obj["code"]
    n = _code_block_length(code_id)
    commitment = _vector_from_json(obj["f"], f, n)
    try:
        transform = transform_from_json(obj["transform"], f, commitment.n)
    except ValueError as exc:
        raise RecordFormatError(str(exc)) from None
    digest = hash_id = None
    if "hash" in obj:
        hd = obj["hash"]
        try:
            hash_id = hd["alg"]
            digest = bytes.fromhex(hd["digest"])
        except (KeyError, TypeError, ValueError) as exc:
            raise RecordFormatError(f"bad hash binding: {exc}") from None
    try:
        return Record(code_id, commitment, transform, digest, hash_id)
    except MalformedRecordError:
        raise
    except ValueError as exc:
        raise MalformedRecordError(str(exc)) from None


def _code_block_length(code_id) -> int | None:
    if isinstance(code_id, str):
        parts = code_id.split(":")
        if len(parts) == 3 and parts[0] == "bch":
            return int(parts[1])
        raise MalformedRecordError(f"unknown code descriptor {code_id!r}")
    if isinstance(code_id, dict) and "generator" in code_id:
        return len(code_id["generator"])
    raise MalformedRecordError(f"unsupported code descriptor: {code_id!r}")


def resolve_code(record: Record) -> LinearCode:
    """Build the LinearCode a record refers to."""
    return parse_code_descriptor(record.code_id)


def vector_to_text(v: FieldVector) -> str:
    """Hex (GF(2), packed big-endian) or comma-separated entries."""
    if v.bits is not None:
        return canonical_bytes(v).hex()
    return ",".join(str(e) for e in v.entries)


def vector_from_text(text: str, f: FieldSpec, n: int) -> FieldVector:
    if f.q == 2 and "," not in text:
        return _vector_from_json(text, f, n)
    v = FieldVector(f, [int(x) for x in text.split(",")])
    if v.n != n:
        raise ValueError(f"vector has {v.n} entries, expected {n}")
    return v
