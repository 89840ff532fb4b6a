"""Protect a feature vector with a fuzzy commitment and verify noisy copies.

A commitment publishes f = c + w for a random codeword c of an
error-correcting code.  Verification subtracts a candidate w' and tries
to decode: within the code's decoding radius the original codeword comes
back and the record accepts.
"""

import numpy as np

from fuzzylink import (
    bch_build,
    codeword_digest,
    enroll,
    hamming_distance,
    parse_record,
    random_vector,
    random_weight_vector,
    serialize_record,
    verify,
)
from fuzzylink.fields import GF2

rng = np.random.default_rng(1)

code = bch_build(5, 5)  # (31, 11, 11): corrects up to 5 errors
print(f"code: n={code.n} k={code.k} d={code.d}, decoding radius t={code.t}")

w = random_vector(GF2, code.n, rng)
record = enroll(w, code, with_hash=True, rng=rng)
print(f"\nenrolled record ({len(serialize_record(record))} bytes of JSON):")
print(serialize_record(record).decode())

# same vector: accept
print("\nexact presentation:", verify(record, code, w))

# a few bit errors: still accept
for errs in (1, 3, 5):
    noisy = w + random_weight_vector(GF2, code.n, errs, rng)
    res = verify(record, code, noisy)
    print(f"presentation at distance {errs}: accepted={res.accepted}")

# beyond the radius: reject
far = w + random_weight_vector(GF2, code.n, code.t + code.d, rng)
print(f"presentation at distance {hamming_distance(w, far)}: "
      f"accepted={verify(record, code, far).accepted}")

# the record round-trips through its wire format
assert parse_record(serialize_record(record)) == record

# the digest pins the enrolled codeword
c = verify(record, code, w).codeword
assert codeword_digest(c) == record.codeword_hash
print("\ncodeword digest matches the stored binding")
