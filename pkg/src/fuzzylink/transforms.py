"""Public record-specific feature transforms.

Two families, both Hamming-distance preserving: bit permutations reorder
vector positions; field permutations relabel symbols coordinate-wise
through a bijection of the field.  Transforms are stored in records as
explicit index/value arrays (they are public data attached to the
record, not secrets), plus an identity variant.

Also here: the exhaustive oracles over tiny domains that count all
distance-preserving bijections of {0,1}^n (they are exactly the
permutation-plus-shift maps) and all affine bijections of small fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as iter_permutations

from .fields import FieldSpec
from .linalg import FieldMatrix, FieldVector

VARIANTS = ("identity", "bit-permutation", "field-permutation")


@dataclass(frozen=True)
class TransformDescriptor:
    """Serializable public transform attached to a record."""

    kind: str
    n: int
    field: FieldSpec
    permutation: tuple | None = None
    sigma: tuple | None = None

    def __post_init__(self):
        if self.kind not in VARIANTS:
            raise ValueError(f"unknown transform variant {self.kind!r}")
        if self.kind == "bit-permutation":
            if self.permutation is None or sorted(self.permutation) != list(range(self.n)):
                raise ValueError("permutation must be a bijection on 0..n-1")
        elif self.kind == "field-permutation":
            if self.sigma is None or sorted(self.sigma) != list(range(self.field.q)):
                raise ValueError("sigma must be a bijection on the field")
        else:
            if self.permutation is not None or self.sigma is not None:
                raise ValueError("identity transform takes no tables")

    def inverse_permutation(self) -> tuple:
        inv = [0] * self.n
        for i, p in enumerate(self.permutation):
            inv[p] = i
        return tuple(inv)

    def to_json(self) -> dict:
        if self.kind == "bit-permutation":
            return {"type": "bit-permutation", "perm": list(self.permutation)}
        if self.kind == "field-permutation":
            return {"type": "field-permutation", "sigma": list(self.sigma)}
        return {"type": "identity"}


def transform_from_json(obj: dict, field: FieldSpec, n: int) -> TransformDescriptor:
    kind = obj.get("type")
    if kind == "identity":
        return TransformDescriptor("identity", n, field)
    if kind == "bit-permutation":
        return TransformDescriptor("bit-permutation", n, field,
                                   permutation=tuple(int(i) for i in obj["perm"]))
    if kind == "field-permutation":
        return TransformDescriptor("field-permutation", n, field,
                                   sigma=tuple(int(i) for i in obj["sigma"]))
    raise ValueError(f"unknown transform type {kind!r}")


def identity_transform(field: FieldSpec, n: int) -> TransformDescriptor:
    return TransformDescriptor("identity", n, field)


def _check_vec(T: TransformDescriptor, w: FieldVector):
    if w.field != T.field or w.n != T.n:
        raise ValueError("vector does not match transform domain")


def apply(T: TransformDescriptor, w: FieldVector) -> FieldVector:
    """Transformed vector; for a bit permutation entry i of the output is
    entry permutation[i] of the input (the matrix form P w)."""
    _check_vec(T, w)
    if T.kind == "identity":
        return w
    if T.kind == "bit-permutation":
        if w.bits is not None:
            mask = 0
            bits = w.bits
            for i, p in enumerate(T.permutation):
                mask |= ((bits >> p) & 1) << i
            return FieldVector(w.field, n=w.n, bits=mask)
        e = w.entries
        return FieldVector(w.field, tuple(e[p] for p in T.permutation))
    sig = T.sigma
    return FieldVector(w.field, tuple(sig[e] for e in w.entries))


def apply_inverse(T: TransformDescriptor, v: FieldVector) -> FieldVector:
    _check_vec(T, v)
    if T.kind == "identity":
        return v
    if T.kind == "bit-permutation":
        inv = T.inverse_permutation()
        if v.bits is not None:
            mask = 0
            bits = v.bits
            for i, p in enumerate(inv):
                mask |= ((bits >> p) & 1) << i
            return FieldVector(v.field, n=v.n, bits=mask)
        e = v.entries
        return FieldVector(v.field, tuple(e[p] for p in inv))
    inv_sigma = [0] * T.field.q
    for x, y in enumerate(T.sigma):
        inv_sigma[y] = x
    return FieldVector(v.field, tuple(inv_sigma[e] for e in v.entries))


def as_matrix(T: TransformDescriptor) -> FieldMatrix:
    """Permutation matrix P with P w = apply(T, w); only bit permutations
    (and the identity) are linear maps with a matrix form."""
    if T.kind == "identity":
        return FieldMatrix.identity(T.field, T.n)
    if T.kind != "bit-permutation":
        raise ValueError("field permutations are non-linear and have no matrix form")
    if T.field.p == 2 and T.field.m == 1:
        return FieldMatrix(T.field, cols=T.n,
                           row_masks=[1 << p for p in T.permutation])
    return FieldMatrix(T.field,
                       [[1 if j == p else 0 for j in range(T.n)] for p in T.permutation])


def random_transform(kind: str, n: int, field: FieldSpec, rng) -> TransformDescriptor:
    """Uniform draw from the respective symmetric group."""
    if kind == "identity":
        return identity_transform(field, n)
    if kind == "bit-permutation":
        return TransformDescriptor(kind, n, field,
                                   permutation=tuple(int(i) for i in rng.permutation(n)))
    if kind == "field-permutation":
        return TransformDescriptor(kind, n, field,
                                   sigma=tuple(int(i) for i in rng.permutation(field.q)))
    raise ValueError(f"unknown transform variant {kind!r}")


# ---------------------------------------------------------------------------
# affine structure of a field bijection
# ---------------------------------------------------------------------------

def detect_affine(sigma, field: FieldSpec):
    """(a, b) with sigma(x) = a*x + b for all x, or None.

    The only possible pair is a = sigma(1) - sigma(0), b = sigma(0); it is
    verified on the whole field.
    """
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(field.q)):
        raise ValueError("sigma must be a bijection on the field")
    b = sigma[0]
    a = field.sub(sigma[1], b)
    if a == 0:
        return None
    for x in range(field.q):
        if field.add(field.mul(a, x), b) != sigma[x]:
            return None
    return a, b


# ---------------------------------------------------------------------------
# exhaustive oracles on tiny domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistancePreservingMap:
    """A bijection of {0,1}^n preserving Hamming distance, with its
    decomposition into a position permutation followed by a constant
    XOR shift (the image of zero)."""

    n: int
    table: tuple          # image of mask v at index v
    permutation: tuple    # output bit i takes input bit permutation[i]
    shift: int            # table[0]

    def __call__(self, mask: int) -> int:
        return self.table[mask]


def enumerate_distance_preserving_bijections(n: int) -> list[DistancePreservingMap]:
    """All Hamming-distance-preserving bijections of {0,1}^n, by scanning
    every one of the (2^n)! bijections.  Each returned map is decomposed
    as permutation-then-shift and the decomposition is re-verified on the
    full domain.  n <= 3 keeps the scan at 8! = 40320 candidates."""
    if not 1 <= n <= 3:
        raise ValueError("exhaustive bijection scan supports n in 1..3")
    size = 1 << n
    dist = [[(i ^ j).bit_count() for j in range(size)] for i in range(size)]
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
    out = []
    for table in iter_permutations(range(size)):
        ok = True
        for i, j in pairs:
            if dist[table[i]][table[j]] != dist[i][j]:
                ok = False
                break
        if not ok:
            continue
        shift = table[0]
        # centered map: unit vectors must land on unit vectors
        perm = [0] * n
        valid = True
        for i in range(n):
            img = table[1 << i] ^ shift
            if img.bit_count() != 1:
                valid = False
                break
            perm[i] = img.bit_length() - 1
        if valid:
            pm = [0] * n
            for i, p in enumerate(perm):
                pm[p] = i
            # verify the decomposition everywhere
            for v in range(size):
                acc = 0
                for i in range(n):
                    acc |= ((v >> pm[i]) & 1) << i
                if acc ^ shift != table[v]:
                    valid = False
                    break
        if not valid:
            raise AssertionError(
                "distance-preserving bijection without permutation-shift decomposition")
        out.append(DistancePreservingMap(n, table, tuple(pm), shift))
    return out


def check_distance_preserving(fn, field: FieldSpec, n: int, *, trials: int = 2000,
                              rng=None):
    """Randomized (exhaustive when q^n <= 4096) distance-preservation check
    of an arbitrary total map F^n -> F^n.

    Returns (True, None) or (False, (v1, v2)) with a witness pair.
    """
    from .linalg import hamming_distance, random_vector

    domain_size = field.q ** n
    if domain_size <= 4096:
        vectors = []
        if field.p == 2 and field.m == 1:
            vectors = [FieldVector(field, n=n, bits=m) for m in range(domain_size)]
        else:
            for idx in range(domain_size):
                entries = []
                v = idx
                for _ in range(n):
                    entries.append(v % field.q)
                    v //= field.q
                vectors.append(FieldVector(field, entries))
        for i, v1 in enumerate(vectors):
            for v2 in vectors[i + 1:]:
                if hamming_distance(fn(v1), fn(v2)) != hamming_distance(v1, v2):
                    return False, (v1, v2)
        return True, None
    if rng is None:
        raise ValueError("large domains need an rng for sampling")
    for _ in range(trials):
        v1 = random_vector(field, n, rng)
        v2 = random_vector(field, n, rng)
        if hamming_distance(fn(v1), fn(v2)) != hamming_distance(v1, v2):
            return False, (v1, v2)
    return True, None
