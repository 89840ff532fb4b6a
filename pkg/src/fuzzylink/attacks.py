"""Record-linkage attacks on fuzzy commitments.

All of them reduce to one question: is the offset of two commitments
within a small Hamming distance of the code spanned by the concatenated
generator blocks?  The engine answers it by enumerating candidate error
patterns in canonical order (weight ascending, support lexicographic,
non-zero values in field order) and testing syndromes incrementally:
the syndrome of a weight-w pattern is a combination of w precomputed
column syndromes, so no full matrix-vector product is ever taken per
pattern.  Over GF(2) the last support position is resolved through a
hash map of column syndromes and entire weight classes are ruled out by
a meet-in-the-middle existence check, both of which preserve first-hit
order exactly (differentially tested against the naive scan).
"""

from __future__ import annotations

import hashlib
from bisect import bisect_right
from dataclasses import dataclass
from itertools import combinations
from math import comb
from time import perf_counter

from .codes import LinearCode
from .fields import FieldSpec
from .linalg import (
    FieldMatrix,
    FieldVector,
    concat_cols,
    kernel_basis,
    permuted_rows,
    rank,
    solve_affine,
)
from .transforms import TransformDescriptor, apply_inverse

SOLUTION_ENUM_CAP = 1 << 16


class ResourceCapError(RuntimeError):
    """Operation would exceed a configured enumeration cap."""


def pattern_count(q: int, n: int, b: int) -> int:
    """Number of vectors in F^n of Hamming weight <= b."""
    return sum(comb(n, j) * (q - 1) ** j for j in range(min(b, n) + 1))


def _comb_rank(support, n: int) -> int:
    """Lexicographic rank of an ascending index combination."""
    w = len(support)
    r = 0
    prev = -1
    for i, s_i in enumerate(support):
        for v in range(prev + 1, s_i):
            r += comb(n - 1 - v, w - 1 - i)
        prev = s_i
    return r


def _comb_unrank(r: int, n: int, w: int):
    out = []
    prev = -1
    for i in range(w):
        for v in range(prev + 1, n):
            c = comb(n - 1 - v, w - 1 - i)
            if r < c:
                out.append(v)
                prev = v
                break
            r -= c
    return tuple(out)


# ---------------------------------------------------------------------------
# pattern enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hit:
    """A pattern accepted by the syndrome test, with its enumeration index."""

    support: tuple
    values: tuple
    index: int

    def pattern(self, field: FieldSpec, n: int) -> FieldVector:
        if field.p == 2 and field.m == 1:
            mask = 0
            for j in self.support:
                mask |= 1 << j
            return FieldVector(field, n=n, bits=mask)
        entries = [0] * n
        for j, v in zip(self.support, self.values):
            entries[j] = v
        return FieldVector(field, entries)


class PatternEnumerator:
    """All vectors of F^n with Hamming weight <= b, in canonical order.

    Canonical order: non-decreasing weight; within a weight class,
    supports ascend lexicographically and non-zero value assignments run
    through field order.  Every vector appears exactly once; the total
    count is sum_j C(n,j)(q-1)^j.  Enumeration is restartable at any
    ordinal index, which is what parallel scans use to split work.
    """

    def __init__(self, field: FieldSpec, n: int, b: int):
        if not 0 <= b <= n:
            raise ValueError(f"weight bound {b} out of range for length {n}")
        self.field = field
        self.n = n
        self.b = b

    def count_at_weight(self, w: int) -> int:
        return comb(self.n, w) * (self.field.q - 1) ** w

    def count(self) -> int:
        return pattern_count(self.field.q, self.n, self.b)

    def _raw_at(self, index: int):
        if not 0 <= index < self.count():
            raise IndexError(index)
        w = 0
        while index >= self.count_at_weight(w):
            index -= self.count_at_weight(w)
            w += 1
        vcount = (self.field.q - 1) ** w
        support = _comb_unrank(index // vcount, self.n, w)
        vrank = index % vcount
        digits = []
        for _ in range(w):
            digits.append(vrank % (self.field.q - 1) + 1)
            vrank //= self.field.q - 1
        return support, tuple(reversed(digits))

    def index_of(self, support, values) -> int:
        w = len(support)
        base = sum(self.count_at_weight(j) for j in range(w))
        vcount = (self.field.q - 1) ** w
        vrank = 0
        for v in values:
            vrank = vrank * (self.field.q - 1) + (v - 1)
        return base + _comb_rank(support, self.n) * vcount + vrank

    def iter_raw(self, start: int = 0):
        """(support, values) pairs from ordinal position start onward."""
        total = self.count()
        if start >= total:
            return
        support, values = self._raw_at(start)
        w = len(support)
        n, q = self.n, self.field.q
        support = list(support)
        values = list(values)
        while True:
            yield tuple(support), tuple(values)
            # advance values odometer (field order, most-significant first)
            i = w - 1
            while i >= 0 and values[i] == q - 1:
                values[i] = 1
                i -= 1
            if i >= 0:
                values[i] += 1
                continue
            # advance support combination
            i = w - 1
            while i >= 0 and support[i] == n - w + i:
                i -= 1
            if i >= 0:
                support[i] += 1
                for j in range(i + 1, w):
                    support[j] = support[j - 1] + 1
                continue
            # next weight class
            w += 1
            if w > self.b or w > n:
                return
            support = list(range(w))
            values = [1] * w

    def __iter__(self):
        for support, values in self.iter_raw():
            yield Hit(support, values, 0).pattern(self.field, self.n)


def enumerate_patterns(field: FieldSpec, n: int, b: int) -> PatternEnumerator:
    return PatternEnumerator(field, n, b)


# ---------------------------------------------------------------------------
# syndrome scan engine
# ---------------------------------------------------------------------------

def _gf2_columns(H: FieldMatrix):
    cols = [0] * H.cols
    for i, row in enumerate(H.row_masks):
        while row:
            j = (row & -row).bit_length() - 1
            cols[j] |= 1 << i
            row &= row - 1
    return cols


def _mitm_weight_exists(cols, s: int, n: int, w: int) -> bool:
    """Can any XOR of w distinct columns equal s?  Sound to call only after
    lower weights produced no *unseen* hits: a match with overlapping index
    sets implies a lower-weight hit, so "no" is always conclusive while a
    spurious "yes" merely costs an exact scan of the class."""
    a = min(w // 2, 3)
    left = set()
    for combo in combinations(range(n), a):
        acc = 0
        for j in combo:
            acc ^= cols[j]
        left.add(acc)
    for combo in combinations(range(n), w - a):
        acc = s
        for j in combo:
            acc ^= cols[j]
        if acc in left:
            return True
    return False


def _scan_gf2(cols, s: int, n: int, b: int):
    """Yield hit supports in canonical order (values are implicitly all
    ones over GF(2)); the last support position comes from a hash map of
    column syndromes instead of being looped over."""
    if s == 0:
        yield ()
    by_val: dict[int, list[int]] = {}
    for j, cv in enumerate(cols):
        by_val.setdefault(cv, []).append(j)
    for w in range(1, b + 1):
        if w > n:
            return
        if w == 1:
            for j in by_val.get(s, ()):
                yield (j,)
            continue
        if w >= 4 and not _mitm_weight_exists(cols, s, n, w):
            continue
        get = by_val.get
        if w == 2:
            outers = ((),)
        else:
            outers = combinations(range(n), w - 2)
        for outer in outers:
            base = s
            for j in outer:
                base ^= cols[j]
            lo = outer[-1] + 1 if outer else 0
            for second in range(lo, n - 1):
                lst = get(base ^ cols[second])
                if lst is not None:
                    for j in lst[bisect_right(lst, second):]:
                        yield outer + (second, j)


def _solve_last_value(f: FieldSpec, col, target):
    """v != 0 with v*col == target componentwise, or None."""
    pivot = -1
    for i, c in enumerate(col):
        if c:
            pivot = i
            break
    if pivot < 0:
        return "free" if all(t == 0 for t in target) else None
    v = f.div(target[pivot], col[pivot])
    if v == 0:
        return None
    for c, t in zip(col, target):
        if f.mul(v, c) != t:
            return None
    return v


def _scan_generic(f: FieldSpec, cols, s, n: int, b: int):
    """Yield (support, values) hits in canonical order for q > 2."""
    q = f.q
    if all(e == 0 for e in s):
        yield (), ()
    for w in range(1, b + 1):
        if w > n:
            return
        for support in combinations(range(n), w):
            head, last = support[:-1], support[-1]
            col_last = cols[last]
            # value prefix odometer over the head positions
            prefix = [1] * (w - 1)
            while True:
                target = list(s)
                for j, v in zip(head, prefix):
                    cj = cols[j]
                    for i in range(len(target)):
                        if cj[i]:
                            target[i] = f.sub(target[i], f.mul(v, cj[i]))
                v = _solve_last_value(f, col_last, target)
                if v == "free":
                    for vv in range(1, q):
                        yield support, tuple(prefix) + (vv,)
                elif v is not None:
                    yield support, tuple(prefix) + (v,)
                i = w - 2
                while i >= 0 and prefix[i] == q - 1:
                    prefix[i] = 1
                    i -= 1
                if i < 0:
                    break
                prefix[i] += 1


def scan_syndrome_hits(H: FieldMatrix, s: FieldVector, b: int, *, reference: bool = False):
    """Iterate the patterns e of weight <= b with H e = s, in canonical
    enumeration order, as :class:`Hit` objects carrying their ordinal index.

    The generator is lazy: taking its first element is the first-hit scan,
    continuing it resumes the scan (hash filtering does this), exhausting
    it is the all-hits diagnostic mode.  With ``reference=True`` a naive
    scan computes a full matrix-vector product per enumerated pattern
    instead; it is the independent oracle the fast path is tested against.
    """
    f = H.field
    n = H.cols
    enum = PatternEnumerator(f, n, b)
    if reference:
        for support, values in enum.iter_raw():
            hit = Hit(support, values, enum.index_of(support, values))
            if H @ hit.pattern(f, n) == s:
                yield hit
        return
    if f.p == 2 and f.m == 1:
        cols = _gf2_columns(H)
        for support in _scan_gf2(cols, s.bits, n, b):
            yield Hit(support, (1,) * len(support), enum.index_of(support, (1,) * len(support)))
        return
    cols = [tuple(H.column(j).entries) for j in range(n)]
    for support, values in _scan_generic(f, cols, tuple(s.entries), n, b):
        yield Hit(support, values, enum.index_of(support, values))


def all_syndrome_hits(H: FieldMatrix, s: FieldVector, b: int) -> list[Hit]:
    """Exhaustive all-hits mode (diagnostics)."""
    return list(scan_syndrome_hits(H, s, b))


# ---------------------------------------------------------------------------
# attacks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AttackOutcome:
    """Result of a linkage attempt on a pair of records."""

    related: bool
    candidates: tuple[FieldVector, FieldVector] | None
    all_solutions: int
    hash_verified: bool
    error_pattern: FieldVector | None
    patterns_scanned: int
    elapsed: float
    gtilde_rank: int
    degenerate: bool

    @property
    def verdict(self) -> str:
        return "related" if self.related else "non-related"


def _digest(v: FieldVector, alg: str) -> bytes:
    from .commitment import canonical_bytes

    return hashlib.new(alg, canonical_bytes(v)).digest()


def _vec_head(v: FieldVector, k: int) -> FieldVector:
    if v.bits is not None:
        return FieldVector(v.field, n=k, bits=v.bits & ((1 << k) - 1))
    return FieldVector(v.field, v.entries[:k])


def _vec_tail_neg(v: FieldVector, k: int) -> FieldVector:
    """Negated last k entries (solutions store the second message block
    with a flipped sign)."""
    if v.bits is not None:
        return FieldVector(v.field, n=k, bits=v.bits >> (v.n - k))
    f = v.field
    return FieldVector(f, tuple(f.neg(e) for e in v.entries[v.n - k:]))


def _attack_core(G1, G2, f1, f2, b, hashes, hash_alg, ref_G1, ref_G2, reference_scan):
    start = perf_counter()
    f = f1.field
    n = f1.n
    if f2.field != f or f2.n != n:
        raise ValueError("commitments must share field and length")
    if G1.rows != n or G2.rows != n:
        raise ValueError("generator blocks must have n rows")
    r = f1 - f2
    Gt = concat_cols(G1, G2)
    Ht = kernel_basis(Gt.transpose()).transpose()
    gtilde_rank = n - Ht.rows
    degenerate = gtilde_rank == n
    s = Ht @ r
    total = pattern_count(f.q, n, b)
    k1, k2 = G1.cols, G2.cols
    for hit in scan_syndrome_hits(Ht, s, b, reference=reference_scan):
        e = hit.pattern(f, n)
        sols = solve_affine(Gt, r - e)
        if hashes is None:
            mt = sols.particular
            m1 = _vec_head(mt, k1)
            m2 = _vec_tail_neg(mt, k2)
            return AttackOutcome(
                related=True,
                candidates=(f1 - (G1 @ m1), f2 - (G2 @ m2)),
                all_solutions=sols.count,
                hash_verified=False,
                error_pattern=e,
                patterns_scanned=hit.index + 1,
                elapsed=perf_counter() - start,
                gtilde_rank=gtilde_rank,
                degenerate=degenerate,
            )
        if sols.count > SOLUTION_ENUM_CAP:
            raise ResourceCapError(
                f"hash filtering would enumerate {sols.count} solutions")
        for mt in sols:
            m1 = _vec_head(mt, k1)
            m2 = _vec_tail_neg(mt, k2)
            if (_digest(ref_G1 @ m1, hash_alg) == hashes[0]
                    and _digest(ref_G2 @ m2, hash_alg) == hashes[1]):
                return AttackOutcome(
                    related=True,
                    candidates=(f1 - (G1 @ m1), f2 - (G2 @ m2)),
                    all_solutions=sols.count,
                    hash_verified=True,
                    error_pattern=e,
                    patterns_scanned=hit.index + 1,
                    elapsed=perf_counter() - start,
                    gtilde_rank=gtilde_rank,
                    degenerate=degenerate,
                )
        # no coset solution matched the digests: spurious pattern, keep going
    return AttackOutcome(
        related=False,
        candidates=None,
        all_solutions=0,
        hash_verified=False,
        error_pattern=None,
        patterns_scanned=total,
        elapsed=perf_counter() - start,
        gtilde_rank=gtilde_rank,
        degenerate=degenerate,
    )


def decodability_attack(f1: FieldVector, f2: FieldVector, code: LinearCode) -> bool:
    """Label two plain commitments as related when their offset decodes."""
    from .codes import decode_bounded

    return decode_bounded(code, f1 - f2) is not None


def generalized_attack(G1: FieldMatrix, G2: FieldMatrix, f1: FieldVector,
                       f2: FieldVector, b: int, *, hashes=None,
                       hash_alg: str = "sha256",
                       reference_scan: bool = False) -> AttackOutcome:
    """Linkage/recovery attack on two commitments built over (possibly)
    different codes given by generator blocks G1, G2.

    Scans error patterns of weight <= b against the annihilator of
    (G1|G2); on a hit, solves the linear system and splits the solution
    into per-record messages.  With digests supplied, the whole solution
    coset is filtered and the scan continues past patterns whose coset
    contains no digest match, so a candidate pair is only ever returned
    hash-verified.
    """
    return _attack_core(G1, G2, f1, f2, b, hashes, hash_alg, G1, G2, reference_scan)


def _bit_permutation(T: TransformDescriptor, n: int):
    if T.kind == "identity":
        return tuple(range(n))
    if T.kind != "bit-permutation":
        raise ValueError("records must carry bit-permutation (or identity) transforms")
    return T.permutation


def modified_decodability_attack(code, rec1, rec2, b: int, *, hashes=None,
                                 hash_alg: str = "sha256",
                                 reference_scan: bool = False) -> AttackOutcome:
    """Attack on records whose feature vectors went through public
    record-specific bit permutations.

    rec1/rec2 are (commitment, transform) pairs.  Un-permuting each
    commitment and generator copy reduces the problem to the two-code
    attack; recovered codeword candidates live in the original code, so
    the returned feature-vector candidates are already expressed in the
    un-permuted domain.
    """
    G = code.G if isinstance(code, LinearCode) else code
    f1, T1 = rec1
    f2, T2 = rec2
    n = G.rows
    perm1 = _bit_permutation(T1, n)
    perm2 = _bit_permutation(T2, n)
    inv1 = [0] * n
    inv2 = [0] * n
    for i, p in enumerate(perm1):
        inv1[p] = i
    for i, p in enumerate(perm2):
        inv2[p] = i
    G1 = permuted_rows(G, inv1)
    G2 = permuted_rows(G, inv2)
    f1p = apply_inverse(T1, f1)
    f2p = apply_inverse(T2, f2)
    return _attack_core(G1, G2, f1p, f2p, b, hashes, hash_alg, G, G, reference_scan)


def affine_reduction_attack(code, rec1, rec2, b: int, *, hashes=None,
                            hash_alg: str = "sha256") -> AttackOutcome:
    """Break field-permutation records whose bijections are affine.

    rec1/rec2 are (commitment, transform) pairs with field-permutation
    transforms sigma_i = a_i*x + c_i.  The constant shift c_i*(1..1) is
    subtracted from each commitment and the scalar matrices a_i^-1 * I
    feed the linear attack, which then sees plain commitments of the
    feature vectors themselves.  Raises ValueError when a sigma is not
    affine (the reduction does not apply).
    """
    from .transforms import detect_affine

    G = code.G if isinstance(code, LinearCode) else code
    f = G.field
    n = G.rows
    qr = []
    commitments = []
    for fvec, T in (rec1, rec2):
        if T.kind != "field-permutation":
            raise ValueError("affine reduction expects field-permutation records")
        ab = detect_affine(T.sigma, f)
        if ab is None:
            raise ValueError("transform bijection is not affine; reduction unavailable")
        a, c = ab
        shift = FieldVector(f, (c,) * n)
        commitments.append(fvec - shift)
        a_inv = f.inv(a)
        qr.append(FieldMatrix(f, [[a_inv if i == j else 0 for j in range(n)]
                                  for i in range(n)]))
    return linear_decodability_attack(code, commitments[0], commitments[1],
                                      qr[0], qr[1], b, hashes=hashes, hash_alg=hash_alg)


def linear_decodability_attack(code, f1: FieldVector, f2: FieldVector,
                               Q: FieldMatrix, R: FieldMatrix, b: int, *,
                               hashes=None, hash_alg: str = "sha256",
                               reference_scan: bool = False) -> AttackOutcome:
    """Attack through a pair of invertible matrices Q, R chosen so that
    Q f1 - R f2 strips the records' transforms: the offset is scanned in
    the code generated by (Q G | R G).

    Candidates come back in the Q-/R-mapped coordinates (for Q = inverse
    of the first transform's linear part they are the feature vectors
    themselves); codeword candidates are mapped back through Q^-1, R^-1,
    i.e. hashed as G m, when digests are checked.
    """
    G = code.G if isinstance(code, LinearCode) else code
    n = G.rows
    if Q.rows != n or Q.cols != n or R.rows != n or R.cols != n:
        raise ValueError("Q and R must be n x n")
    if rank(Q) != n or rank(R) != n:
        raise ValueError("Q and R must be invertible")
    return _attack_core(Q @ G, R @ G, Q @ f1, R @ f2, b, hashes, hash_alg, G, G,
                        reference_scan)
