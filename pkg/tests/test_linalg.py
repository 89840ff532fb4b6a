import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzylink.fields import GF2, field
from fuzzylink.linalg import (
    FieldMatrix,
    FieldVector,
    NoSolutionError,
    SingularMatrixError,
    concat_cols,
    hamming_distance,
    hamming_weight,
    invert,
    kernel_basis,
    permuted_rows,
    random_vector,
    random_weight_vector,
    rank,
    solve_affine,
    vec_add,
    vec_sub,
)

GF5 = field(5)


# ---------------------------------------------------------------------------
# naive per-entry reference implementations (independent oracle for the
# bit-packed GF(2) fast path)
# ---------------------------------------------------------------------------

def ref_matvec(grid, vec):
    return [sum(a * x for a, x in zip(row, vec)) % 2 for row in grid]


def ref_rref(grid):
    grid = [row[:] for row in grid]
    rows = len(grid)
    cols = len(grid[0]) if grid else 0
    pivots = []
    r = 0
    for c in range(cols):
        sel = next((i for i in range(r, rows) if grid[i][c]), None)
        if sel is None:
            continue
        grid[r], grid[sel] = grid[sel], grid[r]
        for i in range(rows):
            if i != r and grid[i][c]:
                grid[i] = [(x + y) % 2 for x, y in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
    return grid, pivots


def random_gf2_matrix(rng, rows, cols):
    return [[int(x) for x in rng.integers(0, 2, size=cols)] for _ in range(rows)]


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def test_vec_add_examples():
    a = FieldVector(GF2, [1, 0, 1, 1])
    b = FieldVector(GF2, [0, 0, 1, 1])
    assert vec_add(a, b).entries == (1, 0, 0, 0)
    assert vec_add(a, FieldVector.zeros(GF2, 4)) == a
    assert vec_sub(FieldVector(GF5, (3, 4)), FieldVector(GF5, (4, 4))).entries == (4, 0)


def test_vec_mismatch_errors():
    with pytest.raises(ValueError):
        vec_add(FieldVector(GF2, [1, 0]), FieldVector(GF2, [1, 0, 0]))
    with pytest.raises(ValueError):
        vec_add(FieldVector(GF2, [1, 0]), FieldVector(GF5, [1, 0]))


def test_hamming_weight_examples():
    assert hamming_weight(FieldVector.zeros(GF2, 9)) == 0
    assert hamming_weight(FieldVector(GF2, [1, 0, 1, 1])) == 3
    v = FieldVector(GF5, (0, 3, 2))
    assert hamming_distance(v, v) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.data())
def test_distance_equals_weight_of_difference(n, data):
    f = data.draw(st.sampled_from([GF2, GF5, field(2, 3)]))
    a = FieldVector(f, data.draw(st.lists(st.integers(0, f.q - 1), min_size=n, max_size=n)))
    b = FieldVector(f, data.draw(st.lists(st.integers(0, f.q - 1), min_size=n, max_size=n)))
    assert hamming_distance(a, b) == hamming_weight(vec_sub(a, b))


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def test_mat_vec_examples():
    M = FieldMatrix(GF2, [[1, 1], [0, 1]])
    assert (M @ FieldVector(GF2, [1, 1])).entries == (0, 1)
    I5 = FieldMatrix.identity(GF5, 3)
    v = FieldVector(GF5, (2, 0, 4))
    assert I5 @ v == v
    Z = FieldMatrix.zeros(GF2, 3, 4)
    assert (Z @ FieldVector(GF2, [1, 1, 1, 1])).weight() == 0


def test_mat_mul_dimension_mismatch():
    M = FieldMatrix(GF2, [[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        M @ FieldVector(GF2, [1, 1, 1])


def test_matvec_matches_reference(rng):
    for _ in range(50):
        r, c = (int(x) for x in rng.integers(1, 24, size=2))
        grid = random_gf2_matrix(rng, r, c)
        vec = [int(x) for x in rng.integers(0, 2, size=c)]
        M = FieldMatrix(GF2, grid)
        out = M @ FieldVector(GF2, vec)
        assert list(out.entries) == ref_matvec(grid, vec)


def test_matmul_associative_with_vector(rng):
    for f in (GF2, GF5):
        A = FieldMatrix(f, [[int(x) for x in rng.integers(0, f.q, size=4)] for _ in range(3)])
        B = FieldMatrix(f, [[int(x) for x in rng.integers(0, f.q, size=5)] for _ in range(4)])
        v = random_vector(f, 5, rng)
        assert (A @ B) @ v == A @ (B @ v)


# ---------------------------------------------------------------------------
# rank / kernel / solving
# ---------------------------------------------------------------------------

def test_rank_trivial():
    assert rank(FieldMatrix.identity(GF2, 8)) == 8
    assert rank(FieldMatrix.zeros(GF2, 5, 7)) == 0
    assert rank(FieldMatrix.identity(GF5, 4)) == 4


@pytest.mark.parametrize("rows,cols", [(16, 16), (40, 64), (256, 256)])
def test_rank_equals_transpose_rank(rng, rows, cols):
    masks = [int.from_bytes(rng.bytes((cols + 7) // 8), "little") & ((1 << cols) - 1)
             for _ in range(rows)]
    M = FieldMatrix(GF2, cols=cols, row_masks=masks)
    assert rank(M) == rank(M.transpose())


def test_rref_matches_naive_reference(rng):
    from fuzzylink.linalg import _rref
    for _ in range(40):
        r, c = (int(x) for x in rng.integers(1, 20, size=2))
        grid = random_gf2_matrix(rng, r, c)
        work, pivots = _rref(FieldMatrix(GF2, grid))
        ref_grid, ref_pivots = ref_rref(grid)
        assert pivots == ref_pivots
        unpacked = [[(m >> j) & 1 for j in range(c)] for m in work]
        assert unpacked == ref_grid


def test_kernel_trivial():
    assert kernel_basis(FieldMatrix.identity(GF2, 6)).cols == 0
    K = kernel_basis(FieldMatrix.zeros(GF2, 2, 2))
    assert K.cols == 2


@pytest.mark.parametrize("f", [GF2, GF5])
def test_kernel_properties(rng, f):
    for _ in range(25):
        r, c = (int(x) for x in rng.integers(2, 14, size=2))
        M = FieldMatrix(f, [[int(x) for x in rng.integers(0, f.q, size=c)] for _ in range(r)])
        K = kernel_basis(M)
        assert K.cols == c - rank(M)
        for j in range(K.cols):
            assert (M @ K.column(j)).weight() == 0
        if K.cols:
            assert rank(K) == K.cols  # columns linearly independent


def test_solve_identity():
    y = FieldVector(GF2, [1, 0, 1])
    sols = solve_affine(FieldMatrix.identity(GF2, 3), y)
    assert sols.particular == y and sols.count == 1


@pytest.mark.parametrize("f", [GF2, GF5])
def test_solve_enumerates_all_solutions(rng, f):
    for _ in range(20):
        r, c = (int(x) for x in rng.integers(2, 9, size=2))
        M = FieldMatrix(f, [[int(x) for x in rng.integers(0, f.q, size=c)] for _ in range(r)])
        y = M @ random_vector(f, c, rng)
        sols = solve_affine(M, y)
        assert sols.count == f.q ** (c - rank(M))
        seen = set()
        for x in sols:
            assert M @ x == y
            seen.add(x)
        assert len(seen) == sols.count


def test_solve_inconsistent():
    M = FieldMatrix(GF2, [[1, 0], [1, 0]])
    with pytest.raises(NoSolutionError):
        solve_affine(M, FieldVector(GF2, [1, 0]))


@pytest.mark.parametrize("f", [GF2, GF5])
def test_invert_round_trip(rng, f):
    ident = FieldMatrix.identity(f, 6)
    assert invert(ident) == ident
    for _ in range(15):
        while True:
            M = FieldMatrix(f, [[int(x) for x in rng.integers(0, f.q, size=6)] for _ in range(6)])
            if rank(M) == 6:
                break
        assert invert(M) @ M == ident


def test_invert_permutation_is_transpose(rng):
    perm = [int(i) for i in rng.permutation(7)]
    P = FieldMatrix(GF2, cols=7, row_masks=[1 << p for p in perm])
    assert invert(P) == P.transpose()


def test_invert_singular():
    with pytest.raises(SingularMatrixError):
        invert(FieldMatrix.zeros(GF2, 3, 3))
    with pytest.raises(SingularMatrixError):
        invert(FieldMatrix.zeros(GF2, 2, 3))


# ---------------------------------------------------------------------------
# concatenation / permutation helpers
# ---------------------------------------------------------------------------

def test_concat_identity_blocks():
    I2 = FieldMatrix.identity(GF2, 2)
    C = concat_cols(I2, I2)
    assert (C.rows, C.cols) == (2, 4)
    assert C.to_grid() == [[1, 0, 1, 0], [0, 1, 0, 1]]


@pytest.mark.parametrize("f", [GF2, GF5])
def test_concat_evaluates_blockwise(rng, f):
    n, k1, k2 = 6, 3, 4
    G1 = FieldMatrix(f, [[int(x) for x in rng.integers(0, f.q, size=k1)] for _ in range(n)])
    G2 = FieldMatrix(f, [[int(x) for x in rng.integers(0, f.q, size=k2)] for _ in range(n)])
    m1 = random_vector(f, k1, rng)
    m2 = random_vector(f, k2, rng)
    stacked = FieldVector(f, list(m1.entries) + [f.neg(e) for e in m2.entries])
    lhs = concat_cols(G1, G2) @ stacked
    rhs = (G1 @ m1) - (G2 @ m2)
    assert lhs == rhs


def test_permuted_rows(rng):
    M = FieldMatrix(GF2, random_gf2_matrix(rng, 5, 3))
    order = [int(i) for i in rng.permutation(5)]
    P = permuted_rows(M, order)
    for i, j in enumerate(order):
        assert P.row(i) == M.row(j)


# ---------------------------------------------------------------------------
# random draws
# ---------------------------------------------------------------------------

def test_random_weight_vector_basics(rng):
    assert random_weight_vector(GF2, 12, 0, rng).weight() == 0
    for w in (1, 4, 12):
        for _ in range(40):
            assert random_weight_vector(GF2, 12, w, rng).weight() == w
    for _ in range(40):
        v = random_weight_vector(GF5, 9, 3, rng)
        assert v.weight() == 3
    with pytest.raises(ValueError):
        random_weight_vector(GF2, 5, 6, rng)


def test_random_weight_vector_coordinate_frequency(rng):
    # per-coordinate one-bit frequency for n=31, w=4 is exactly 4/31
    n, w, draws = 31, 4, 100_000
    counts = np.zeros(n, dtype=int)
    for _ in range(draws):
        bits = random_weight_vector(GF2, n, w, rng).bits
        idx = []
        while bits:
            idx.append((bits & -bits).bit_length() - 1)
            bits &= bits - 1
        counts[idx] += 1
    freq = counts / draws
    expected = w / n
    sigma = np.sqrt(expected * (1 - expected) / draws)
    assert np.all(np.abs(freq - expected) < 5 * sigma)


def test_random_vector_field_range(rng):
    v = random_vector(GF5, 200, rng)
    assert all(0 <= e < 5 for e in v.entries)
    assert len(set(v.entries)) == 5  # all symbols appear at this length w.h.p.
