"""Dense exact linear algebra over finite fields.

Vectors and matrices are immutable.  Over GF(2) the entries are bit-packed
into Python integers (bit i of a vector mask = entry i; one mask per matrix
row), so row operations are single XORs; every other field stores canonical
integer entries in tuples.  Gaussian elimination uses first-non-zero
pivoting and needs no tolerance: all arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldSpec, GF2


class NoSolutionError(ValueError):
    """Right-hand side outside the column space."""


class SingularMatrixError(ValueError):
    """Matrix is not invertible."""


def _check_same_field(a, b):
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field} vs {b.field}")


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

class FieldVector:
    """Immutable length-n vector over a finite field."""

    __slots__ = ("field", "n", "bits", "_entries")

    def __init__(self, field: FieldSpec, entries=None, *, n=None, bits=None):
        self.field = field
        if bits is not None:
            if field.p != 2 or field.m != 1:
                raise ValueError("bit masks are only valid over GF(2)")
            if n is None:
                raise ValueError("bit-mask construction requires n")
            if bits >> n:
                raise ValueError("mask has bits beyond length n")
            self.n = n
            self.bits = bits
            self._entries = None
            return
        entries = [int(e) for e in entries]
        for e in entries:
            field.check_element(e)
        self.n = len(entries)
        if field is GF2 or (field.p == 2 and field.m == 1):
            mask = 0
            for i, e in enumerate(entries):
                mask |= e << i
            self.bits = mask
            self._entries = None
        else:
            self.bits = None
            self._entries = tuple(entries)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zeros(cls, field: FieldSpec, n: int) -> "FieldVector":
        if field.p == 2 and field.m == 1:
            return cls(field, n=n, bits=0)
        return cls(field, (0,) * n)

    # -- accessors ------------------------------------------------------------

    @property
    def entries(self) -> tuple:
        if self._entries is None:
            return tuple((self.bits >> i) & 1 for i in range(self.n))
        return self._entries

    def __len__(self):
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        if self.bits is not None:
            return (self.bits >> i) & 1
        return self._entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, FieldVector)
            and self.field == other.field
            and self.n == other.n
            and (self.bits == other.bits if self.bits is not None else self._entries == other._entries)
        )

    def __hash__(self):
        return hash((self.field, self.n, self.bits if self.bits is not None else self._entries))

    def __repr__(self):
        if self.bits is not None:
            body = "".join(str((self.bits >> i) & 1) for i in range(self.n))
        else:
            body = ",".join(str(e) for e in self._entries)
        return f"FieldVector({self.field!r}, [{body}])"

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "FieldVector") -> "FieldVector":
        _check_same_field(self, other)
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        if self.bits is not None:
            return FieldVector(self.field, n=self.n, bits=self.bits ^ other.bits)
        f = self.field
        return FieldVector(f, tuple(f.add(a, b) for a, b in zip(self._entries, other._entries)))

    def __sub__(self, other: "FieldVector") -> "FieldVector":
        _check_same_field(self, other)
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        if self.bits is not None:
            return FieldVector(self.field, n=self.n, bits=self.bits ^ other.bits)
        f = self.field
        return FieldVector(f, tuple(f.sub(a, b) for a, b in zip(self._entries, other._entries)))

    def __neg__(self) -> "FieldVector":
        if self.bits is not None:
            return self
        f = self.field
        return FieldVector(f, tuple(f.neg(a) for a in self._entries))

    def scale(self, c: int) -> "FieldVector":
        f = self.field
        f.check_element(c)
        if self.bits is not None:
            return self if c else FieldVector.zeros(f, self.n)
        return FieldVector(f, tuple(f.mul(c, a) for a in self._entries))

    def weight(self) -> int:
        if self.bits is not None:
            return self.bits.bit_count()
        return sum(1 for e in self._entries if e)


def vec_add(a: FieldVector, b: FieldVector) -> FieldVector:
    return a + b


def vec_sub(a: FieldVector, b: FieldVector) -> FieldVector:
    return a - b


def hamming_weight(v: FieldVector) -> int:
    return v.weight()


def hamming_distance(a: FieldVector, b: FieldVector) -> int:
    return (a - b).weight()


def random_vector(field: FieldSpec, n: int, rng) -> FieldVector:
    """Uniform element of F^n."""
    if field.p == 2 and field.m == 1:
        raw = rng.integers(0, 256, size=(n + 7) // 8)
        mask = int.from_bytes(bytes(int(x) for x in raw), "little") & ((1 << n) - 1)
        return FieldVector(field, n=n, bits=mask)
    return FieldVector(field, tuple(int(x) for x in rng.integers(0, field.q, size=n)))


def random_weight_vector(field: FieldSpec, n: int, w: int, rng) -> FieldVector:
    """Uniform vector of Hamming weight exactly w: uniform support, uniform
    non-zero values."""
    if w > n or w < 0:
        raise ValueError(f"weight {w} out of range for length {n}")
    support = sorted(int(i) for i in rng.choice(n, size=w, replace=False)) if w else []
    if field.p == 2 and field.m == 1:
        mask = 0
        for i in support:
            mask |= 1 << i
        return FieldVector(field, n=n, bits=mask)
    entries = [0] * n
    for i in support:
        entries[i] = int(rng.integers(1, field.q))
    return FieldVector(field, entries)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class FieldMatrix:
    """Immutable rows x cols matrix over a finite field.

    GF(2) storage is one integer mask per row (bit j = column j); other
    fields store a tuple of row tuples.
    """

    __slots__ = ("field", "rows", "cols", "row_masks", "row_entries")

    def __init__(self, field: FieldSpec, entries=None, *, cols=None, row_masks=None):
        self.field = field
        if row_masks is not None:
            if field.p != 2 or field.m != 1:
                raise ValueError("row masks are only valid over GF(2)")
            if cols is None:
                raise ValueError("mask construction requires cols")
            row_masks = tuple(row_masks)
            for r in row_masks:
                if r >> cols:
                    raise ValueError("row mask has bits beyond cols")
            self.rows = len(row_masks)
            self.cols = cols
            self.row_masks = row_masks
            self.row_entries = None
            return
        grid = [[int(e) for e in row] for row in entries]
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else (cols or 0)
        for row in grid:
            if len(row) != self.cols:
                raise ValueError("ragged rows")
            for e in row:
                field.check_element(e)
        if field.p == 2 and field.m == 1:
            masks = []
            for row in grid:
                m = 0
                for j, e in enumerate(row):
                    m |= e << j
                masks.append(m)
            self.row_masks = tuple(masks)
            self.row_entries = None
        else:
            self.row_masks = None
            self.row_entries = tuple(tuple(row) for row in grid)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "FieldMatrix":
        if field.p == 2 and field.m == 1:
            return cls(field, cols=n, row_masks=[1 << i for i in range(n)])
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "FieldMatrix":
        if field.p == 2 and field.m == 1:
            return cls(field, cols=cols, row_masks=[0] * rows)
        return cls(field, [[0] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, field: FieldSpec, columns, rows: int) -> "FieldMatrix":
        cols = len(columns)
        if field.p == 2 and field.m == 1:
            masks = [0] * rows
            for j, col in enumerate(columns):
                for i in range(rows):
                    bit = (col >> i) & 1 if isinstance(col, int) else col[i]
                    if bit:
                        masks[i] |= 1 << j
            return cls(field, cols=cols, row_masks=masks)
        grid = [[columns[j][i] for j in range(cols)] for i in range(rows)]
        return cls(field, grid)

    # -- accessors ------------------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        if self.row_masks is not None:
            return (self.row_masks[i] >> j) & 1
        return self.row_entries[i][j]

    def row(self, i: int) -> FieldVector:
        if self.row_masks is not None:
            return FieldVector(self.field, n=self.cols, bits=self.row_masks[i])
        return FieldVector(self.field, self.row_entries[i])

    def column(self, j: int) -> FieldVector:
        if self.row_masks is not None:
            mask = 0
            for i, r in enumerate(self.row_masks):
                mask |= ((r >> j) & 1) << i
            return FieldVector(self.field, n=self.rows, bits=mask)
        return FieldVector(self.field, tuple(row[j] for row in self.row_entries))

    def to_grid(self) -> list[list[int]]:
        if self.row_masks is not None:
            return [[(r >> j) & 1 for j in range(self.cols)] for r in self.row_masks]
        return [list(row) for row in self.row_entries]

    def __eq__(self, other):
        return (
            isinstance(other, FieldMatrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and (self.row_masks == other.row_masks
                 if self.row_masks is not None else self.row_entries == other.row_entries)
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols,
                     self.row_masks if self.row_masks is not None else self.row_entries))

    def __repr__(self):
        return f"FieldMatrix({self.field!r}, {self.rows}x{self.cols})"

    # -- products -------------------------------------------------------------

    def transpose(self) -> "FieldMatrix":
        if self.row_masks is not None:
            out = [0] * self.cols
            for i, r in enumerate(self.row_masks):
                while r:
                    j = (r & -r).bit_length() - 1
                    out[j] |= 1 << i
                    r &= r - 1
            return FieldMatrix(self.field, cols=self.rows, row_masks=out)
        grid = [[self.row_entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return FieldMatrix(self.field, grid, cols=self.rows)

    def mat_vec(self, v: FieldVector) -> FieldVector:
        _check_same_field(self, v)
        if v.n != self.cols:
            raise ValueError(f"dimension mismatch: {self.rows}x{self.cols} times length {v.n}")
        if self.row_masks is not None:
            out = 0
            vb = v.bits
            for i, r in enumerate(self.row_masks):
                out |= ((r & vb).bit_count() & 1) << i
            return FieldVector(self.field, n=self.rows, bits=out)
        f = self.field
        ve = v.entries
        out = []
        for row in self.row_entries:
            acc = 0
            for a, x in zip(row, ve):
                if a and x:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return FieldVector(f, out)

    def mat_mul(self, other: "FieldMatrix") -> "FieldMatrix":
        _check_same_field(self, other)
        if self.cols != other.rows:
            raise ValueError(
                f"dimension mismatch: {self.rows}x{self.cols} times {other.rows}x{other.cols}")
        if self.row_masks is not None:
            orows = other.row_masks
            out = []
            for r in self.row_masks:
                acc = 0
                rr = r
                while rr:
                    k = (rr & -rr).bit_length() - 1
                    acc ^= orows[k]
                    rr &= rr - 1
                out.append(acc)
            return FieldMatrix(self.field, cols=other.cols, row_masks=out)
        f = self.field
        ogrid = other.row_entries
        out = []
        for row in self.row_entries:
            acc = [0] * other.cols
            for k, a in enumerate(row):
                if a:
                    orow = ogrid[k]
                    for j in range(other.cols):
                        if orow[j]:
                            acc[j] = f.add(acc[j], f.mul(a, orow[j]))
            out.append(acc)
        return FieldMatrix(f, out, cols=other.cols)

    def __matmul__(self, other):
        if isinstance(other, FieldVector):
            return self.mat_vec(other)
        if isinstance(other, FieldMatrix):
            return self.mat_mul(other)
        return NotImplemented


def mat_mul(M: FieldMatrix, x):
    """Matrix times vector or matrix."""
    return M @ x


def concat_cols(A: FieldMatrix, B: FieldMatrix) -> FieldMatrix:
    """Column-block concatenation (A|B)."""
    _check_same_field(A, B)
    if A.rows != B.rows:
        raise ValueError(f"row mismatch: {A.rows} vs {B.rows}")
    if A.row_masks is not None:
        masks = [a | (b << A.cols) for a, b in zip(A.row_masks, B.row_masks)]
        return FieldMatrix(A.field, cols=A.cols + B.cols, row_masks=masks)
    grid = [list(ra) + list(rb) for ra, rb in zip(A.row_entries, B.row_entries)]
    return FieldMatrix(A.field, grid)


def permuted_rows(M: FieldMatrix, index_map) -> FieldMatrix:
    """Matrix whose row i is row index_map[i] of M."""
    if len(index_map) != M.rows:
        raise ValueError("index map length must equal row count")
    if M.row_masks is not None:
        return FieldMatrix(M.field, cols=M.cols, row_masks=[M.row_masks[j] for j in index_map])
    return FieldMatrix(M.field, [M.row_entries[j] for j in index_map])


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _rref_gf2(masks: list[int], ncols: int):
    """In-place reduced row echelon form; returns pivot column list."""
    pivots = []
    prow = 0
    for col in range(ncols):
        sel = -1
        for i in range(prow, len(masks)):
            if (masks[i] >> col) & 1:
                sel = i
                break
        if sel < 0:
            continue
        masks[prow], masks[sel] = masks[sel], masks[prow]
        pm = masks[prow]
        for i in range(len(masks)):
            if i != prow and (masks[i] >> col) & 1:
                masks[i] ^= pm
        pivots.append(col)
        prow += 1
        if prow == len(masks):
            break
    return pivots


def _rref_dense(grid: list[list[int]], ncols: int, f: FieldSpec):
    pivots = []
    prow = 0
    for col in range(ncols):
        sel = -1
        for i in range(prow, len(grid)):
            if grid[i][col]:
                sel = i
                break
        if sel < 0:
            continue
        grid[prow], grid[sel] = grid[sel], grid[prow]
        inv = f.inv(grid[prow][col])
        if inv != 1:
            grid[prow] = [f.mul(inv, e) for e in grid[prow]]
        prow_vals = grid[prow]
        for i in range(len(grid)):
            if i != prow and grid[i][col]:
                c = grid[i][col]
                grid[i] = [f.sub(e, f.mul(c, pe)) for e, pe in zip(grid[i], prow_vals)]
        pivots.append(col)
        prow += 1
        if prow == len(grid):
            break
    return pivots


def _rref(M: FieldMatrix):
    """(working rows, pivot columns); working rows share M's storage style."""
    if M.row_masks is not None:
        masks = list(M.row_masks)
        pivots = _rref_gf2(masks, M.cols)
        return masks, pivots
    grid = [list(r) for r in M.row_entries]
    pivots = _rref_dense(grid, M.cols, M.field)
    return grid, pivots


def rank(M: FieldMatrix) -> int:
    return len(_rref(M)[1])


def kernel_basis(M: FieldMatrix) -> FieldMatrix:
    """Matrix whose columns form a basis of {x : M x = 0}.

    Width is cols(M) - rank(M); a full-rank square M yields a matrix with
    zero columns.
    """
    work, pivots = _rref(M)
    n = M.cols
    pivot_set = set(pivots)
    free_cols = [j for j in range(n) if j not in pivot_set]
    f = M.field
    if M.row_masks is not None:
        basis_masks = []
        for fc in free_cols:
            vec = 1 << fc
            for i, pc in enumerate(pivots):
                if (work[i] >> fc) & 1:
                    vec |= 1 << pc
            basis_masks.append(vec)
        return FieldMatrix.from_columns(f, basis_masks, rows=n)
    columns = []
    for fc in free_cols:
        vec = [0] * n
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = f.neg(work[i][fc])
        columns.append(vec)
    if not columns:
        return FieldMatrix(f, [[] for _ in range(n)], cols=0)
    return FieldMatrix.from_columns(f, columns, rows=n)


@dataclass(frozen=True)
class AffineSolutions:
    """Solution set {particular + span(kernel columns)} of a linear system."""

    particular: FieldVector
    kernel: FieldMatrix

    @property
    def count(self) -> int:
        return self.particular.field.q ** self.kernel.cols

    def solution(self, index: int) -> FieldVector:
        """index-th solution; index 0 is the particular solution and the
        kernel coefficients run through base-q digits of the index."""
        f = self.particular.field
        if not 0 <= index < self.count:
            raise IndexError(index)
        x = self.particular
        for j in range(self.kernel.cols):
            c = index % f.q
            index //= f.q
            if c:
                x = x + self.kernel.column(j).scale(c)
        return x

    def __iter__(self):
        for i in range(self.count):
            yield self.solution(i)


def solve_affine(M: FieldMatrix, y: FieldVector) -> AffineSolutions:
    """All solutions of M x = y, or NoSolutionError if y is outside the
    column space."""
    _check_same_field(M, y)
    if y.n != M.rows:
        raise ValueError(f"dimension mismatch: {M.rows}x{M.cols} vs rhs length {y.n}")
    f = M.field
    n = M.cols
    if M.row_masks is not None:
        aug = [r | (((y.bits >> i) & 1) << n) for i, r in enumerate(M.row_masks)]
        pivots = _rref_gf2(aug, n + 1)
        if pivots and pivots[-1] == n:
            raise NoSolutionError("inconsistent linear system")
        xb = 0
        for i, pc in enumerate(pivots):
            if (aug[i] >> n) & 1:
                xb |= 1 << pc
        particular = FieldVector(f, n=n, bits=xb)
        work = [a & ((1 << n) - 1) for a in aug]
        pivot_set = set(pivots)
        free_cols = [j for j in range(n) if j not in pivot_set]
        basis_masks = []
        for fc in free_cols:
            vec = 1 << fc
            for i, pc in enumerate(pivots):
                if (work[i] >> fc) & 1:
                    vec |= 1 << pc
            basis_masks.append(vec)
        return AffineSolutions(particular, FieldMatrix.from_columns(f, basis_masks, rows=n))
    grid = [list(r) + [ye] for r, ye in zip(M.row_entries, y.entries)]
    pivots = _rref_dense(grid, n + 1, f)
    if pivots and pivots[-1] == n:
        raise NoSolutionError("inconsistent linear system")
    xs = [0] * n
    for i, pc in enumerate(pivots):
        xs[pc] = grid[i][n]
    particular = FieldVector(f, xs)
    pivot_set = set(pivots)
    free_cols = [j for j in range(n) if j not in pivot_set]
    columns = []
    for fc in free_cols:
        vec = [0] * n
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = f.neg(grid[i][fc])
        columns.append(vec)
    kern = (FieldMatrix.from_columns(f, columns, rows=n)
            if columns else FieldMatrix(f, [[] for _ in range(n)], cols=0))
    return AffineSolutions(particular, kern)


def invert(M: FieldMatrix) -> FieldMatrix:
    """Inverse of a square full-rank matrix."""
    if M.rows != M.cols:
        raise SingularMatrixError("only square matrices are invertible")
    n = M.rows
    f = M.field
    if M.row_masks is not None:
        aug = [r | (1 << (n + i)) for i, r in enumerate(M.row_masks)]
        pivots = _rref_gf2(aug, n)
        if len(pivots) < n:
            raise SingularMatrixError("matrix is singular")
        return FieldMatrix(f, cols=n, row_masks=[a >> n for a in aug])
    ident = FieldMatrix.identity(f, n)
    grid = [list(r) + list(ir) for r, ir in zip(M.row_entries, ident.row_entries)]
    pivots = _rref_dense(grid, n, f)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return FieldMatrix(f, [row[n:] for row in grid])
