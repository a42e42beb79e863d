"""
Exact linear algebra over the rationals and prime fields.

Every linear map in hopfkit is an ExactMatrix. Nothing is ever rounded:
rationals are Fractions in lowest terms, residues are ints in [0, p).

Tensor basis convention: the basis of V (x) W is e_i (x) f_j ordered with
i major and j minor (index i * dim W + j), so kron(f, g) is the matrix of
f (x) g.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import gmpy2

from hopfkit.errors import DimensionMismatch, FieldMismatch, InconsistencyError, InputError

logger = logging.getLogger(__name__)


class Field:
    """An exact field. Subclasses fix how scalars are stored."""

    characteristic: int = 0

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    @property
    def label(self) -> str:
        raise NotImplementedError

    def coerce(self, value):
        raise NotImplementedError

    def reduce(self, value):
        """Bring the result of native +, -, * back into canonical form."""
        return value

    def inverse(self, value):
        raise NotImplementedError

    def format(self, value) -> Union[str, int]:
        raise NotImplementedError


@dataclass(frozen=True)
class RationalField(Field):
    """The rationals; scalars are fractions.Fraction."""

    @property
    def label(self) -> str:
        return "Q"

    def coerce(self, value) -> Fraction:
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as e:
                raise InputError(f"not a rational number: {value!r}") from e
        if isinstance(value, float):
            raise InputError(f"floating point value {value!r} is not exact; write it as 'num/den'")
        return Fraction(value)

    def inverse(self, value) -> Fraction:
        return 1 / value

    def format(self, value) -> str:
        return str(value)


@dataclass(frozen=True)
class PrimeField(Field):
    """The prime field F_p; scalars are ints in [0, p)."""

    p: int = 2

    def __post_init__(self):
        if self.p < 2 or not gmpy2.is_prime(self.p):
            raise InputError(f"F_p needs a prime p, got {self.p}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def label(self) -> str:
        return f"Fp:{self.p}"

    def coerce(self, value) -> int:
        if isinstance(value, str):
            value = value.strip()
            if "/" in value:
                return self.coerce(Fraction(value))
            try:
                value = int(value)
            except ValueError as e:
                raise InputError(f"not a residue mod {self.p}: {value!r}") from e
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise InputError(f"{value} has no image in F_{self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, float):
            raise InputError(f"floating point value {value!r} is not a residue")
        return int(value) % self.p

    def reduce(self, value) -> int:
        return value % self.p

    def inverse(self, value) -> int:
        return pow(value, -1, self.p)

    def format(self, value) -> int:
        return int(value)


QQ = RationalField()


def field_from_label(label: Union[str, dict, Field]) -> Field:
    """
    Parse a field description.

    Accepts "Q", "Fp:<p>", {"Fp": p} or an existing Field.
    """
    if isinstance(label, Field):
        return label
    if isinstance(label, dict):
        if set(label) != {"Fp"}:
            raise InputError(f"field must be \"Q\" or {{\"Fp\": p}}, got {label!r}")
        return PrimeField(int(label["Fp"]))
    text = str(label).strip()
    if text.upper() == "Q":
        return QQ
    if text.lower().startswith("fp:"):
        try:
            return PrimeField(int(text[3:]))
        except ValueError as e:
            raise InputError(f"bad prime in field label {text!r}") from e
    raise InputError(f"unknown field {text!r}; use Q or Fp:<p>")


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix over one exact field. Immutable."""

    field: Field
    rows: int
    cols: int
    entries: Tuple = dataclass_field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries cannot fill a {self.rows}x{self.cols} matrix"
            )

    # construction

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: Optional[int] = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        for i, r in enumerate(rows):
            if len(r) != width:
                raise DimensionMismatch(f"row {i} has {len(r)} entries, expected {width}")
        entries = tuple(field.coerce(v) for r in rows for v in r)
        return cls(field, len(rows), width, entries)

    @classmethod
    def column(cls, field: Field, values: Sequence) -> "ExactMatrix":
        return cls(field, len(values), 1, tuple(field.coerce(v) for v in values))

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        zero, one = field.zero, field.one
        return cls(field, n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "ExactMatrix":
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def basis_vector(cls, field: Field, n: int, i: int) -> "ExactMatrix":
        return cls(field, n, 1, tuple(field.one if k == i else field.zero for k in range(n)))

    @classmethod
    def from_function(cls, field: Field, rows: int, cols: int, fn: Callable[[int, int], object]) -> "ExactMatrix":
        return cls(field, rows, cols, tuple(field.coerce(fn(i, j)) for i in range(rows) for j in range(cols)))

    # access

    def __getitem__(self, index: Tuple[int, int]):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column_values(self, j: int) -> Tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> List[List]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_identity(self) -> bool:
        return self.is_square and self == ExactMatrix.identity(self.field, self.rows)

    def first_difference(self, other: "ExactMatrix") -> Optional[Tuple[int, int]]:
        """First (row, col) where the two matrices disagree, None if equal."""
        _check_same_shape(self, other)
        for k, (x, y) in enumerate(zip(self.entries, other.entries)):
            if x != y:
                return divmod(k, self.cols)
        return None

    # arithmetic

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.field, self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if isinstance(other, SparseMatrix):
            return NotImplemented
        return matmul(self, other)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same_field(self, other)
        _check_same_shape(self, other)
        red = self.field.reduce
        return ExactMatrix(self.field, self.rows, self.cols,
                           tuple(red(x + y) for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same_field(self, other)
        _check_same_shape(self, other)
        red = self.field.reduce
        return ExactMatrix(self.field, self.rows, self.cols,
                           tuple(red(x - y) for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "ExactMatrix":
        return self.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = self.field.coerce(c)
        red = self.field.reduce
        return ExactMatrix(self.field, self.rows, self.cols, tuple(red(c * x) for x in self.entries))

    def with_entry(self, i: int, j: int, value) -> "ExactMatrix":
        entries = list(self.entries)
        entries[i * self.cols + j] = self.field.coerce(value)
        return ExactMatrix(self.field, self.rows, self.cols, tuple(entries))

    def submatrix(self, row_range: range, col_range: range) -> "ExactMatrix":
        return ExactMatrix(
            self.field, len(row_range), len(col_range),
            tuple(self.entries[i * self.cols + j] for i in row_range for j in col_range),
        )

    def flatten(self) -> "ExactMatrix":
        """Row-major vectorization as a column."""
        return ExactMatrix(self.field, self.rows * self.cols, 1, self.entries)

    def reshape(self, rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix(self.field, rows, cols, self.entries)


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """
    Matrix kept as its nonzero entries keyed by (row, col).

    Used where Kronecker-built maps are far too large to store densely but
    have only a few nonzeros per column. Entries are canonical and never zero.
    """

    field: Field
    rows: int
    cols: int
    data: Dict[Tuple[int, int], object] = dataclass_field(default_factory=dict, repr=False)

    @classmethod
    def from_entries(cls, field: Field, rows: int, cols: int,
                     entries: Iterable[Tuple[int, int, object]]) -> "SparseMatrix":
        """Sum (row, col, value) triples; repeated positions accumulate."""
        acc: Dict[Tuple[int, int], object] = {}
        for i, j, v in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatch(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            acc[i, j] = acc.get((i, j), 0) + v
        red = field.reduce
        data = {}
        for key, v in acc.items():
            v = red(v)
            if v:
                data[key] = v
        return cls(field, rows, cols, data)

    @classmethod
    def from_dense(cls, m: ExactMatrix) -> "SparseMatrix":
        data = {divmod(k, m.cols): v for k, v in enumerate(m.entries) if v} if m.cols else {}
        return cls(m.field, m.rows, m.cols, data)

    @classmethod
    def identity(cls, field: Field, n: int) -> "SparseMatrix":
        return cls(field, n, n, {(i, i): field.one for i in range(n)})

    def to_dense(self) -> ExactMatrix:
        entries = [self.field.zero] * (self.rows * self.cols)
        for (i, j), v in self.data.items():
            entries[i * self.cols + j] = v
        return ExactMatrix(self.field, self.rows, self.cols, tuple(entries))

    def __getitem__(self, index: Tuple[int, int]):
        return self.data.get(tuple(index), self.field.zero)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self.data)

    def first_difference(self, other: "AnyMatrix") -> Optional[Tuple[int, int]]:
        """First (row, col) in row-major order where the two matrices disagree."""
        other = as_sparse(other)
        _check_same_shape(self, other)
        differing = [key for key in self.data.keys() | other.data.keys()
                     if self.data.get(key) != other.data.get(key)]
        return min(differing) if differing else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, (SparseMatrix, ExactMatrix)):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.first_difference(other) is None

    __hash__ = None

    def with_entry(self, i: int, j: int, value) -> "SparseMatrix":
        data = dict(self.data)
        value = self.field.coerce(value)
        if value:
            data[i, j] = value
        else:
            data.pop((i, j), None)
        return SparseMatrix(self.field, self.rows, self.cols, data)

    def __matmul__(self, other: "AnyMatrix") -> "SparseMatrix":
        return sparse_matmul(self, other)

    def __rmatmul__(self, other: ExactMatrix) -> "SparseMatrix":
        return sparse_matmul(other, self)


AnyMatrix = Union[ExactMatrix, SparseMatrix]


def as_sparse(m: AnyMatrix) -> SparseMatrix:
    return m if isinstance(m, SparseMatrix) else SparseMatrix.from_dense(m)


def sparse_matmul(a: AnyMatrix, b: AnyMatrix) -> SparseMatrix:
    """Product over the nonzero entries only."""
    a, b = as_sparse(a), as_sparse(b)
    _check_same_field(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    b_rows: Dict[int, List[Tuple[int, object]]] = {}
    for (k, j), v in b.data.items():
        b_rows.setdefault(k, []).append((j, v))
    return SparseMatrix.from_entries(
        a.field, a.rows, b.cols,
        ((i, j, x * v) for (i, k), x in a.data.items() for j, v in b_rows.get(k, ())),
    )


def sparse_compose(*maps: AnyMatrix) -> SparseMatrix:
    """sparse_compose(f, g, h) = f·g·h (rightmost applied first)."""
    return reduce(sparse_matmul, maps)


def sparse_kron(*factors: AnyMatrix) -> SparseMatrix:
    """Kronecker product of any number of factors, in the i-major tensor basis."""

    def pair(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
        _check_same_field(a, b)
        red = a.field.reduce
        data = {
            (i * b.rows + k, j * b.cols + l): red(x * y)
            for (i, j), x in a.data.items()
            for (k, l), y in b.data.items()
        }
        return SparseMatrix(a.field, a.rows * b.rows, a.cols * b.cols, data)

    return reduce(pair, (as_sparse(f) for f in factors))


def sparse_identity(field: Field, n: int) -> SparseMatrix:
    return SparseMatrix.identity(field, n)


# results that are values, not faults

@dataclass(frozen=True)
class NotInvertible:
    """try_inverse failed; carries the rank of the matrix."""

    rank: int
    rows: int
    cols: int


@dataclass(frozen=True)
class NoSolution:
    """solve_affine found the system inconsistent."""

    rank: int
    augmented_rank: int


@dataclass(frozen=True)
class AffineSolution:
    """Particular solution (free variables 0) plus a kernel basis."""

    particular: ExactMatrix
    kernel: Tuple[ExactMatrix, ...]

    @property
    def is_unique(self) -> bool:
        return not self.kernel


def _check_same_field(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"cannot combine a matrix over {a.field.label} with one over {b.field.label}")


def _check_same_shape(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape {a.shape} does not match {b.shape}")


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact product a·b. Zero entries are skipped, so Kronecker-built operands stay cheap."""
    _check_same_field(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    field = a.field
    red = field.reduce
    b_rows = [
        [(j, v) for j, v in enumerate(b.entries[k * b.cols:(k + 1) * b.cols]) if v]
        for k in range(b.rows)
    ]
    out = [field.zero] * (a.rows * b.cols)
    for i in range(a.rows):
        acc = {}
        a_row = a.entries[i * a.cols:(i + 1) * a.cols]
        for k, aik in enumerate(a_row):
            if not aik:
                continue
            for j, v in b_rows[k]:
                acc[j] = acc.get(j, 0) + aik * v
        base = i * b.cols
        for j, v in acc.items():
            out[base + j] = red(v)
    return ExactMatrix(field, a.rows, b.cols, tuple(out))


def compose(*maps: ExactMatrix) -> ExactMatrix:
    """compose(f, g, h) = f·g·h (rightmost applied first)."""
    return reduce(matmul, maps)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product; the matrix of a (x) b in the i-major tensor basis."""
    _check_same_field(a, b)
    field = a.field
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = [field.zero] * (rows * cols)
    b_nonzero = [(k, l, v) for k in range(b.rows) for l in range(b.cols) if (v := b.entries[k * b.cols + l])]
    red = field.reduce
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.entries[i * a.cols + j]
            if not x:
                continue
            for k, l, v in b_nonzero:
                out[(i * b.rows + k) * cols + j * b.cols + l] = red(x * v)
    return ExactMatrix(field, rows, cols, tuple(out))


def kron_all(*factors: ExactMatrix) -> ExactMatrix:
    return reduce(kron, factors)


def identity(field: Field, n: int) -> ExactMatrix:
    return ExactMatrix.identity(field, n)


def flip(field: Field, p: int, q: int) -> ExactMatrix:
    """The symmetry V (x) W -> W (x) V for dim V = p, dim W = q."""
    zero, one = field.zero, field.one
    out = [zero] * (p * q * p * q)
    n = p * q
    for i in range(p):
        for j in range(q):
            out[(j * p + i) * n + i * q + j] = one
    return ExactMatrix(field, n, n, tuple(out))


def hstack(*blocks: ExactMatrix) -> ExactMatrix:
    first = blocks[0]
    for blk in blocks[1:]:
        _check_same_field(first, blk)
        if blk.rows != first.rows:
            raise DimensionMismatch(f"hstack needs equal row counts, got {first.rows} and {blk.rows}")
    cols = sum(blk.cols for blk in blocks)
    entries = tuple(v for i in range(first.rows) for blk in blocks for v in blk.row(i))
    return ExactMatrix(first.field, first.rows, cols, entries)


def vstack(*blocks: ExactMatrix) -> ExactMatrix:
    first = blocks[0]
    for blk in blocks[1:]:
        _check_same_field(first, blk)
        if blk.cols != first.cols:
            raise DimensionMismatch(f"vstack needs equal column counts, got {first.cols} and {blk.cols}")
    return ExactMatrix(first.field, sum(blk.rows for blk in blocks), first.cols,
                       tuple(v for blk in blocks for v in blk.entries))


def _integer_rows(m: ExactMatrix) -> List[List[int]]:
    """Scale each rational row to a primitive integer row (same row space)."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        denom = reduce(lcm, (x.denominator for x in row), 1)
        ints = [int(x * denom) for x in row]
        g = reduce(gcd, ints, 0)
        out.append([x // g for x in ints] if g > 1 else ints)
    return out


def rref(m: ExactMatrix) -> Tuple[ExactMatrix, Tuple[int, ...]]:
    """
    Reduced row echelon form with leftmost-first pivoting.

    Over Q the elimination is fraction-free on primitive integer rows and
    only the final normalization divides by pivots.

    Returns:
        (reduced matrix, pivot columns)
    """
    field = m.field
    nrows, ncols = m.rows, m.cols
    pivots: List[int] = []
    if field.characteristic == 0:
        rows = _integer_rows(m)
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            found = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
            if found is None:
                continue
            rows[r], rows[found] = rows[found], rows[r]
            prow = rows[r]
            pv = prow[c]
            for i in range(nrows):
                f = rows[i][c]
                if i == r or f == 0:
                    continue
                new = [pv * x - f * y for x, y in zip(rows[i], prow)]
                g = reduce(gcd, new, 0)
                rows[i] = [x // g for x in new] if g > 1 else new
            pivots.append(c)
            r += 1
        out = []
        for i, row in enumerate(rows):
            if i < len(pivots):
                pv = row[pivots[i]]
                out.extend(Fraction(x, pv) for x in row)
            else:
                out.extend(Fraction(0) for _ in row)
        return ExactMatrix(field, nrows, ncols, tuple(out)), tuple(pivots)

    p = field.characteristic
    rows = [list(m.row(i)) for i in range(nrows)]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        found = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if found is None:
            continue
        rows[r], rows[found] = rows[found], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            f = rows[i][c]
            if i == r or f == 0:
                continue
            rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return ExactMatrix(field, nrows, ncols, tuple(v for row in rows for v in row)), tuple(pivots)


def rank(m: ExactMatrix) -> int:
    return len(rref(m)[1])


def _kernel_from_rref(reduced: ExactMatrix, pivots: Sequence[int], ncols: int) -> Tuple[ExactMatrix, ...]:
    field = reduced.field
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [field.zero] * ncols
        vec[free] = field.one
        for r, pc in enumerate(pivots):
            vec[pc] = field.reduce(-reduced[r, free])
        basis.append(ExactMatrix(field, ncols, 1, tuple(vec)))
    return tuple(basis)


def kernel_basis(m: ExactMatrix) -> List[ExactMatrix]:
    """Exact null-space basis, one column per free variable in increasing order."""
    reduced, pivots = rref(m)
    return list(_kernel_from_rref(reduced, pivots, m.cols))


def try_inverse(m: ExactMatrix) -> Union[ExactMatrix, NotInvertible]:
    """Two-sided inverse, or NotInvertible carrying the rank."""
    if not m.is_square:
        return NotInvertible(rank=rank(m), rows=m.rows, cols=m.cols)
    n = m.rows
    reduced, pivots = rref(hstack(m, ExactMatrix.identity(m.field, n)))
    if tuple(pivots) != tuple(range(n)):
        return NotInvertible(rank=rank(m), rows=n, cols=n)
    inverse = reduced.submatrix(range(n), range(n, 2 * n))
    if not (inverse @ m).is_identity() or not (m @ inverse).is_identity():
        raise InconsistencyError("computed inverse does not invert its matrix")
    return inverse


def is_invertible(m: ExactMatrix) -> bool:
    return isinstance(try_inverse(m), ExactMatrix)


def solve_affine(a: ExactMatrix, b: Union[ExactMatrix, Sequence]) -> Union[AffineSolution, NoSolution]:
    """
    Solve a·x = b exactly.

    Returns:
        AffineSolution with the particular solution whose free variables are 0
        and a kernel basis of a, or NoSolution when inconsistent.
    """
    if not isinstance(b, ExactMatrix):
        b = ExactMatrix.column(a.field, list(b))
    if b.cols != 1 or b.rows != a.rows:
        raise DimensionMismatch(f"right-hand side must be a {a.rows}x1 column, got {b.rows}x{b.cols}")
    reduced, pivots = rref(hstack(a, b))
    if a.cols in pivots:
        return NoSolution(rank=len(pivots) - 1, augmented_rank=len(pivots))
    field = a.field
    x = [field.zero] * a.cols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r, a.cols]
    a_part = reduced.submatrix(range(reduced.rows), range(a.cols))
    kernel = _kernel_from_rref(a_part, pivots, a.cols)
    particular = ExactMatrix(field, a.cols, 1, tuple(x))
    if a @ particular != b:
        raise InconsistencyError("particular solution fails substitution")
    return AffineSolution(particular=particular, kernel=kernel)


def vectorize(fn: Callable[[ExactMatrix], ExactMatrix], field: Field, rows: int, cols: int) -> ExactMatrix:
    """
    Matrix of a linear map on rows x cols matrices.

    Column k is fn applied to the k-th row-major matrix unit, flattened.
    """
    columns = []
    for k in range(rows * cols):
        unit = ExactMatrix(field, rows, cols, tuple(field.one if t == k else field.zero for t in range(rows * cols)))
        columns.append(fn(unit).flatten())
    logger.debug("vectorized linear map with %d unknowns", rows * cols)
    return hstack(*columns)


def matrix_to_wire(m: ExactMatrix) -> List[List[Union[str, int]]]:
    """Rows of "num/den" strings over Q, decimal residues over F_p."""
    fmt = m.field.format
    return [[fmt(v) for v in m.row(i)] for i in range(m.rows)]


def matrix_from_wire(field: Field, rows: Sequence[Sequence[Union[str, int]]], cols: Optional[int] = None) -> ExactMatrix:
    return ExactMatrix.from_rows(field, rows, cols)
