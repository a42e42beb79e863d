"""
Bialgebra service.
Structure-constant bialgebras, comonoids and grouplike elements, with axiom
validation and the built-in group and monoid algebra generators.
"""
import itertools
import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from hopfkit.config import settings
from hopfkit.errors import DimensionMismatch, InconsistencyError, InputError
from hopfkit.exact import AnyMatrix, ExactMatrix, Field, compose, flip, identity, kron, kron_all
from hopfkit.models import AxiomCheck, AxiomReport, BialgebraDocument, ComonoidDocument

logger = logging.getLogger(__name__)


def basis_tuple(index: int, dims: Sequence[int]) -> Tuple[int, ...]:
    """Decode a tensor-basis index into one index per factor (first factor major)."""
    out = []
    for d in reversed(dims):
        index, r = divmod(index, d)
        out.append(r)
    return tuple(reversed(out))


def compare_maps(
    name: str,
    lhs: AnyMatrix,
    rhs: AnyMatrix,
    in_dims: Sequence[int] = (),
    labels: Optional[Sequence[str]] = None,
) -> AxiomCheck:
    """
    Check lhs == rhs and, on failure, name the first offending input basis tuple.

    Args:
        name: Axiom name
        lhs: Left side of the identity
        rhs: Right side of the identity
        in_dims: Tensor factors of the common domain, for witness decoding
        labels: Optional basis labels applied to every factor of the same dim
    """
    diff = lhs.first_difference(rhs)
    if diff is None:
        return AxiomCheck(name=name, passed=True)
    row, col = diff
    if in_dims:
        parts = basis_tuple(col, in_dims)
        if labels is not None:
            parts = tuple(labels[p] if d == len(labels) else str(p) for p, d in zip(parts, in_dims))
        at = "(" + ", ".join(str(p) for p in parts) + ")"
    else:
        at = str(col)
    fmt = lhs.field.format
    return AxiomCheck(
        name=name,
        passed=False,
        witness=f"input basis {at}, output row {row}: {fmt(lhs[row, col])} != {fmt(rhs[row, col])}",
    )


@dataclass(frozen=True)
class Comonoid:
    """A comonoid (C, delta, epsilon) in vector spaces."""

    dim: int
    comult: ExactMatrix
    counit: ExactMatrix
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim <= 0:
            raise InputError(f"comonoid dimension must be positive, got {self.dim}")
        if self.comult.shape != (self.dim * self.dim, self.dim):
            raise DimensionMismatch(f"comult must be {self.dim ** 2}x{self.dim}, got {self.comult.shape}")
        if self.counit.shape != (1, self.dim):
            raise DimensionMismatch(f"counit must be 1x{self.dim}, got {self.counit.shape}")
        if self.comult.field != self.counit.field:
            raise InputError("comonoid matrices live over different fields")

    @property
    def field(self) -> Field:
        return self.comult.field


@dataclass(frozen=True)
class Bialgebra:
    """
    A bialgebra (A, m, e, delta, epsilon) given by structure matrices.

    mult is dim x dim^2, unit dim x 1, comult dim^2 x dim, counit 1 x dim.
    """

    dim: int
    mult: ExactMatrix
    unit: ExactMatrix
    comult: ExactMatrix
    counit: ExactMatrix
    labels: Tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        n = self.dim
        if n <= 0:
            raise InputError(f"bialgebra dimension must be positive, got {n}")
        expected = {
            "mult": (self.mult, (n, n * n)),
            "unit": (self.unit, (n, 1)),
            "comult": (self.comult, (n * n, n)),
            "counit": (self.counit, (1, n)),
        }
        for key, (m, shape) in expected.items():
            if m.shape != shape:
                raise DimensionMismatch(f"{key} must be {shape[0]}x{shape[1]}, got {m.rows}x{m.cols}")
            if m.field != self.mult.field:
                raise InputError(f"{key} lives over {m.field.label}, mult over {self.mult.field.label}")
        if self.labels and len(self.labels) != n:
            raise InputError(f"{len(self.labels)} labels given for a {n}-dimensional bialgebra")

    @property
    def field(self) -> Field:
        return self.mult.field

    def identity(self, *dims: int) -> ExactMatrix:
        size = 1
        for d in dims:
            size *= d
        return identity(self.field, size)

    def comonoid(self) -> Comonoid:
        """The underlying coalgebra of A."""
        return Comonoid(self.dim, self.comult, self.counit, self.labels)


@dataclass(frozen=True)
class GrouplikeElement:
    """A vector g in a comonoid with delta(g) = g (x) g and epsilon(g) = 1."""

    host: Comonoid
    vector: ExactMatrix


def validate_comonoid(c: Comonoid) -> AxiomReport:
    """Coassociativity and counitality."""
    n, D, eps = c.dim, c.comult, c.counit
    I = identity(c.field, n)
    labels = c.labels or None
    report = AxiomReport(subject="comonoid")
    report.checks.append(compare_maps(
        "coassociativity", kron(D, I) @ D, kron(I, D) @ D, (n,), labels,
    ))
    left = kron(eps, I) @ D
    right = kron(I, eps) @ D
    counit = compare_maps("counitality", left, I, (n,), labels)
    if counit.passed:
        counit = compare_maps("counitality", right, I, (n,), labels)
    report.checks.append(counit)
    return report


def validate_bialgebra(b: Bialgebra) -> AxiomReport:
    """
    Check the nine bialgebra axioms.

    The ninth is the symmetry of the flip braiding on A (x) A, the one
    braiding hopfkit supports.

    Returns:
        AxiomReport with one entry per axiom; failures carry the first
        offending basis tuple.
    """
    n, M, u, D, eps = b.dim, b.mult, b.unit, b.comult, b.counit
    fld = b.field
    I = identity(fld, n)
    labels = b.labels or None
    one = identity(fld, 1)
    report = AxiomReport(subject=b.name or "bialgebra")
    checks = report.checks

    checks.append(compare_maps("associativity", M @ kron(M, I), M @ kron(I, M), (n, n, n), labels))
    unitality = compare_maps("unitality", M @ kron(u, I), I, (n,), labels)
    if unitality.passed:
        unitality = compare_maps("unitality", M @ kron(I, u), I, (n,), labels)
    checks.append(unitality)
    checks.extend(validate_comonoid(b.comonoid()).checks)

    middle = kron_all(I, flip(fld, n, n), I)
    checks.append(compare_maps(
        "comult_multiplicative", D @ M, compose(kron(M, M), middle, kron(D, D)), (n, n), labels,
    ))
    checks.append(compare_maps("counit_multiplicative", eps @ M, kron(eps, eps), (n, n), labels))
    checks.append(compare_maps("comult_unital", D @ u, kron(u, u), (1,)))
    checks.append(compare_maps("counit_unital", eps @ u, one, (1,)))
    checks.append(compare_maps(
        "flip_symmetric", flip(fld, n, n) @ flip(fld, n, n), identity(fld, n * n), (n, n), labels,
    ))

    logger.debug("validated %s: %d/%d axioms pass",
                 report.subject, sum(c.passed for c in checks), len(checks))
    return report


def validate_grouplike(c: Comonoid, v: ExactMatrix) -> bool:
    """True iff delta(v) = v (x) v and epsilon(v) = 1."""
    if v.shape != (c.dim, 1):
        raise DimensionMismatch(f"grouplike candidate must be {c.dim}x1, got {v.rows}x{v.cols}")
    return c.comult @ v == kron(v, v) and (c.counit @ v).is_identity()


def make_grouplike(c: Comonoid, v: ExactMatrix) -> GrouplikeElement:
    if not validate_grouplike(c, v):
        raise InputError("vector is not grouplike in the given comonoid")
    return GrouplikeElement(host=c, vector=v)


def tensor_comonoid(b: Bialgebra, c: Comonoid) -> Comonoid:
    """The comonoid T(C) = A (x) C with (A (x) flip (x) C)(delta_A (x) delta_C) and eps_A (x) eps_C."""
    n = b.dim
    comult = kron_all(identity(b.field, n), flip(b.field, n, c.dim), identity(b.field, c.dim)) @ kron(b.comult, c.comult)
    tc = Comonoid(n * c.dim, comult, kron(b.counit, c.counit))
    report = validate_comonoid(tc)
    if not report.passed:
        raise InconsistencyError(f"T(C) is not a comonoid: {report.failures()[0].witness}")
    return tc


def lift_grouplike(b: Bialgebra, c: Comonoid, g: GrouplikeElement) -> GrouplikeElement:
    """
    Lift g: I -> C to g_bar = e (x) g: I -> T(C).

    Returns:
        GrouplikeElement whose host is the comonoid T(C)
    """
    tc = tensor_comonoid(b, c)
    lifted = kron(b.unit, g.vector)
    if not validate_grouplike(tc, lifted):
        raise InconsistencyError("lifted grouplike element fails the grouplike check in T(C)")
    return GrouplikeElement(host=tc, vector=lifted)


def is_commutative(b: Bialgebra) -> bool:
    return b.mult @ flip(b.field, b.dim, b.dim) == b.mult


def is_cocommutative(b: Bialgebra) -> bool:
    return flip(b.field, b.dim, b.dim) @ b.comult == b.comult


# Comonoids

def trivial_comonoid(field: Field) -> Comonoid:
    one = identity(field, 1)
    return Comonoid(1, one, one, ("1",))


def set_comonoid(field: Field, n: int, labels: Sequence[str] = ()) -> Comonoid:
    """The comonoid with n grouplike basis vectors."""
    comult = ExactMatrix.from_function(field, n * n, n, lambda r, k: 1 if r == k * n + k else 0)
    counit = ExactMatrix.from_rows(field, [[1] * n])
    return Comonoid(n, comult, counit, tuple(labels))


def unit_grouplike(c: Comonoid, index: int = 0) -> GrouplikeElement:
    """The basis vector e_index as a grouplike element."""
    return make_grouplike(c, ExactMatrix.basis_vector(c.field, c.dim, index))


def grouplike_basis(c: Comonoid) -> List[int]:
    """Indices i whose basis vector e_i is grouplike."""
    return [i for i in range(c.dim) if validate_grouplike(c, ExactMatrix.basis_vector(c.field, c.dim, i))]


# Generators

def monoid_algebra(table: Sequence[Sequence[int]], field: Field, labels: Sequence[str] = (), name: str = "") -> Bialgebra:
    """
    The monoid algebra k[G] with every basis element grouplike.

    Args:
        table: table[i][j] is the index of the product of elements i and j
        field: Ground field
        labels: Optional element names
        name: Name used in reports
    """
    n = len(table)
    if any(len(row) != n for row in table):
        raise InputError("monoid table must be square")
    identities = [e for e in range(n) if all(table[e][j] == j and table[j][e] == j for j in range(n))]
    if not identities:
        raise InputError("monoid table has no identity element")
    for i, j, k in itertools.product(range(n), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            raise InputError(f"monoid table is not associative at ({i}, {j}, {k})")
    mult = ExactMatrix.from_function(field, n, n * n, lambda k, c: 1 if table[c // n][c % n] == k else 0)
    unit = ExactMatrix.basis_vector(field, n, identities[0])
    c = set_comonoid(field, n)
    return Bialgebra(n, mult, unit, c.comult, c.counit, tuple(labels), name)


def group_algebra(table: Sequence[Sequence[int]], field: Field, labels: Sequence[str] = (), name: str = "") -> Bialgebra:
    inverse_table(table)
    return monoid_algebra(table, field, labels, name)


def trivial_bialgebra(field: Field) -> Bialgebra:
    return monoid_algebra([[0]], field, ("1",), "trivial")


def identity_element(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    return next(e for e in range(n) if all(table[e][j] == j for j in range(n)))


def inverse_table(table: Sequence[Sequence[int]]) -> List[int]:
    """inv[i] is the index of the inverse of element i."""
    e = identity_element(table)
    inv = []
    for i in range(len(table)):
        found = [j for j in range(len(table)) if table[i][j] == e and table[j][i] == e]
        if not found:
            raise InputError(f"element {i} has no inverse; table is not a group")
        inv.append(found[0])
    return inv


def cyclic_group_table(n: int) -> List[List[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def product_table(t1: Sequence[Sequence[int]], t2: Sequence[Sequence[int]]) -> List[List[int]]:
    """Direct product; element (i, j) has index i * len(t2) + j."""
    n2 = len(t2)
    size = len(t1) * n2
    return [
        [t1[a // n2][b // n2] * n2 + t2[a % n2][b % n2] for b in range(size)]
        for a in range(size)
    ]


def symmetric_group_table(k: int = 3) -> Tuple[List[List[int]], List[str]]:
    """Permutations of range(k) in lexicographic order; product is composition (p * q)(x) = p(q(x))."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    labels = ["".join(str(x) for x in p) for p in perms]
    return table, labels


def chain_monoid_table(n: int) -> List[List[int]]:
    """The commutative idempotent monoid {0 > 1 > ... > n-1} under meet; 0 is the identity."""
    return [[max(i, j) for j in range(n)] for i in range(n)]


# Documents

def _check_cube(constants, n: int, what: str):
    if len(constants) != n or any(len(r) != n or any(len(s) != n for s in r) for r in constants):
        raise InputError(f"{what} must be a {n}x{n}x{n} array of structure constants")


def bialgebra_from_document(doc: BialgebraDocument, field: Field) -> Bialgebra:
    """Build a Bialgebra from its structure constants."""
    n = doc.dim
    _check_cube(doc.mult, n, "mult")
    _check_cube(doc.comult, n, "comult")
    if len(doc.unit) != n or len(doc.counit) != n:
        raise InputError(f"unit and counit must have {n} entries")
    mult = ExactMatrix.from_function(field, n, n * n, lambda k, c: doc.mult[c // n][c % n][k])
    comult = ExactMatrix.from_function(field, n * n, n, lambda r, k: doc.comult[r // n][r % n][k])
    unit = ExactMatrix.column(field, doc.unit)
    counit = ExactMatrix.from_rows(field, [doc.counit])
    return Bialgebra(n, mult, unit, comult, counit, tuple(doc.labels or ()), doc.name or "")


def comonoid_from_document(doc: ComonoidDocument, field: Field) -> Tuple[Comonoid, Optional[GrouplikeElement]]:
    n = doc.dim
    _check_cube(doc.comult, n, "comonoid comult")
    if len(doc.counit) != n:
        raise InputError(f"comonoid counit must have {n} entries")
    comult = ExactMatrix.from_function(field, n * n, n, lambda r, k: doc.comult[r // n][r % n][k])
    c = Comonoid(n, comult, ExactMatrix.from_rows(field, [doc.counit]), tuple(doc.labels or ()))
    g = None
    if doc.grouplike is not None:
        if len(doc.grouplike) != n:
            raise InputError(f"grouplike must have {n} entries")
        g = make_grouplike(c, ExactMatrix.column(field, doc.grouplike))
    return c, g


def bialgebra_to_document(b: Bialgebra) -> BialgebraDocument:
    """Inverse of bialgebra_from_document; used to write corpus files."""
    n = b.dim
    fmt = b.field.format
    field_label = "Q" if b.field.characteristic == 0 else {"Fp": b.field.characteristic}
    return BialgebraDocument(
        name=b.name or None,
        field=field_label,
        dim=n,
        mult=[[[fmt(b.mult[k, i * n + j]) for k in range(n)] for j in range(n)] for i in range(n)],
        unit=[fmt(v) for v in b.unit.entries],
        comult=[[[fmt(b.comult[i * n + j, k]) for k in range(n)] for j in range(n)] for i in range(n)],
        counit=[fmt(v) for v in b.counit.entries],
        labels=list(b.labels) or None,
    )


class BialgebraService:
    """Builds and validates bialgebras and comonoids over one ground field."""

    def __init__(self, field: Field):
        self.field = field

    def load(self, doc: BialgebraDocument, name: str = "") -> Bialgebra:
        """
        Bialgebra from a document, named after the input when the document has no name.

        Raises:
            InputError: if the dimension exceeds MAX_BIALGEBRA_DIM
        """
        if doc.dim > settings.MAX_BIALGEBRA_DIM:
            raise InputError(f"bialgebra dimension {doc.dim} exceeds MAX_BIALGEBRA_DIM={settings.MAX_BIALGEBRA_DIM}")
        b = bialgebra_from_document(doc, self.field)
        if not b.name and name:
            b = replace(b, name=name)
        return b

    def comonoid(self, doc: ComonoidDocument) -> Tuple[Comonoid, Optional[GrouplikeElement]]:
        return comonoid_from_document(doc, self.field)

    def validate(self, b: Bialgebra) -> AxiomReport:
        return validate_bialgebra(b)

    def validate_comonoid(self, c: Comonoid) -> AxiomReport:
        return validate_comonoid(c)

    def trivial(self) -> Tuple[Comonoid, GrouplikeElement]:
        """C = I with its unit point."""
        c = trivial_comonoid(self.field)
        return c, unit_grouplike(c)

    def pointed_comonoids(self, doc: BialgebraDocument) -> List[Tuple[str, Comonoid, GrouplikeElement]]:
        """(name, C, g): C = I, then the document's comonoid when it has a point."""
        c, g = self.trivial()
        pairs = [("I", c, g)]
        if doc.comonoid is not None:
            c, g = self.comonoid(doc.comonoid)
            if g is not None:
                pairs.append((f"C{c.dim}", c, g))
        return pairs

    def set_comonoid(self, n: int) -> Comonoid:
        return set_comonoid(self.field, n)
