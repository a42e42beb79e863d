"""
Tests for the exact linear algebra substrate.
"""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hopfkit.errors import DimensionMismatch, FieldMismatch, InputError
from hopfkit.exact import (
    QQ,
    AffineSolution,
    ExactMatrix,
    NoSolution,
    NotInvertible,
    PrimeField,
    SparseMatrix,
    field_from_label,
    flip,
    hstack,
    identity,
    kernel_basis,
    kron,
    matrix_from_wire,
    matrix_to_wire,
    rank,
    rref,
    solve_affine,
    sparse_compose,
    sparse_identity,
    sparse_kron,
    try_inverse,
    vectorize,
    vstack,
)

entries = st.integers(min_value=-3, max_value=3)


@st.composite
def rational_matrix(draw, rows=None, cols=None):
    r = draw(st.integers(1, 4)) if rows is None else rows
    c = draw(st.integers(1, 4)) if cols is None else cols
    values = draw(st.lists(entries, min_size=r * c, max_size=r * c))
    return ExactMatrix(QQ, r, c, tuple(Fraction(v) for v in values))


@st.composite
def square_matrix(draw):
    n = draw(st.integers(1, 4))
    return draw(rational_matrix(n, n))


@st.composite
def kron_quadruple(draw):
    p, q, r = (draw(st.integers(1, 3)) for _ in range(3))
    s, t, u = (draw(st.integers(1, 3)) for _ in range(3))
    return (draw(rational_matrix(p, q)), draw(rational_matrix(q, r)),
            draw(rational_matrix(s, t)), draw(rational_matrix(t, u)))


class TestFields:
    """Field parsing and scalar coercion."""

    def test_labels(self):
        assert field_from_label("Q") is QQ
        assert field_from_label("Fp:3") == PrimeField(3)
        assert field_from_label({"Fp": 5}).label == "Fp:5"

    def test_composite_modulus_rejected(self):
        with pytest.raises(InputError):
            PrimeField(4)

    def test_large_prime_moduli(self):
        assert PrimeField(2**61 - 1).label == f"Fp:{2**61 - 1}"
        with pytest.raises(InputError, match="prime"):
            PrimeField(2**61 + 1)

    def test_unknown_label_rejected(self):
        with pytest.raises(InputError):
            field_from_label("R")

    def test_fraction_reduces_mod_p(self, f3):
        assert f3.coerce("1/2") == 2
        with pytest.raises(InputError):
            f3.coerce(Fraction(1, 3))

    def test_floats_are_not_exact(self):
        with pytest.raises(InputError):
            QQ.coerce(0.5)


class TestProducts:
    """Matrix products, Kronecker products and the symmetry."""

    @settings(max_examples=40, deadline=None)
    @given(kron_quadruple())
    def test_kron_mixed_product(self, quad):
        """(A (x) B)(C (x) D) = AC (x) BD."""
        a, c, b, d = quad
        assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)

    def test_flip_swaps_factors(self):
        v = ExactMatrix.column(QQ, [1, 2])
        w = ExactMatrix.column(QQ, [3, 5, 7])
        assert flip(QQ, 2, 3) @ kron(v, w) == kron(w, v)

    def test_flip_inverts_the_opposite_flip(self):
        assert flip(QQ, 3, 2) @ flip(QQ, 2, 3) == identity(QQ, 6)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            identity(QQ, 2) @ identity(QQ, 3)

    def test_field_mismatch(self, f2):
        with pytest.raises(FieldMismatch):
            identity(QQ, 2) @ identity(f2, 2)

    def test_arithmetic_mod_p(self, f2):
        m = ExactMatrix.from_rows(f2, [[1, 1], [0, 1]])
        assert (m @ m).is_identity()
        assert (m + m).is_zero()

    def test_stacking(self):
        a = ExactMatrix.from_rows(QQ, [[1, 2]])
        b = ExactMatrix.from_rows(QQ, [[3, 4]])
        assert vstack(a, b) == ExactMatrix.from_rows(QQ, [[1, 2], [3, 4]])
        assert hstack(a, b) == ExactMatrix.from_rows(QQ, [[1, 2, 3, 4]])


class TestSparse:
    """Sparse products agree with the dense ones entry for entry."""

    @settings(max_examples=40, deadline=None)
    @given(kron_quadruple())
    def test_products_match_dense(self, quad):
        a, c, b, d = quad
        assert sparse_kron(a, b).to_dense() == kron(a, b)
        assert sparse_compose(kron(a, b), kron(c, d)).to_dense() == kron(a, b) @ kron(c, d)

    def test_zero_sums_are_dropped(self):
        m = SparseMatrix.from_entries(QQ, 2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, Fraction(1, 2))])
        assert m.nnz == 1
        assert m[1, 1] == Fraction(1, 2) and m[0, 0] == 0

    def test_entries_mod_p(self, f3):
        m = SparseMatrix.from_entries(f3, 1, 2, [(0, 0, 2), (0, 0, 1), (0, 1, 5)])
        assert m.data == {(0, 1): 2}

    def test_comparison_with_dense(self):
        dense = ExactMatrix.from_rows(QQ, [[0, 1], [2, 0]])
        sparse = SparseMatrix.from_dense(dense)
        assert sparse == dense
        assert sparse.with_entry(1, 1, 3).first_difference(dense) == (1, 1)
        assert sparse.with_entry(0, 1, 0).nnz == 1

    def test_identity_is_neutral(self):
        m = SparseMatrix.from_dense(ExactMatrix.from_rows(QQ, [[1, 2, 3], [0, 0, 4]]))
        assert sparse_identity(QQ, 2) @ m == m
        assert m @ identity(QQ, 3) == m

    def test_out_of_range_entry(self):
        with pytest.raises(DimensionMismatch):
            SparseMatrix.from_entries(QQ, 2, 2, [(2, 0, 1)])


class TestElimination:
    """rref, rank, kernels, inverses and affine solves."""

    @settings(max_examples=60, deadline=None)
    @given(rational_matrix())
    def test_rank_matches_sympy(self, m):
        assert rank(m) == sympy.Matrix([[int(x) for x in row] for row in m.to_rows()]).rank()

    @settings(max_examples=60, deadline=None)
    @given(rational_matrix())
    def test_kernel_vectors_are_killed(self, m):
        basis = kernel_basis(m)
        assert len(basis) == m.cols - rank(m)
        for v in basis:
            assert (m @ v).is_zero()

    @settings(max_examples=60, deadline=None)
    @given(square_matrix())
    def test_inverse_or_rank_deficiency(self, m):
        result = try_inverse(m)
        if rank(m) == m.rows:
            assert (result @ m).is_identity()
            assert (m @ result).is_identity()
        else:
            assert isinstance(result, NotInvertible)
            assert result.rank == rank(m)

    def test_rref_pivots(self):
        m = ExactMatrix.from_rows(QQ, [[2, 4, 1], [1, 2, 0]])
        reduced, pivots = rref(m)
        assert pivots == (0, 2)
        assert reduced == ExactMatrix.from_rows(QQ, [[1, 2, 0], [0, 0, 1]])

    def test_rank_over_f2_differs_from_q(self, f2):
        rows = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
        assert rank(ExactMatrix.from_rows(QQ, rows)) == 3
        assert rank(ExactMatrix.from_rows(f2, rows)) == 2

    def test_inconsistent_system(self):
        a = ExactMatrix.from_rows(QQ, [[1, 1], [1, 1]])
        result = solve_affine(a, [1, 2])
        assert isinstance(result, NoSolution)
        assert (result.rank, result.augmented_rank) == (1, 2)

    def test_underdetermined_system(self):
        a = ExactMatrix.from_rows(QQ, [[1, 1, 0]])
        result = solve_affine(a, [3])
        assert isinstance(result, AffineSolution)
        assert not result.is_unique
        assert len(result.kernel) == 2
        assert a @ result.particular == ExactMatrix.column(QQ, [3])

    def test_vectorize_transpose(self):
        t = vectorize(lambda x: x.transpose(), QQ, 2, 2)
        assert t == flip(QQ, 2, 2)


class TestWire:
    """Report encoding of matrices."""

    def test_rationals_as_strings(self):
        m = ExactMatrix.from_rows(QQ, [["1/2", 3], [0, "-2/3"]])
        wire = matrix_to_wire(m)
        assert wire == [["1/2", "3"], ["0", "-2/3"]]
        assert matrix_from_wire(QQ, wire) == m

    def test_residues_as_ints(self, f3):
        m = ExactMatrix.from_rows(f3, [[4, -1]])
        assert matrix_to_wire(m) == [[1, 2]]
