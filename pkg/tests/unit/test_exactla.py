"""Unit tests for exact integer linear algebra."""
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from app.core.errors import InputError
from app.services.exactla import (
    IntegerLattice,
    SparseIntMatrix,
    cokernel,
    cokernel_of_lattice,
    group_from_invariants,
    groups_isomorphic,
    lattice_membership,
    smith_normal_form,
)

small_matrices = st.integers(min_value=1, max_value=6).flatmap(
    lambda rows: st.integers(min_value=1, max_value=6).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


def _diag_matrix(diag, rows, cols):
    return SparseIntMatrix(rows, cols, {(i, i): d for i, d in enumerate(diag)})


@pytest.mark.unit
class TestSparseIntMatrix:
    """Test cases for SparseIntMatrix."""

    def test_zero_entries_not_stored(self):
        """Test that zero entries are dropped."""
        m = SparseIntMatrix(2, 2, {(0, 0): 0, (1, 1): 3})
        assert m.nnz == 1
        assert m.get(1, 1) == 3

    def test_dense_round_trip(self):
        """Test dense conversion."""
        data = [[1, 0, -2], [0, 5, 0]]
        assert SparseIntMatrix.from_dense(data).to_dense() == data

    def test_index_outside_shape(self):
        """Test that out-of-range entries are rejected."""
        with pytest.raises(InputError):
            SparseIntMatrix(2, 2, {(2, 0): 1})

    def test_matmul(self):
        """Test matrix product."""
        a = SparseIntMatrix.from_dense([[1, 2], [3, 4]])
        b = SparseIntMatrix.from_dense([[0, 1], [1, 0]])
        assert (a @ b).to_dense() == [[2, 1], [4, 3]]

    def test_transpose_and_columns(self):
        """Test transpose and column vectors."""
        m = SparseIntMatrix.from_dense([[1, 2], [0, 3]])
        assert m.transpose().to_dense() == [[1, 0], [2, 3]]
        assert m.column_vectors() == [{0: 1}, {0: 2, 1: 3}]


@pytest.mark.unit
class TestSmithNormalForm:
    """Test cases for smith_normal_form."""

    def test_diag_2_3(self):
        """Test diag(2,3) → (1,6)."""
        assert smith_normal_form(SparseIntMatrix.from_dense([[2, 0], [0, 3]])).diag == (1, 6)

    def test_zero_matrix(self):
        """Test zero 3×3 matrix → empty diagonal."""
        assert smith_normal_form(SparseIntMatrix(3, 3)).diag == ()

    def test_hand_reduced_example(self):
        """Test [[2,4],[6,8]] → (2,4)."""
        assert smith_normal_form(SparseIntMatrix.from_dense([[2, 4], [6, 8]])).diag == (2, 4)

    def test_empty_matrix(self):
        """Test the 0×0 matrix."""
        assert smith_normal_form(SparseIntMatrix(0, 0)).diag == ()

    @hsettings(max_examples=60, deadline=None)
    @given(small_matrices)
    def test_reconstruction_and_divisibility(self, data):
        """Test L·A·R = diag exactly and the divisibility chain."""
        a = SparseIntMatrix.from_dense(data)
        form = smith_normal_form(a, keep_transforms=True)
        assert form.left @ a @ form.right == _diag_matrix(form.diag, a.rows, a.cols)
        assert all(d > 0 for d in form.diag)
        assert all(form.diag[k + 1] % form.diag[k] == 0 for k in range(len(form.diag) - 1))


@pytest.mark.unit
class TestCokernel:
    """Test cases for cokernel and group comparison."""

    def test_single_column(self):
        """Test column (2) in Z¹ → Z/2."""
        group = cokernel(SparseIntMatrix.from_dense([[2]]))
        assert group.invariant_factors == {"free_rank": 0, "torsion": [2]}

    def test_identity(self):
        """Test identity 2×2 → trivial group."""
        assert cokernel(SparseIntMatrix.identity(2)).is_trivial()

    def test_free_plus_torsion(self):
        """Test columns {(2,0),(0,0)} in Z² → Z ⊕ Z/2."""
        group = cokernel(SparseIntMatrix.from_columns([{0: 2}, {}], 2))
        assert group.free_rank == 1
        assert group.torsion == (2,)
        assert group.describe() == "Z/2 + Z"

    def test_isomorphism_ignores_order(self):
        """Test Z/2 ⊕ Z vs Z ⊕ Z/2."""
        a = cokernel(SparseIntMatrix.from_columns([{0: 2}], 2))
        b = cokernel(SparseIntMatrix.from_columns([{1: 2}], 2))
        assert groups_isomorphic(a, b)

    def test_z4_not_klein(self):
        """Test Z/4 vs Z/2 ⊕ Z/2."""
        assert not groups_isomorphic(group_from_invariants(0, [4]), group_from_invariants(0, [2, 2]))

    def test_diag_2_3_is_cyclic_6(self):
        """Test cokernel of diag(2,3) vs Z/6."""
        assert groups_isomorphic(cokernel(SparseIntMatrix.from_dense([[2, 0], [0, 3]])), group_from_invariants(0, [6]))

    @hsettings(max_examples=40, deadline=None)
    @given(small_matrices)
    def test_invariant_under_permutation_and_zero_columns(self, data):
        """Test cokernel invariance under row reversal and an appended zero column."""
        base = cokernel(SparseIntMatrix.from_dense(data))
        permuted = [row + [0] for row in reversed(data)]
        assert groups_isomorphic(base, cokernel(SparseIntMatrix.from_dense(permuted)))

    def test_cokernel_of_lattice_matches_cokernel(self):
        """Test the lattice shortcut against the matrix route."""
        columns = [{0: 2, 1: 4}, {0: 6, 1: 8}, {2: 1}]
        lattice = IntegerLattice(3)
        lattice.extend(columns)
        assert groups_isomorphic(cokernel_of_lattice(lattice), cokernel(SparseIntMatrix.from_columns(columns, 3)))


@pytest.mark.unit
class TestIntegerLattice:
    """Test cases for the incremental Hermite basis."""

    def _assert_hermite(self, lattice):
        basis = lattice.basis()
        leads = {min(vec): vec[min(vec)] for vec in basis}
        for vec in basis:
            assert vec[min(vec)] > 0
            for c, x in vec.items():
                if c != min(vec) and c in leads:
                    assert 0 <= x < leads[c]

    def test_reduces_earlier_rows(self):
        """Test a new pivot clears its column in earlier basis vectors."""
        lattice = IntegerLattice(3)
        lattice.add({0: 1, 1: 7, 2: -5})
        lattice.add({1: 3, 2: 1})
        lattice.add({2: 4})
        self._assert_hermite(lattice)
        assert lattice.pivot_entries() == [1, 3, 4]
        assert lattice.contains({0: 1, 1: 7, 2: -5})

    def test_gcd_merge(self):
        """Test colliding pivots 4 and 6 merge to 2."""
        lattice = IntegerLattice(2)
        lattice.add({0: 4, 1: 1})
        lattice.add({0: 6, 1: 5})
        self._assert_hermite(lattice)
        assert lattice.pivot_entries()[0] == 2
        assert lattice.contains({0: 4, 1: 1})
        assert lattice.contains({0: 6, 1: 5})

    @hsettings(max_examples=60, deadline=None)
    @given(small_matrices)
    def test_matches_smith(self, data):
        """Test the Hermite basis spans the column lattice and has the Smith cokernel."""
        m = SparseIntMatrix.from_dense(data)
        lattice = IntegerLattice(m.rows)
        lattice.extend(m.column_vectors())
        self._assert_hermite(lattice)
        assert all(lattice.contains(col) for col in m.column_vectors())
        diag = smith_normal_form(m).diag
        group = cokernel_of_lattice(lattice)
        assert group.free_rank == m.rows - len(diag)
        assert group.torsion == tuple(d for d in diag if d > 1)

    def test_entries_stay_bounded(self):
        """Test a long chain of overlapping vectors keeps small coefficients."""
        dim = 60
        lattice = IntegerLattice(dim)
        for i in range(dim - 2):
            lattice.add({i: 2, i + 1: 3, i + 2: 1})
            lattice.add({i: 3, i + 1: 1, i + 2: 2})
        self._assert_hermite(lattice)
        assert lattice.max_entry() < 10**6

@pytest.mark.unit
class TestLatticeMembership:
    """Test cases for lattice_membership and IntegerLattice."""

    def test_member_with_certificate(self):
        """Test v=(4), m=(2) → true with certificate 2."""
        result = lattice_membership([4], SparseIntMatrix.from_dense([[2]]))
        assert result.member
        assert result.certificate == (2,)

    def test_non_member(self):
        """Test v=(1), m=(2) → false."""
        assert not lattice_membership([1], SparseIntMatrix.from_dense([[2]])).member

    def test_two_by_two(self):
        """Test v=(3,3) against columns (1,2),(2,1)."""
        m = SparseIntMatrix.from_columns([{0: 1, 1: 2}, {0: 2, 1: 1}], 2)
        result = lattice_membership([3, 3], m)
        assert result.member
        assert result.certificate == (1, 1)

    def test_dimension_mismatch(self):
        """Test that a wrong-length vector is an input error."""
        with pytest.raises(InputError):
            lattice_membership([1, 2], SparseIntMatrix.from_dense([[2]]))

    @hsettings(max_examples=40, deadline=None)
    @given(small_matrices, st.lists(st.integers(min_value=-5, max_value=5), min_size=6, max_size=6))
    def test_certificate_solves_system(self, data, coeffs):
        """Test m·certificate = v for vectors built inside the span."""
        m = SparseIntMatrix.from_dense(data)
        v = m.matvec(coeffs[: m.cols])
        result = lattice_membership(v, m)
        assert result.member
        assert m.matvec(list(result.certificate)) == v

    def test_incremental_lattice_gcd(self):
        """Test that colliding pivots combine to their gcd."""
        lattice = IntegerLattice(2)
        lattice.add({0: 4, 1: 1})
        lattice.add({0: 6})
        assert lattice.contains({0: 2, 1: 2})
        assert not lattice.contains({0: 1})
        assert lattice.rank == 2

    def test_lattice_rejects_out_of_range(self):
        """Test that coordinates beyond the dimension are rejected."""
        with pytest.raises(InputError):
            IntegerLattice(2).add({2: 1})
