"""Unit tests for F_p linear algebra and general-position chain complexes."""
import random

import pytest

from app.core.errors import GeneralPositionError, InputError, SamplingError
from app.services.gpcomplex.chains import (
    Chain,
    GPSpace,
    boundary,
    chain_product,
    contract,
    find_general_vector,
    generator_cycle,
    homotopy,
    include,
    random_cycle,
)
from app.services.gpcomplex.linear import (
    det_mod,
    extends_general_position,
    general_linear_group,
    gl_order,
    in_general_position,
    inverse_mod,
    rank_mod,
    standard_basis,
)
from app.services.gpcomplex.stilde import orbit_normalize


@pytest.mark.unit
class TestLinearAlgebra:
    """Test cases for dense F_p linear algebra."""

    def test_determinant(self):
        """Test determinants of small matrices given by columns."""
        assert det_mod(((1, 0), (0, 1)), 5) == 1
        assert det_mod(((0, 1), (1, 0)), 5) == 4
        assert det_mod(((1, 2), (2, 4)), 5) == 0

    def test_inverse(self):
        """Test the inverse is returned as rows."""
        assert inverse_mod(((1, 0), (1, 1)), 5) == ((1, 4), (0, 1))
        with pytest.raises(InputError):
            inverse_mod(((1, 2), (2, 4)), 5)

    def test_rank(self):
        """Test ranks, including the zero matrix."""
        assert rank_mod(((1, 2), (2, 4)), 5) == 1
        assert rank_mod(((0, 0),), 5) == 0
        assert rank_mod(standard_basis(3), 7) == 3

    @pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 2)])
    def test_general_linear_group(self, p, n):
        """Test the enumeration of GL_n(F_p) has the right size."""
        assert len(list(general_linear_group(p, n))) == gl_order(p, n)

    def test_gl_order(self):
        """Test |GL_2(F_7)| = 2016."""
        assert gl_order(7, 2) == 2016

    def test_general_position(self):
        """Test general position of vectors in F_3^2."""
        assert in_general_position([(1, 0), (0, 1), (1, 1)], 2, 3)
        assert not in_general_position([(1, 0), (0, 1), (2, 0)], 2, 3)
        assert in_general_position([], 2, 3)
        assert extends_general_position([(1, 0), (0, 1)], (1, 2), 2, 3)
        assert not extends_general_position([(1, 0), (0, 1)], (0, 2), 2, 3)


@pytest.mark.unit
class TestGPSpace:
    """Test cases for GPSpace."""

    def test_invalid_dimensions(self):
        """Test that V must be nonzero."""
        with pytest.raises(InputError):
            GPSpace(5, 0)

    def test_tuple_counts(self):
        """Test |X_2(F_5^1)| = 16 and |X_3(F_3^2)| = 8·6·4."""
        assert len(list(GPSpace(5, 1).tuples(2))) == 16
        assert len(list(GPSpace(3, 2).tuples(3))) == 192

    def test_check_tuple(self):
        """Test validation of tuples."""
        space = GPSpace(5, 2)
        assert space.check_tuple([(1, 0), (6, 1)]) == ((1, 0), (1, 1))
        with pytest.raises(GeneralPositionError) as exc:
            space.check_tuple([(1, 0), (2, 0)])
        assert exc.value.offending == ((1, 0), (2, 0))
        with pytest.raises(InputError):
            space.check_tuple([(1, 0, 0)])

    def test_relative_space(self):
        """Test that only the V part must be in general position."""
        space = GPSpace(5, 1, 1)
        assert space.is_general([(0, 1), (0, 2)])
        assert not space.is_general([(1, 0)])

    def test_random_tuple(self, rng):
        """Test random tuples are in general position."""
        space = GPSpace(7, 2)
        for _ in range(20):
            assert space.is_general(space.random_tuple(rng, 4))

    def test_random_tuple_impossible(self, rng):
        """Test F_3^3 has no 5-tuple in general position."""
        with pytest.raises(SamplingError):
            GPSpace(3, 3).random_tuple(rng, 5, attempts=20)


@pytest.mark.unit
class TestBoundary:
    """Test cases for the simplicial boundary."""

    def test_two_term_boundary(self):
        """Test d((e1),(e2)) = (e2) - (e1)."""
        space = GPSpace(5, 2)
        c = Chain.basis(space, [(1, 0), (0, 1)])
        expected = Chain.basis(space, [(0, 1)]) - Chain.basis(space, [(1, 0)])
        assert boundary(c) == expected

    def test_boundary_of_point(self):
        """Test length-0 chains have no boundary."""
        with pytest.raises(InputError):
            boundary(Chain.zero(GPSpace(5, 1), 0))

    @pytest.mark.parametrize("p,n,q", [(3, 2, 3), (3, 2, 4), (5, 1, 3)])
    def test_boundary_squared_exhaustive(self, p, n, q):
        """Test d∘d = 0 on every tuple of X_q(F_p^n)."""
        space = GPSpace(p, n)
        for t in space.tuples(q):
            assert boundary(boundary(Chain(space, q, ((t, 1),)))).is_zero()

    def test_boundary_squared_random(self, rng):
        """Test d∘d = 0 on 100 random 3-tuples of F_5^2."""
        space = GPSpace(5, 2)
        for _ in range(100):
            c = Chain.basis(space, space.random_tuple(rng, 3))
            assert boundary(boundary(c)).is_zero()

    def test_generator_cycle(self):
        """Test d(e1, e2, a1e1 + a2e2) is a cycle with three faces."""
        z = generator_cycle(5, [2, 3])
        assert z.length == 2
        assert len(z.terms) == 3
        assert boundary(z).is_zero()
        with pytest.raises(InputError):
            generator_cycle(5, [])

    def test_render(self):
        """Test chain rendering."""
        space = GPSpace(5, 1)
        c = Chain.basis(space, [(1,), (2,)]).scale(2)
        assert c.render() == "2·((1), (2))"
        assert Chain.zero(space, 1).render() == "0"


@pytest.mark.unit
class TestHomotopy:
    """Test cases for the partial homotopy."""

    def test_explicit_contraction(self):
        """Test z = (e2) - (e1), v = e1 + e2 over F_5^2."""
        space = GPSpace(5, 2)
        z = Chain.basis(space, [(0, 1)]) - Chain.basis(space, [(1, 0)])
        expected = Chain.basis(space, [(0, 1), (1, 1)]) - Chain.basis(space, [(1, 0), (1, 1)])
        assert homotopy(z, (1, 1)) == expected
        assert boundary(contract(z, (1, 1))) == z

    @pytest.mark.parametrize("p,n", [(5, 2), (7, 2), (5, 3)])
    def test_reconstruction(self, p, n):
        """Test z = d((-1)^q s_v z) on random cycles."""
        space = GPSpace(p, n)
        rng = random.Random(f"homotopy:{p}:{n}")
        rebuilt = 0
        for _ in range(100):
            z = random_cycle(space, rng.randint(1, n), rng, size=1)
            try:
                v = find_general_vector(z)
            except GeneralPositionError:
                continue
            assert boundary(contract(z, v)) == z
            rebuilt += 1
        assert rebuilt > 0

    def test_colinear_vector(self):
        """Test a vector colinear with a support vector is rejected."""
        z = generator_cycle(5, [2, 3])
        with pytest.raises(GeneralPositionError) as exc:
            homotopy(z, (2, 0))
        assert exc.value.offending in z.support()

    def test_wrong_length_vector(self):
        """Test a vector of the wrong dimension is rejected."""
        with pytest.raises(InputError):
            homotopy(generator_cycle(5, [2, 3]), (1, 1, 1))

    def test_find_general_vector(self):
        """Test the least general vector for [[2, 3]] over F_5."""
        z = generator_cycle(5, [2, 3])
        v = find_general_vector(z)
        assert z.space.is_general((v, (1, 0)))
        assert all(z.space.is_general(t + (v,)) for t in z.support())


@pytest.mark.unit
class TestInclusionAndProducts:
    """Test cases for include and chain_product."""

    def test_include_commutes_with_boundary(self, rng):
        """Test d∘incl = incl∘d."""
        plane = GPSpace(7, 2)
        for _ in range(10):
            c = Chain.basis(plane, plane.random_tuple(rng, 3))
            assert boundary(include(c, 1)) == include(boundary(c), 1)

    def test_include_limits(self):
        """Test the supported range of relative complexes."""
        with pytest.raises(InputError):
            include(generator_cycle(5, [2]), 2)
        with pytest.raises(InputError):
            include(generator_cycle(5, [2, 3, 4]), 1)

    def test_product_tuple(self):
        """Test (e1) ⊗ (2e1) = ((1,0), (0,2))."""
        x = Chain.basis(GPSpace(5, 1), [(1,)])
        y = Chain.basis(GPSpace(5, 1), [(2,)])
        assert chain_product(x, y) == Chain.basis(GPSpace(5, 2), [(1, 0), (0, 2)])

    def test_product_of_cycles_is_cycle(self):
        """Test d(x ⊗ y) = 0 for cycles x, y."""
        z = chain_product(generator_cycle(7, [3]), generator_cycle(7, [5]))
        assert z.length == 2
        assert boundary(z).is_zero()

    def test_product_field_mismatch(self):
        """Test products over different primes are rejected."""
        with pytest.raises(InputError):
            chain_product(generator_cycle(5, [2]), generator_cycle(7, [2]))

    def test_act(self):
        """Test the identity matrix acts trivially and a swap permutes coordinates."""
        z = generator_cycle(5, [2, 3])
        assert z.act(standard_basis(2)) == z
        swapped = z.act(((0, 1), (1, 0)))
        assert set(swapped.support()) == {((1, 0), (3, 2)), ((0, 1), (3, 2)), ((0, 1), (1, 0))}


@pytest.mark.unit
class TestOrbitNormalize:
    """Test cases for orbit_normalize."""

    def test_standard_frame(self):
        """Test (e1, e2, a1e1 + a2e2) ↦ (1, (a1, a2))."""
        normal = orbit_normalize([(1, 0), (0, 1), (2, 3)], 5)
        assert normal.det == 1
        assert normal.w == (2, 3)

    def test_swapped_frame(self):
        """Test (e2, e1, a1e1 + a2e2) over F_5 ↦ (-1, (a2, a1))."""
        tup = [(0, 1), (1, 0), (2, 3)]
        normal = orbit_normalize(tup, 5)
        assert normal.det == 4
        assert normal.w == (3, 2)
        assert normal.verify(tup, 5)

    def test_certificate(self, rng):
        """Test the SL certificate of random tuples."""
        space = GPSpace(7, 3)
        for _ in range(20):
            tup = space.random_tuple(rng, 4)
            assert orbit_normalize(tup, 7).verify(tup, 7)

    def test_singular_leading_block(self):
        """Test a singular leading block is rejected."""
        with pytest.raises(GeneralPositionError):
            orbit_normalize([(1, 0), (2, 0), (1, 1)], 5)

    def test_degenerate_last_vector(self):
        """Test a last vector on a coordinate hyperplane is rejected."""
        with pytest.raises(GeneralPositionError):
            orbit_normalize([(1, 0), (0, 1), (1, 0)], 5)

    def test_shape(self):
        """Test the tuple must have n+1 vectors of length n."""
        with pytest.raises(InputError):
            orbit_normalize([(1, 0), (0, 1)], 5)
