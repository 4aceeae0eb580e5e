"""Unit tests for Hilbert symbols, diagonal forms, W(F) and GW(F)."""
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings as hsettings, strategies as st
from sympy import primefactors

from app.core.errors import FieldMismatchError, InputError, UnsupportedPlaceError
from app.services.groupring import FieldSpec, gr_basis
from app.services.quadform import (
    DiagForm,
    GWClass,
    form_invariants,
    gw_basis,
    gw_from_group_ring,
    gw_one,
    hilbert_symbol,
    hyperbolic,
    gw_add,
    gw_mul,
    in_fundamental_power,
    least_nonresidue,
    pfister,
    witt_basis,
    witt_class,
    witt_one,
    witt_pfister,
    witt_zero,
)

QQ = FieldSpec.rationals()
nonzero_ints = st.integers(min_value=-60, max_value=60).filter(bool)


@pytest.mark.unit
class TestHilbertSymbol:
    """Test cases for the Hilbert symbol over Q."""

    def test_real_place(self):
        """Test (-1,-1)_inf = -1 and (2,-1)_inf = 1."""
        assert hilbert_symbol(-1, -1, "inf") == -1
        assert hilbert_symbol(2, -1, "inf") == 1

    def test_odd_place(self):
        """Test (2,3)_3 = -1 and (2,3)_5 = 1."""
        assert hilbert_symbol(2, 3, 3) == -1
        assert hilbert_symbol(2, 3, 5) == 1

    def test_dyadic_place(self):
        """Test (-1,-1)_2 = -1 and (2,-1)_2 = 1."""
        assert hilbert_symbol(-1, -1, 2) == -1
        assert hilbert_symbol(2, -1, 2) == 1

    def test_rational_entries(self):
        """Test that squares of denominators do not change the symbol."""
        assert hilbert_symbol(Fraction(2, 9), 3, 3) == hilbert_symbol(2, 3, 3)

    @pytest.mark.parametrize("place", [4, 1, "real", None])
    def test_invalid_place(self, place):
        """Test that non-places raise UnsupportedPlaceError."""
        with pytest.raises(UnsupportedPlaceError):
            hilbert_symbol(2, 3, place)

    @hsettings(max_examples=150, deadline=None)
    @given(nonzero_ints, nonzero_ints)
    def test_product_formula(self, a, b):
        """Test that the product of (a,b)_v over all places is 1."""
        places = ["inf", 2] + [q for q in primefactors(abs(a * b)) if q != 2]
        product = 1
        for v in places:
            product *= hilbert_symbol(a, b, v)
        assert product == 1

    @hsettings(max_examples=100, deadline=None)
    @given(nonzero_ints, nonzero_ints, nonzero_ints)
    def test_bilinear(self, a, b, c):
        """Test (ab, c)_v = (a, c)_v (b, c)_v."""
        for v in ("inf", 2, 3, 5, 7):
            assert hilbert_symbol(a * b, c, v) == hilbert_symbol(a, c, v) * hilbert_symbol(b, c, v)


@pytest.mark.unit
class TestFormInvariants:
    """Test cases for form_invariants."""

    def test_rational_form(self, qq):
        """Test <1,1,-2> over Q: rank 3, discriminant -2, signature 1."""
        inv = form_invariants(DiagForm.of(qq, [1, 1, -2]))
        assert inv.rank == 3
        assert inv.discriminant == -2
        assert inv.signature == 1
        assert inv.hasse == {"inf": 1, "2": 1}

    def test_prime_field_form(self, f7):
        """Test <1,3> over F_7 has nonsquare discriminant and no signature."""
        inv = form_invariants(DiagForm.of(f7, [1, 3]))
        assert inv.rank == 2
        assert inv.discriminant == least_nonresidue(7) == 3
        assert inv.signature is None
        assert inv.to_dict()["hasse"] == {}

    def test_signature_over_fp(self, f5):
        """Test that signature is rejected over F_p."""
        with pytest.raises(InputError):
            DiagForm.of(f5, [1]).signature()


@pytest.mark.unit
class TestWittRing:
    """Test cases for W(F)."""

    def test_hyperbolic_plane_vanishes(self, qq, f7):
        """Test <1,-1> = 0 in W(F)."""
        assert witt_class(DiagForm.of(qq, [1, -1])).is_zero
        assert witt_class(DiagForm.of(f7, [3, -3])).is_zero

    def test_sum_of_two_squares_mod_3(self, f3):
        """Test <1,1> is nonzero over F_3 and <1> has order 4."""
        assert not witt_class(DiagForm.of(f3, [1, 1])).is_zero
        one = witt_one(f3)
        assert not one.scale(2).is_zero
        assert one.scale(4).is_zero

    def test_sum_of_two_squares_mod_5(self, f5):
        """Test <1,1> = 0 over F_5."""
        assert witt_class(DiagForm.of(f5, [1, 1])).is_zero

    def test_rational_keys(self, qq):
        """Test that isometric forms share one Witt class over Q."""
        assert witt_class(DiagForm.of(qq, [2, 2])) == witt_class(DiagForm.of(qq, [1, 1]))
        assert witt_class(DiagForm.of(qq, [1, 1, -2])) == witt_class(DiagForm.of(qq, [-2, 1, 1]))
        assert witt_basis(qq, 3) != witt_one(qq)
        assert witt_basis(qq, "1/4") == witt_one(qq)

    def test_products(self, qq, f7):
        """Test <a><b> = <ab>."""
        assert witt_basis(qq, 2) * witt_basis(qq, 3) == witt_basis(qq, 6)
        assert witt_basis(f7, 3) * witt_basis(f7, 5) == witt_one(f7)

    def test_canonical_representative(self, qq):
        """Test that the representative reproduces the class."""
        x = witt_class(DiagForm.of(qq, [3, 5, -7, "2/3"]))
        assert witt_class(x.rep) == x
        assert x.signature == 2

    def test_negation(self, qq, f3):
        """Test x - x = 0."""
        for x in (witt_class(DiagForm.of(qq, [3, -10, 7])), witt_one(f3)):
            assert (x - x).is_zero

    def test_field_mismatch(self, f5, f7):
        """Test that classes over different fields cannot be added."""
        with pytest.raises(FieldMismatchError):
            witt_one(f5) + witt_one(f7)

    def test_render(self, qq):
        """Test rendering of zero and nonzero classes."""
        assert witt_zero(qq).render() == "0"
        assert witt_basis(qq, 3).render() == "<3>"


@pytest.mark.unit
class TestGrothendieckWitt:
    """Test cases for GW(F)."""

    def test_rank_parity_checked(self, f7):
        """Test that rank and Witt parity must agree."""
        with pytest.raises(InputError):
            GWClass(2, witt_one(f7))

    def test_hyperbolic_annihilates_pfister(self, qq, f7):
        """Test h·<<a>> = 0."""
        assert (hyperbolic(qq) * pfister(qq, [2])).is_zero()
        assert (hyperbolic(f7) * pfister(f7, [3])).is_zero()

    def test_hyperbolic_rank(self, qq):
        """Test h has rank 2 and vanishes in W(F)."""
        h = hyperbolic(qq)
        assert h.rank == 2
        assert h.witt.is_zero

    def test_from_group_ring(self, f7):
        """Test the map Z[F×] → GW(F)."""
        x = gr_basis(f7, 3) * 2 - 1
        assert gw_from_group_ring(x) == gw_basis(f7, 3) * 2 - 1
        assert gw_from_group_ring(gr_basis(f7, 1)) == gw_one(f7)

    def test_integer_coercion(self, qq):
        """Test integer arithmetic with GW classes."""
        x = 3 - gw_basis(qq, 2)
        assert x.rank == 2
        assert (x + gw_basis(qq, 2) - 3).is_zero()

    def test_functional_forms(self, qq, f7):
        """Test gw_add and gw_mul agree with the operators."""
        assert gw_add(gw_basis(qq, 2), gw_basis(qq, -2)) == hyperbolic(qq)
        assert gw_mul(gw_basis(qq, 2), gw_basis(qq, 3)) == gw_basis(qq, 6)
        assert gw_mul(gw_basis(f7, 3), gw_basis(f7, 5)) == gw_one(f7)


@pytest.mark.unit
class TestFundamentalIdeal:
    """Test cases for in_fundamental_power."""

    def test_pfister_forms(self, qq):
        """Test <<-1,-1,-1>> lies in I^3 but not I^4."""
        x = pfister(qq, [-1, -1, -1])
        assert in_fundamental_power(x, 3)
        assert not in_fundamental_power(x, 4)

    def test_discriminant_detects_i2(self, qq):
        """Test <<2>> lies in I but not I^2."""
        x = pfister(qq, [2])
        assert in_fundamental_power(x, 1)
        assert not in_fundamental_power(x, 2)

    def test_odd_rank(self, qq):
        """Test that odd-rank classes lie only in I^0."""
        assert in_fundamental_power(gw_one(qq), 0)
        assert not in_fundamental_power(gw_one(qq), 1)

    def test_finite_field(self, f7):
        """Test I^2(F_p) = 0."""
        assert in_fundamental_power(witt_pfister(f7, [3, 5]), 2)
        assert witt_pfister(f7, [3, 5]).is_zero
        assert not in_fundamental_power(witt_pfister(f7, [3]), 2)

    def test_negative_power(self, qq):
        """Test that negative powers are rejected."""
        with pytest.raises(InputError):
            in_fundamental_power(gw_one(qq), -1)

    @hsettings(max_examples=40, deadline=None)
    @given(nonzero_ints, nonzero_ints)
    def test_two_fold_pfister_in_i2(self, a, b):
        """Test <<a,b>> ∈ I^2 for all a, b."""
        assume(abs(a) > 1 or abs(b) > 1)
        assert in_fundamental_power(pfister(QQ, [a, b]), 2)
