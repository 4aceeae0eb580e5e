"""Unit tests for symbol sums and the D, T, φ and Π maps."""
import pytest

from app.core.errors import FieldMismatchError, InputError, SamplingError
from app.services.gpcomplex.symbols import (
    GradedGroupRingElem,
    SymbolKind,
    SymbolSum,
    check_auxiliary,
    d_map,
    default_auxiliary,
    face_word,
    free_relation,
    phi_map,
    pi_map,
    relation_instance,
    symbol_e,
    symbol_l,
    t_map,
)
from app.services.groupring import GroupRingElem, gr_basis
from app.services.mwk import mw_form, mw_word
from app.services.quadform import gw_basis


@pytest.mark.unit
class TestSymbolSum:
    """Test cases for SymbolSum arithmetic."""

    def test_render(self, qq):
        """Test bracket and free rendering."""
        assert SymbolSum.generator(qq, [2, 3]).render() == "[[2,3]]"
        assert SymbolSum.generator(qq, [2, 3], g=-1).render() == "<-1>[[2,3]]"
        assert SymbolSum.generator(qq, [2, 3], kind=SymbolKind.FREE).render() == "<2,3>-f"
        x = SymbolSum.generator(qq, [2]) - SymbolSum.generator(qq, [3]).scale(2)
        assert x.render() == "[[2]] - 2*[[3]]"

    def test_cancellation(self, f7):
        """Test that x - x is the zero sum."""
        x = SymbolSum.generator(f7, [2, 3], g=5)
        assert (x - x).is_zero()

    def test_action(self, f7):
        """Test the Z[F×]-module action."""
        x = SymbolSum.generator(f7, [2, 3])
        acted = x.act(gr_basis(f7, 3) - 1)
        assert acted == SymbolSum.generator(f7, [2, 3], g=3) - x
        assert x.translate(3).translate(5) == x

    def test_degree_mismatch(self, f7):
        """Test that sums of different degrees or kinds cannot be added."""
        with pytest.raises(InputError):
            SymbolSum.generator(f7, [2]) + SymbolSum.generator(f7, [2, 3])
        with pytest.raises(InputError):
            SymbolSum.generator(f7, [2]) + SymbolSum.generator(f7, [2], kind=SymbolKind.FREE)

    def test_field_mismatch(self, f5, f7):
        """Test that sums over different fields cannot be added."""
        with pytest.raises(FieldMismatchError):
            SymbolSum.generator(f5, [2]) + SymbolSum.generator(f7, [2])

    def test_concat(self, f7):
        """Test ⟨g⟩w · ⟨h⟩w' = ⟨gh⟩ww'."""
        x = SymbolSum.generator(f7, [2], g=3, kind=SymbolKind.FREE)
        y = SymbolSum.generator(f7, [5], g=4, kind=SymbolKind.FREE)
        assert x.concat(y) == SymbolSum.generator(f7, [2, 5], g=5, kind=SymbolKind.FREE)

    def test_as_bracket(self, f7):
        """Test the projection of free words to brackets."""
        x = SymbolSum.generator(f7, [2, 3], kind=SymbolKind.FREE)
        assert x.as_bracket() == SymbolSum.generator(f7, [2, 3])


@pytest.mark.unit
class TestRelationInstances:
    """Test cases for relation_instance and the auxiliary constants."""

    def test_default_auxiliary(self, f7, f3):
        """Test b_i = i, which needs p > n."""
        assert default_auxiliary(f7, 3) == (1, 2, 3)
        with pytest.raises(SamplingError):
            default_auxiliary(f3, 3)

    def test_check_auxiliary(self, f7):
        """Test that auxiliary constants must be n distinct units."""
        assert check_auxiliary(f7, [3, 1], 2) == (3, 1)
        with pytest.raises(InputError):
            check_auxiliary(f7, [2, 2], 2)
        with pytest.raises(InputError):
            check_auxiliary(f7, [2], 2)

    def test_face_word(self, f7):
        """Test w_1 and w_2 for a = (2, 3), b = (1, 2)."""
        assert face_word(f7, (2, 3), (1, 2), 1) == (3, 1)
        assert face_word(f7, (2, 3), (1, 2), 2) == (5, 2)

    def test_degree_one(self, f7):
        """Test [[ba]] - [[a]] - ⟨a⟩[[b]] in degree 1."""
        expected = (
            SymbolSum.generator(f7, [6]) - SymbolSum.generator(f7, [2]) - SymbolSum.generator(f7, [3], g=2)
        )
        assert relation_instance(f7, [2], [3]) == expected

    def test_empty(self, f7):
        """Test degree 0 is rejected."""
        with pytest.raises(InputError):
            relation_instance(f7, [])

    def test_free_relation(self, f7):
        """Test R_b lives in the free symbol module."""
        relation = free_relation(f7, 2)
        assert relation.kind == SymbolKind.FREE
        assert relation.degree == 2


@pytest.mark.unit
class TestDeterminantMap:
    """Test cases for D_n."""

    def test_e(self, f7, qq):
        """Test D_2([[-1, 1]]) = ⟨1⟩."""
        assert d_map(symbol_e(f7)) == gr_basis(f7, 1)
        assert d_map(symbol_e(qq)) == gr_basis(qq, 1)

    def test_degree_one(self, f7):
        """Test D_1([[a]]) = ⟨a⟩ - ⟨1⟩ and augmentation zero."""
        for a in f7.units():
            image = d_map(SymbolSum.generator(f7, [a]))
            assert image == gr_basis(f7, a) - 1
            assert image.augment() == 0

    def test_odd_degree_lands_in_augmentation_ideal(self, qq, rng):
        """Test D_3 of random generators has augmentation 0."""
        for _ in range(20):
            x = SymbolSum.generator(qq, [qq.random_unit(rng) for _ in range(3)], qq.random_unit(rng))
            assert d_map(x).augment() == 0

    def test_linear(self, f7):
        """Test D is Z[F×]-linear."""
        x = SymbolSum.generator(f7, [2, 3])
        alpha = gr_basis(f7, 3) * 2 - gr_basis(f7, 5)
        assert d_map(x.act(alpha)) == alpha * d_map(x)

    @pytest.mark.parametrize("label", ["f7", "f13", "qq"])
    def test_relations_vanish(self, label, request, rng):
        """Test D kills relation instances in degrees 1 to 3."""
        fld = request.getfixturevalue(label)
        for n in (1, 2, 3):
            for _ in range(10):
                a = [fld.random_unit(rng, 20) for _ in range(n)]
                b = list(dict.fromkeys(fld.random_unit(rng, 20) for _ in range(2 * n)))[:n]
                if len(b) < n:
                    continue
                assert d_map(relation_instance(fld, a, b)).is_zero()


@pytest.mark.unit
class TestSymbolMap:
    """Test cases for T_n and φ."""

    def test_generator(self, qq):
        """Test T_2([[a, b]]) = [a][b] and translates."""
        assert t_map(SymbolSum.generator(qq, [3, 5])) == mw_word(qq, [3, 5])
        assert t_map(SymbolSum.generator(qq, [3, 5], g=2)) == mw_form(qq, 2) * mw_word(qq, [3, 5])

    def test_e(self, qq):
        """Test T_2(E) = [-1][1] = 0."""
        assert t_map(symbol_e(qq)).is_zero()

    def test_relations_vanish(self, qq, rng):
        """Test T kills relation instances over Q."""
        for n in (1, 2):
            for _ in range(10):
                a = [qq.random_unit(rng, 20) for _ in range(n)]
                b = [qq.unit(k) for k in rng.sample(range(1, 30), n)]
                assert t_map(relation_instance(qq, a, b)).is_zero()

    def test_phi(self, qq):
        """Test φ(⟨g⟩[[a, b]]) = ⟨gab⟩."""
        assert phi_map(SymbolSum.generator(qq, [2, 3], g=5)) == gw_basis(qq, 30)
        with pytest.raises(InputError):
            phi_map(SymbolSum.generator(qq, [2]))

    def test_phi_kills_relations(self, qq):
        """Test φ vanishes on a degree-2 relation instance."""
        assert phi_map(relation_instance(qq, [3, "1/2"], [2, 5])).is_zero()


@pytest.mark.unit
class TestFreeSymbolAlgebra:
    """Test cases for Π and L."""

    def test_pi_generator(self, f7):
        """Test Π(⟨g⟩⟨a, b⟩-f) = ⟨gab⟩x²."""
        x = SymbolSum.generator(f7, [2, 3], g=4, kind=SymbolKind.FREE)
        assert pi_map(x) == GradedGroupRingElem(gr_basis(f7, 3), 2)

    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_pi_of_odd_free_relation(self, n, qq, f7):
        """Test Π_n(R_b) = -⟨1⟩xⁿ with b_i = i for odd n."""
        for fld in (qq, f7):
            value = pi_map(free_relation(fld, n))
            assert value == GradedGroupRingElem(GroupRingElem.scalar(fld, -1), n)

    def test_l_symbol(self, f7):
        """Test L(x) has three terms of degree 2."""
        value = symbol_l(f7, 3)
        assert value.kind == SymbolKind.FREE
        assert value.degree == 2
        assert len(value.terms) == 3
        with pytest.raises(InputError):
            symbol_l(f7, 1)

    def test_render_graded(self, f7):
        """Test rendering of graded elements."""
        assert GradedGroupRingElem(GroupRingElem.scalar(f7, -1), 3).render() == "(-1)·x^3"
