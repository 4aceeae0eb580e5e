"""Unit tests for the command layer shared by the CLI and the API."""
import pytest

from app.core.errors import BudgetExceededError, InputError
from app.services.workbench import normalize_expression, product_report, stilde_report, witt_invariants


@pytest.mark.unit
class TestNormalizeExpression:
    """Test cases for normalize_expression."""

    def test_hyperbolic(self):
        """Test the report for η[-1] + 2."""
        report = normalize_expression("eta*[-1] + 2")
        assert report.field == "Q"
        assert report.target == "mwk"
        assert report.result["rank"] == 2

    def test_bindings_and_field(self):
        """Test bindings are forwarded and the field label is canonical."""
        report = normalize_expression("[[1,a]]", field="Fp:5", bindings={"a": 2})
        assert report.field == "Fp:5"
        assert report.target == "stilde"
        assert report.result["symbols"] == "[[1,2]]"


@pytest.mark.unit
class TestWittInvariants:
    """Test cases for witt_invariants."""

    def test_rational_form(self):
        """Test the invariants of <1,1,-2> over Q."""
        report = witt_invariants("<1,1,-2>")
        assert report.form == "<1,1,-2>"
        assert report.invariants["rank"] == 3
        assert report.invariants["signature"] == 1
        assert report.invariants["hasse"] == {"inf": 1, "2": 1}

    def test_finite_field_form(self):
        """Test <1,3> over F_7 has a non-square discriminant."""
        report = witt_invariants("1, 3", field="Fp:7")
        assert report.invariants["discriminant"] == 3
        assert report.invariants["signature"] is None

    def test_zero_entry(self):
        """Test a zero entry is not a unit."""
        with pytest.raises(InputError):
            witt_invariants("<1,0>")


@pytest.mark.unit
class TestStildeReport:
    """Test cases for stilde_report."""

    def test_degree_one(self):
        """Test S̃(F_5^1) ≅ Z^3."""
        report = stilde_report(5, 1)
        assert report.generators == 16
        assert report.relation_matrix_shape[1] == 16
        assert report.invariant_factors.free_rank == 3
        assert report.invariant_factors.torsion == []
        assert set(report.timings) == {"relations", "smith"}

    def test_compare_degree_one(self):
        """Test the direct pipeline agrees in degree one."""
        report = stilde_report(5, 1, compare=True)
        assert report.diagnostics["agree"]
        assert report.diagnostics["direct_tuples"] == 16

    def test_budget(self):
        """Test oversized models are refused."""
        with pytest.raises(BudgetExceededError):
            stilde_report(17, 1)


@pytest.mark.unit
class TestProductReport:
    """Test cases for product_report."""

    def test_rationals(self):
        """Test over Q only the closed formula is evaluated."""
        report = product_report("[[2]]", "[[3]]", field="Q")
        assert report.chain is None
        assert report.agree is None
        assert report.d_multiplicative
        assert report.t_multiplicative

    @pytest.mark.slow
    def test_prime_field(self):
        """Test over F_7 both paths are reported."""
        report = product_report("[[2]]", "[[3]]")
        assert report.field == "Fp:7"
        assert report.chain is not None
        assert report.d_multiplicative
        assert report.t_multiplicative

    def test_not_symbols(self):
        """Test Milnor-Witt expressions are rejected as operands."""
        with pytest.raises(InputError):
            product_report("[2]", "[[3]]", field="Q")
