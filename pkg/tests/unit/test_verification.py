"""Unit tests for the verification suites and runner."""
import pytest

from app.core.errors import InputError, SamplingError, UnknownSuiteError
from app.schemas.reports import VerificationReport
from app.services.verification import SUITES, get_suite, run_suite, suite_names, verify_identities
from app.services.verification.runner import trial_rng
from app.services.verification.suites import Check, Suite, shifted_word_terms, witt_order
from app.services.quadform import witt_one


@pytest.mark.unit
class TestRegistry:
    """Test cases for suite lookup."""

    def test_suite_names(self):
        """Test every named suite is registered."""
        expected = {
            "mw-relations",
            "lemma-2.3",
            "lemma-3.9",
            "matsumoto-moore",
            "star-dual-path",
            "decomposability",
            "identities-5.19",
            "exact-sequences",
            "witt-structure",
            "complex-axioms",
            "dt-consistency",
            "kmw-vanishing",
        }
        assert expected <= set(suite_names())
        assert suite_names() == sorted(SUITES)

    def test_unknown_suite(self):
        """Test unknown names raise UnknownSuiteError with exit code 2."""
        with pytest.raises(UnknownSuiteError) as exc:
            get_suite("no-such-suite")
        assert exc.value.exit_code == 2
        with pytest.raises(UnknownSuiteError):
            run_suite("no-such-suite")

    def test_prime_only(self):
        """Test prime-only suites reject Q."""
        with pytest.raises(InputError):
            run_suite("kmw-vanishing", field="Q", trials=1)

    def test_trial_rng_is_keyed(self):
        """Test trial generators depend on suite, seed and index only."""
        assert trial_rng("a", 1, 2).random() == trial_rng("a", 1, 2).random()
        assert trial_rng("a", 1, 2).random() != trial_rng("a", 1, 3).random()


@pytest.mark.unit
class TestHelpers:
    """Test cases for suite helpers."""

    def test_shifted_word_terms(self, f7):
        """Test the shifted words of (b_1, b_2)."""
        assert shifted_word_terms(f7, [2, 5]) == [[2, 3], [4, 5]]

    def test_witt_order(self, f3, f5):
        """Test the order of <1> in W(F_p)."""
        assert witt_order(witt_one(f3)) == 4
        assert witt_order(witt_one(f5)) == 2


@pytest.mark.unit
class TestRunner:
    """Test cases for running suites."""

    @pytest.mark.parametrize(
        "name",
        ["mw-relations", "lemma-2.3", "lemma-3.9", "matsumoto-moore", "exact-sequences", "dt-consistency"],
    )
    def test_identity_suites_pass_over_q(self, name):
        """Test the identity suites pass over Q."""
        report = run_suite(name, field="Q", trials=5, seed=7)
        assert isinstance(report, VerificationReport)
        assert report.passed, report.failures
        assert report.instances > 0
        assert report.field == "Q"

    @pytest.mark.parametrize("name", ["mw-relations", "lemma-2.3", "matsumoto-moore", "dt-consistency"])
    def test_identity_suites_pass_over_fp(self, name):
        """Test the identity suites pass over F_7."""
        assert run_suite(name, field="Fp:7", trials=5).passed

    def test_deterministic(self):
        """Test equal arguments give byte-identical reports."""
        first = run_suite("lemma-2.3", field="Q", trials=4, seed=3)
        second = run_suite("lemma-2.3", field="Q", trials=4, seed=3)
        assert first.model_dump_json() == second.model_dump_json()

    def test_defaults(self):
        """Test the suite's default field and the configured seed."""
        report = run_suite("kmw-vanishing", trials=3)
        assert report.field == "Fp:5"
        assert report.seed == 42
        assert report.passed

    def test_too_few_units(self):
        """Test F_3 cannot supply four distinct units."""
        with pytest.raises(SamplingError):
            run_suite("lemma-3.9", field="Fp:3", trials=1)

    def test_witt_structure(self):
        """Test the Witt ring sweep over small primes."""
        report = run_suite("witt-structure", trials=0)
        assert report.passed, report.failures

    def test_star_identities(self):
        """Test the ∗ identities over Q."""
        assert run_suite("identities-5.19", trials=3).passed

    def test_verify_identities(self):
        """Test the identity entry point accepts only identity suites."""
        assert verify_identities("lemma-2.3", trials=2).passed
        with pytest.raises(UnknownSuiteError):
            verify_identities("witt-structure")

    def test_star_dual_path_over_f5(self):
        """Test all (1, 1) pairs plus sampled (1, 2) pairs and associativity triples."""
        report = run_suite("star-dual-path", field="Fp:5", trials=2)
        assert report.passed, report.failures
        assert report.instances == 16 * 3 + 2 * 4

    def test_star_dual_path_over_q(self):
        """Test the formula-only checks and image associativity over Q."""
        report = run_suite("star-dual-path", field="Q", trials=3)
        assert report.passed, report.failures
        assert report.instances == 3 * 3

    def test_findings_do_not_decide_passed(self, mocker):
        """Test measurements are summarised under findings and excluded from failures."""

        def checks(fld, trials, seed):
            return [
                Check("identity", "1", "1", True),
                Check("m1", "x", "0", True, finding="membership"),
                Check("m2", "y", "0", False, finding="membership"),
            ]

        mocker.patch.dict(SUITES, {"measured": Suite("measured", "test suite", "Fp:5", exhaustive=checks)})
        report = run_suite("measured", trials=0)
        assert report.passed
        assert report.instances == 1
        assert report.failures == []
        assert len(report.findings) == 1
        finding = report.findings[0]
        assert (finding.name, finding.measured, finding.holds) == ("membership", 2, 1)
        assert finding.first_miss.instance == "m2"

    def test_decomposability_reports_congruence_finding(self):
        """Test the decomposability suite carries the S̃_dec congruence as a finding."""
        report = run_suite("decomposability", field="Fp:5", trials=4)
        assert [f.name for f in report.findings] == ["congruence mod S̃_dec"]
        assert report.findings[0].measured == 4
        assert all(not f.instance.startswith("congruence") for f in report.failures)

    @pytest.mark.slow
    def test_complex_axioms(self):
        """Test d∘d = 0 and homotopy reconstruction over F_5."""
        assert run_suite("complex-axioms", trials=3).passed
