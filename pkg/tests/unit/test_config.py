"""Unit tests for configuration."""
import pytest

from app.core.config import Settings, settings


@pytest.mark.unit
class TestSettings:
    """Test cases for application settings."""

    def test_settings_loaded(self):
        """Test that settings are loaded."""
        assert settings.APP_NAME == "mwk-workbench"
        assert settings.API_VERSION == "v1"
        assert settings.ENVIRONMENT == "test"

    def test_verification_defaults(self):
        """Test verification run defaults."""
        assert settings.DEFAULT_SEED == 42
        assert settings.DEFAULT_TRIALS == 100
        assert settings.RATIONAL_HEIGHT == 50
        assert settings.VERIFY_WORKERS == 1

    def test_budget_defaults(self):
        """Test S̃ model budget defaults."""
        assert settings.MAX_STILDE_PRIME == 13
        assert settings.MAX_STILDE_DIM == 3
        assert settings.MAX_RELATION_ROWS >= 6144
        assert settings.MAX_DIRECT_TUPLES > 0

    def test_environment_override(self, monkeypatch):
        """Test that environment variables override defaults."""
        monkeypatch.setenv("DEFAULT_TRIALS", "7")
        monkeypatch.setenv("MAX_STILDE_PRIME", "11")
        fresh = Settings()
        assert fresh.DEFAULT_TRIALS == 7
        assert fresh.MAX_STILDE_PRIME == 11

    def test_names_are_case_sensitive(self, monkeypatch):
        """Test that lower-case variables are ignored."""
        monkeypatch.delenv("DEFAULT_SEED", raising=False)
        monkeypatch.setenv("default_seed", "5")
        assert Settings().DEFAULT_SEED == 42
