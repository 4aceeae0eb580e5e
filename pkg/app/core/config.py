"""Application configuration from environment variables."""
import os
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # App Configuration
    APP_NAME: str = "mwk-workbench"
    ENVIRONMENT: str = "development"
    DEBUG: bool = False
    API_VERSION: str = "v1"

    # FastAPI
    HOST: str = "0.0.0.0"
    PORT: int = int(os.getenv("PORT", "8000"))

    # Logging
    LOG_LEVEL: str = "INFO"

    # Verification runs
    DEFAULT_SEED: int = 42
    DEFAULT_TRIALS: int = 100
    RATIONAL_HEIGHT: int = 50  # bound on sampled numerators/denominators over Q
    VERIFY_WORKERS: int = 1  # 1 runs trials serially

    # S̃ model budgets
    MAX_STILDE_PRIME: int = 13
    MAX_STILDE_DIM: int = 3
    MAX_RELATION_ROWS: int = 250000
    MAX_DIRECT_TUPLES: int = 200000

    # Re-check the Milnor-Witt fiber-product invariant after every operation
    CHECK_INVARIANTS: bool = True

    # Reports
    REPORT_DIR: str = "reports"

    class Config:
        """Pydantic config."""
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"  # Ignore extra fields from .env


settings = Settings()
