"""Named verification suites and the trial runner."""
from app.services.verification.runner import get_suite, run_suite, suite_names, verify_identities
from app.services.verification.suites import SUITES, Check, Suite

__all__ = ["SUITES", "Check", "Suite", "get_suite", "run_suite", "suite_names", "verify_identities"]
