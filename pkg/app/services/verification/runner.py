"""
Trial runner for the verification suites.

Trial k of suite s with seed N draws from random.Random(f"{s}:{N}:{k}"), so a
report depends only on (suite, field, trials, seed). With more than one worker
the trials run in a process pool; results are collected in trial order.
"""
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from app.core.config import settings
from app.core.errors import UnknownSuiteError
from app.core.metrics import MetricsCollector
from app.schemas.reports import Failure, Finding, VerificationReport
from app.services.verification.suites import IDENTITY_SUITES, SUITES, Check, Suite

logger = logging.getLogger(__name__)


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise UnknownSuiteError(f"Unknown suite '{name}'; available: {', '.join(sorted(SUITES))}")


def suite_names() -> List[str]:
    return sorted(SUITES)


def trial_rng(name: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{name}:{seed}:{index}")


def _run_trial(name: str, field_label: str, seed: int, index: int) -> List[Check]:
    suite = SUITES[name]
    return suite.trial(suite.resolve_field(field_label), trial_rng(name, seed, index))


def _findings(checks: List[Check]) -> List[Finding]:
    out = []
    for name in dict.fromkeys(c.finding for c in checks if c.finding is not None):
        group = [c for c in checks if c.finding == name]
        miss = next((c for c in group if not c.ok), None)
        out.append(
            Finding(
                name=name,
                measured=len(group),
                holds=sum(1 for c in group if c.ok),
                first_miss=Failure(instance=miss.instance, lhs=miss.lhs, rhs=miss.rhs) if miss else None,
            )
        )
    return out


def run_suite(
    name: str,
    field: Optional[str] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> VerificationReport:
    """
    Run a named suite.

    Args:
        name: registered suite name
        field: "Fp:<p>" or "Q"; the suite default when None
        trials: number of sampled trials (settings.DEFAULT_TRIALS when None)
        seed: base seed (settings.DEFAULT_SEED when None)
        workers: process pool size (settings.VERIFY_WORKERS when None)

    Returns:
        VerificationReport; passed iff every check passed. Measurements tagged
        with a finding name are summarised under findings instead.

    Raises:
        UnknownSuiteError: no suite with this name
        InputError: field not accepted by the suite
        SamplingError: the field has too few units for an instance
    """
    suite = get_suite(name)
    fld = suite.resolve_field(field)
    trials = settings.DEFAULT_TRIALS if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    workers = settings.VERIFY_WORKERS if workers is None else workers

    collector = MetricsCollector(f"verify {name} {fld.label}")
    logger.info(f"VerificationRunner: {name} over {fld.label}, {trials} trials, seed {seed}, {workers} workers")
    checks: List[Check] = []
    if suite.exhaustive is not None:
        with collector.stage("exhaustive"):
            checks.extend(suite.exhaustive(fld, trials, seed))
    if suite.trial is not None and trials:
        with collector.stage("trials"):
            if workers > 1:
                with ProcessPoolExecutor(max_workers=workers) as pool:
                    batches = pool.map(
                        _run_trial,
                        [name] * trials,
                        [fld.label] * trials,
                        [seed] * trials,
                        range(trials),
                    )
                    for batch in batches:
                        checks.extend(batch)
            else:
                for index in range(trials):
                    checks.extend(suite.trial(fld, trial_rng(name, seed, index)))

    binding = [c for c in checks if c.finding is None]
    failures = [Failure(instance=c.instance, lhs=c.lhs, rhs=c.rhs) for c in binding if not c.ok]
    findings = _findings(checks)
    collector.record_checks(len(binding), len(failures))
    collector.finish().emit("WARNING" if failures else "INFO")
    if failures:
        logger.warning(f"VerificationRunner: {name} failed {len(failures)} of {len(binding)} checks")
    for finding in findings:
        logger.info(f"VerificationRunner: {name}: {finding.name} held in {finding.holds} of {finding.measured}")
    return VerificationReport(
        suite=name,
        field=fld.label,
        trials=trials,
        seed=seed,
        passed=not failures,
        instances=len(binding),
        failures=failures,
        findings=findings,
    )


def verify_identities(
    suite: str,
    field: Optional[str] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> VerificationReport:
    """Run one of the Milnor-Witt identity suites: lemma-2.3, lemma-3.9 or matsumoto-moore."""
    if suite not in IDENTITY_SUITES:
        raise UnknownSuiteError(f"'{suite}' is not an identity suite; expected one of {', '.join(IDENTITY_SUITES)}")
    return run_suite(suite, field=field, trials=trials, seed=seed)
