"""
Command-line entry point: python -m app.cli <command> [options].

Exit codes: 0 pass, 1 check failure, 2 usage or unknown suite, 3 budget,
4 input or parse error, 5 sampling error.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel

from app.core.config import settings
from app.core.errors import WorkbenchError
from app.core.logging import configure_logging
from app.core.metrics import track_run
from app.services.verification import run_suite, suite_names
from app.services.workbench import normalize_expression, product_report, stilde_report, witt_invariants

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAILURE = 1


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="Print the JSON report instead of text")
    parser.add_argument("--out", metavar="FILE", help=f"Also write the JSON report to FILE (bare names go to {settings.REPORT_DIR}/)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwk-workbench",
        description="Exact Milnor-Witt K-theory and general-position complexes over F_p and Q",
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default from LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    normalize = commands.add_parser("normalize", help="Normal form of an expression")
    normalize.add_argument("expression", help="e.g. 'eta*[-1] + 2' or '{2,3} + {5,7}' or '[[1,3]] - E'")
    normalize.add_argument("--field", default="Q", help="Fp:<p> or Q")
    normalize.add_argument(
        "--let", action="append", default=[], metavar="NAME=VALUE", help="Bind a name used in unit position"
    )
    normalize.add_argument("--check-model", action="store_true", help="Decide vanishing of [[...]] sums in S̃")
    _add_output_flags(normalize)

    witt = commands.add_parser("witt", help="Invariants of a diagonal form")
    witt.add_argument("form", help="e.g. '<1,1,-2>'")
    witt.add_argument("--field", default="Q", help="Fp:<p> or Q")
    _add_output_flags(witt)

    stilde = commands.add_parser("stilde", help="Build the presented model of S̃(F_p^n)")
    stilde.add_argument("--p", type=int, required=True, help="Odd prime")
    stilde.add_argument("--n", type=int, required=True, help="Dimension")
    stilde.add_argument("--compare", action="store_true", help="Also run the direct pipeline and compare")
    _add_output_flags(stilde)

    verify = commands.add_parser("verify", help="Run a verification suite")
    verify.add_argument("--suite", required=True, help=f"One of: {', '.join(suite_names())}")
    verify.add_argument("--field", default=None, help="Fp:<p> or Q (suite default when omitted)")
    verify.add_argument("--trials", type=int, default=None, help=f"Trials (default {settings.DEFAULT_TRIALS})")
    verify.add_argument("--seed", type=int, default=None, help=f"Seed (default {settings.DEFAULT_SEED})")
    verify.add_argument("--workers", type=int, default=None, help="Process pool size")
    _add_output_flags(verify)

    product = commands.add_parser("product", help="Evaluate x∗y by formula and through chains")
    product.add_argument("left", help="e.g. '[[2]]'")
    product.add_argument("right", help="e.g. '[[3]]'")
    product.add_argument("--field", default="Fp:7", help="Fp:<p> or Q")
    _add_output_flags(product)
    return parser


def _bindings(items: List[str]) -> dict:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"--let expects NAME=VALUE, got '{item}'")
        out[name.strip()] = value.strip()
    return out


def _dispatch(args: argparse.Namespace) -> Tuple[BaseModel, bool, str]:
    """Run the command; returns (report, passed, text rendering)."""
    if args.command == "normalize":
        report = normalize_expression(args.expression, args.field, _bindings(args.let), args.check_model)
        text = report.result.get("normal_form") or report.result.get("symbols")
        return report, True, f"{report.target}: {text}"
    if args.command == "witt":
        report = witt_invariants(args.form, args.field)
        inv = report.invariants
        text = (
            f"{report.form} over {report.field}: rank {inv['rank']}, disc {inv['discriminant']}, "
            f"signature {inv['signature']}, hasse {inv['hasse']}; Witt class {report.witt_class['form']}"
        )
        return report, True, text
    if args.command == "stilde":
        report = stilde_report(args.p, args.n, args.compare)
        factors = report.invariant_factors
        text = (
            f"S̃(F_{report.p}^{report.n}): {report.generators} generators, relations {report.relation_matrix_shape}, "
            f"free rank {factors.free_rank}, torsion {factors.torsion}"
        )
        passed = report.diagnostics.get("agree", True)
        if args.compare:
            text += f"; direct {report.diagnostics['direct_invariant_factors']}, agree={passed}"
        return report, passed, text
    if args.command == "verify":
        report = run_suite(args.suite, field=args.field, trials=args.trials, seed=args.seed, workers=args.workers)
        lines = [
            f"{report.suite} over {report.field}: {report.instances} checks, "
            f"{len(report.failures)} failures ({'pass' if report.passed else 'FAIL'})"
        ]
        lines.extend(f"  {f.instance}: {f.lhs} != {f.rhs}" for f in report.failures)
        lines.extend(f"  finding: {f.name} held in {f.holds} of {f.measured}" for f in report.findings)
        return report, report.passed, "\n".join(lines)
    report = product_report(args.left, args.right, args.field)
    passed = report.agree is not False and report.d_multiplicative and report.t_multiplicative
    text = f"{report.left} ∗ {report.right} = {report.formula}"
    if report.chain is not None:
        text += f"\nchain path: {report.chain} (agree={report.agree})"
    return report, passed, text


def _write_report(report: BaseModel, out: str) -> None:
    path = Path(out)
    if path.parent == Path("."):
        path = Path(settings.REPORT_DIR) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2) + "\n")
    logger.info(f"CLI: report written to {path}")


def run_command(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run the command, print the report and return the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    with track_run(f"cli {args.command}") as collector:
        try:
            report, passed, text = _dispatch(args)
        except WorkbenchError as e:
            collector.record_checks(0, 1)
            logger.error(f"CLI: {args.command} failed: {e.message}", exc_info=True)
            print(f"error: {e.message}", file=sys.stderr)
            return e.exit_code
        except argparse.ArgumentTypeError as e:
            parser.error(str(e))
        collector.record_checks(1, 0 if passed else 1)
    print(report.model_dump_json(indent=2) if args.json else text)
    if args.out:
        _write_report(report, args.out)
    return EXIT_PASS if passed else EXIT_FAILURE


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
