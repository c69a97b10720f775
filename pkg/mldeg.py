"""Command-line entry point: python mldeg.py theorem|oracle|verify|table ..."""
import argparse
import logging
import sys
from dataclasses import dataclass, field

from arrangement_oracle import ProjectiveArrangement, ml_degree_signed_euler
from config import CRITICAL_MAX_DIMENSION, DEFAULT_SEED, DEFAULT_TRIALS, LOG_LEVEL, Budget, default_budget
from degree_table import build_degree_table
from errors import BudgetExceededError, DisagreementError, InputError, MLDegreeError, VerifyMismatchError
from likelihood_oracle import DivisorCollection, count_critical_points
from map_analysis import MapInput, linear_reduced_forms, ml_degree_of_map
from report import ReportContext
from sanitization import load_input
from summary_templates import create_summary
from tracking import track_calculation, track_error, track_skip

logger = logging.getLogger(__name__)

MODES = ("theorem", "oracle-euler", "oracle-critical", "verify")


@dataclass(frozen=True)
class JobSpec:
    mode: str
    input_path: str
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    budget: Budget = field(default_factory=default_budget)

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"Unknown mode {self.mode!r}")
        if self.trials < 2:
            raise InputError(f"--trials must be at least 2, got {self.trials}")
        if self.budget.max_basis < 1 or self.budget.max_degree < 1:
            raise InputError("Budgets must be positive")


def _run_theorem(job, parsed, report):
    value, profile = ml_degree_of_map(MapInput(parsed.n, parsed.polynomials))
    report.update_profile(profile)
    report.set_ml_degree(value, "chern_class")


def _run_euler(job, parsed, report):
    value = ml_degree_signed_euler(ProjectiveArrangement(parsed.n, parsed.polynomials))
    report.add_oracle({"name": "euler", "count": value, "trials": []})
    report.set_ml_degree(value, "signed_euler")


def _run_critical(job, parsed, report):
    result = count_critical_points(DivisorCollection(parsed.n, parsed.polynomials),
                                   trials=job.trials, seed=job.seed, budget=job.budget)
    report.add_oracle(result.to_dict())
    if not result.agreed:
        raise DisagreementError("Critical-point trials disagree",
                                diagnostics={"counts": [t.count for t in result.trials]})
    report.set_ml_degree(result.count, "critical_points")


def _run_verify(job, parsed, report):
    value, profile = ml_degree_of_map(MapInput(parsed.n, parsed.polynomials))
    report.update_profile(profile)
    report.set_ml_degree(value, "chern_class")
    disagreement = None

    linear = linear_reduced_forms(profile)
    if linear is None:
        track_skip("euler", "some squarefree part is not linear")
        report.skip_oracle("euler", "some squarefree part is not linear")
    else:
        try:
            count = ml_degree_signed_euler(ProjectiveArrangement(parsed.n, tuple(linear)))
            report.add_oracle({"name": "euler", "count": count, "trials": []})
        except BudgetExceededError as e:
            track_skip("euler", e.message)
            report.skip_oracle("euler", e.message)

    if parsed.n > CRITICAL_MAX_DIMENSION:
        reason = f"n = {parsed.n} exceeds the critical-point limit {CRITICAL_MAX_DIMENSION}"
        track_skip("critical", reason)
        report.skip_oracle("critical", reason)
    else:
        try:
            result = count_critical_points(DivisorCollection(parsed.n, profile.reduced_forms),
                                           trials=job.trials, seed=job.seed, budget=job.budget)
            report.add_oracle(result.to_dict())
            if not result.agreed:
                disagreement = DisagreementError(
                    "Critical-point trials disagree",
                    diagnostics={"counts": [t.count for t in result.trials]})
        except BudgetExceededError as e:
            track_skip("critical", e.message)
            report.skip_oracle("critical", e.message)

    verdict = report.compute_verdict()
    if disagreement is not None:
        raise disagreement
    if verdict == "mismatch":
        raise VerifyMismatchError("Theorem and oracle values differ",
                                  diagnostics={"values": report.computed_values()})


RUNNERS = {
    "theorem": _run_theorem,
    "oracle-euler": _run_euler,
    "oracle-critical": _run_critical,
    "verify": _run_verify,
}


def run(job):
    """Execute one job; returns (ReportContext, exit code)"""
    randomized = job.mode in ("oracle-critical", "verify")
    report = ReportContext(job.mode,
                           seed=job.seed if randomized else None,
                           trials=job.trials if randomized else None)
    track_calculation(job.mode, stage="start", input=job.input_path)
    try:
        parsed = load_input(job.input_path)
        RUNNERS[job.mode](job, parsed, report)
    except MLDegreeError as e:
        track_error(type(e).__name__, e.message)
        report.set_error(e)
        return report, e.exit_code
    track_calculation(job.mode, stage="finish", ml_degree=report.ml_degree)
    return report, 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-basis", type=int, default=None,
                        help="maximum Groebner basis size (env MLDEG_BUDGET_BASIS)")
    common.add_argument("--budget-degree", type=int, default=None,
                        help="maximum polynomial degree during Groebner computations")
    common.add_argument("--log-level", default=LOG_LEVEL,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    with_input = argparse.ArgumentParser(add_help=False, parents=[common])
    with_input.add_argument("--input", required=True, help="JSON input file")

    randomized = argparse.ArgumentParser(add_help=False)
    randomized.add_argument("--seed", type=int, default=DEFAULT_SEED)
    randomized.add_argument("--trials", type=int, default=DEFAULT_TRIALS)

    parser = argparse.ArgumentParser(prog="mldeg", description="Exact ML degrees of divisor collections in P^n")
    modes = parser.add_subparsers(dest="command", required=True)
    modes.add_parser("theorem", parents=[with_input], help="Chern class formula for a surjective map")
    oracle = modes.add_parser("oracle", help="independent oracles")
    oracles = oracle.add_subparsers(dest="oracle", required=True)
    oracles.add_parser("euler", parents=[with_input], help="signed Euler characteristic of a line arrangement")
    oracles.add_parser("critical", parents=[with_input, randomized], help="count critical points")
    modes.add_parser("verify", parents=[with_input, randomized], help="theorem and every applicable oracle")
    table = modes.add_parser("table", parents=[common], help="CSV table of theorem values")
    table.add_argument("--n", type=int, required=True)
    table.add_argument("--max-degree", type=int, required=True)
    return parser


def _job_from_args(args):
    budget = Budget(
        max_basis=args.budget_basis if args.budget_basis is not None else default_budget().max_basis,
        max_degree=args.budget_degree if args.budget_degree is not None else default_budget().max_degree,
    )
    mode = f"oracle-{args.oracle}" if args.command == "oracle" else args.command
    return JobSpec(mode=mode, input_path=args.input,
                   seed=getattr(args, "seed", DEFAULT_SEED),
                   trials=getattr(args, "trials", DEFAULT_TRIALS),
                   budget=budget)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")

    if args.command == "table":
        try:
            frame = build_degree_table(args.n, args.max_degree)
        except MLDegreeError as e:
            track_error(type(e).__name__, e.message)
            print(f"table: {e.message}", file=sys.stderr)
            return e.exit_code
        sys.stdout.write(frame.to_csv(index=False))
        return 0

    try:
        job = _job_from_args(args)
    except MLDegreeError as e:
        track_error(type(e).__name__, e.message)
        print(f"{args.command}: {e.message}", file=sys.stderr)
        return e.exit_code

    try:
        report, code = run(job)
    except Exception:
        logger.exception("Unexpected failure")
        return 1
    print(report.to_json())
    print(create_summary(report.to_dict()), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
