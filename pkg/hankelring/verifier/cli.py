import argparse
import logging
from typing import List, Optional

import pandas as pd

from hankelring.exceptions import PreconditionError
from hankelring.groebner.cache import GroebnerCache
from hankelring.utils.configuration import (
    ConfigurationError,
    ConfigurationManager,
    SchemaViolation,
    SettingError,
)
from hankelring.verifier.reports import (
    ReportWriteError,
    ReportWriter,
    Status,
    reports_to_dataframe,
    summarize,
)
from hankelring.verifier.suites import (
    SuiteConfig,
    UnknownSuiteError,
    explain,
    failures,
    run_suites,
)

logger = logging.getLogger(__name__)

DEFAULT_OUTPUT = "hankelring-report.json"
EXIT_FAILURES = 1
EXIT_USAGE = 2


def parse_range(text: str) -> List[int]:
    """`a` or `a:b`, as an inclusive range [a, b]."""
    try:
        if ":" in text:
            first, last = (int(part) for part in text.split(":", 1))
        else:
            first = last = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a:b, got {text!r}")
    return [first, last]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hankelring",
        description="Verify the structure of Hankel determinantal rings by exact computation.",
    )
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="run verification suites over a parameter grid")
    check.add_argument("--preset", default="desk", help="named configuration to start from")
    check.add_argument("--config", help="settings file of `key = value` lines")
    check.add_argument("--t", type=parse_range, help="t or a range a:b")
    check.add_argument("--n", type=parse_range, help="n or a range a:b")
    check.add_argument("--k", type=parse_range, help="k or a range a:b for the p<k> suites")
    check.add_argument(
        "--prime", dest="primes", type=int, action="append", help="a characteristic, repeatable"
    )
    check.add_argument("--e-max", dest="e_max", type=int, help="largest Frobenius exponent e")
    check.add_argument(
        "--suite", dest="suites", action="append", help="suite name or 'all', repeatable"
    )
    check.add_argument("--budget", dest="step_budget", type=int, help="Gröbner step budget")
    check.add_argument("--seed", type=int, help="seed of the random samples")
    check.add_argument("--samples", type=int, help="random samples per check")
    check.add_argument("--workers", type=int, help="worker processes")
    check.add_argument("--cache-dir", dest="cache_dir", help="directory of the Gröbner disk cache")
    check.add_argument("--out", default=DEFAULT_OUTPUT, help="path of the JSON report")
    check.add_argument("--csv", help="also export the summary table as CSV")
    check.add_argument(
        "--timings", action="store_const", const=True, help="record wall-clock time per report"
    )

    describe = commands.add_parser("explain", help="describe a suite, or list them all")
    describe.add_argument("suite", nargs="?", help="suite name")

    cache = commands.add_parser("cache", help="manage the Gröbner disk cache")
    cache_commands = cache.add_subparsers(dest="cache_command", required=True)
    clear = cache_commands.add_parser("clear", help="delete every cache entry")
    clear.add_argument("--cache-dir", dest="cache_dir", required=True)
    return parser


OVERRIDE_KEYS = (
    "t",
    "n",
    "k",
    "primes",
    "e_max",
    "suites",
    "step_budget",
    "seed",
    "samples",
    "workers",
    "cache_dir",
    "timings",
)


def resolve_config(args: argparse.Namespace) -> SuiteConfig:
    """Preset, then settings file, then flags; the merged settings are validated."""
    manager = ConfigurationManager(initial_configuration=args.preset)
    if args.config:
        manager.load_key_value_file(args.config)
    settings = manager.resolve({key: getattr(args, key) for key in OVERRIDE_KEYS})
    return SuiteConfig.from_settings(settings)


def summary_table(reports) -> pd.DataFrame:
    frame = reports_to_dataframe(reports)
    if frame.empty:
        return pd.DataFrame(columns=[s.value for s in Status])
    table = frame.pivot_table(
        index="suite", columns="status", values="check", aggfunc="count", fill_value=0
    )
    return table.reindex(columns=[s.value for s in Status], fill_value=0)


def run_check(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    reports = run_suites(config)
    ReportWriter().write(args.out, reports, config.to_dict(), include_timing=config.timings)

    table = summary_table(reports)
    print(table.to_string())
    if args.csv:
        table.to_csv(args.csv)
    summary = summarize(reports)
    print(", ".join(f"{key}: {value}" for key, value in summary.items()))
    exhausted = summary[Status.BUDGET_EXHAUSTED.value]
    if exhausted:
        logger.warning(f"{exhausted} checks ran out of budget; raise --budget to complete them.")
    failed = failures(reports)
    for report in failed:
        logger.warning(f"{report.suite}/{report.check} failed on {report.parameters}.")
    return EXIT_FAILURES if failed else 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "explain":
            print(explain(args.suite))
            return 0
        if args.command == "cache":
            removed = GroebnerCache(args.cache_dir).clear()
            print(f"Removed {removed} cache entries from {args.cache_dir}.")
            return 0
        return run_check(args)
    except (
        ConfigurationError,
        SchemaViolation,
        SettingError,
        UnknownSuiteError,
        PreconditionError,
    ) as e:
        parser.error(str(e))
    except ReportWriteError as e:
        logger.error(str(e))
        return EXIT_USAGE
    return EXIT_USAGE


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
