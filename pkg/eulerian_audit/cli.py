"""Command-line front end: audit, seq, poly, series, padic, crosscheck."""
import argparse
import logging
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional

from . import __version__
from .bfile import CATALOG, crosscheck, read_bfile
from .classical_seq import (
    bernstein_poly,
    eulerian_fraction,
    eulerian_poly,
    eulerian_triangle_row,
    named_number,
    polylog_neg,
    stirling2,
)
from .config import Settings
from .errors import EulerianAuditError, UnknownFamilyError
from .exact_arith import format_rat, parse_rat
from .gen_eulerian import FamilySource, IdentityAuditor, gen_eulerian
from .identity_registry import apply_overrides, resolve_ids
from .padic_lab import check_functional_equation, gap_growth_constant, gaps_nondecreasing, witt_table
from .power_series import GF_IDS, gf_coefficients
from .report_generator import ReportGenerator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DEVIATION = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

SCALAR_FAMILIES = ("bernoulli", "euler", "genocchi", "minus-one")
ROW_FAMILIES = ("eulerian-triangle", "stirling2")
POLY_FAMILIES = (
    "bernstein", "eulerian-G", "eulerian-S", "eulerian-fraction", "gen-eulerian", "polylog-neg",
)
FAMILIES = tuple(sorted(SCALAR_FAMILIES + ROW_FAMILIES + POLY_FAMILIES))


def _evaluated(value, point) -> str:
    return value.to_text() if point is None else format_rat(value.eval(point))


def family_value(
    family: str,
    n: int,
    point=None,
    k: Optional[int] = None,
    convention: str = "S",
) -> str:
    """Exact text for member n of a family; polynomials are evaluated when a point is given."""
    if family not in FAMILIES:
        raise UnknownFamilyError(family, FAMILIES)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if family == "eulerian-triangle":
        return " ".join(format_rat(v) for v in eulerian_triangle_row(n).entries)
    if family == "stirling2":
        return " ".join(format_rat(stirling2(n, j)) for j in range(n + 1))
    if family == "minus-one":
        return format_rat(gf_coefficients("minus_one", n)[n])
    if family in SCALAR_FAMILIES:
        return format_rat(named_number(family, n))
    if family == "eulerian-S":
        return _evaluated(eulerian_poly(n, "S"), point)
    if family == "eulerian-G":
        return _evaluated(eulerian_poly(n, "G"), point)
    if family == "eulerian-fraction":
        return _evaluated(eulerian_fraction(n, convention), point)
    if family == "polylog-neg":
        return _evaluated(polylog_neg(n), point)
    if family == "bernstein":
        if k is None:
            raise ValueError("bernstein needs --k")
        return _evaluated(bernstein_poly(k, n), point)
    member = gen_eulerian(n)
    if point is not None:
        return member.at(point).to_text()
    return f"q = {member.q.to_text('a')}, grade = {member.grade}"


def sequence_text(family: str, n_max: int, point=None, k: Optional[int] = None, convention: str = "S") -> str:
    values = [family_value(family, n, point, k, convention) for n in range(n_max + 1)]
    if family in SCALAR_FAMILIES or (point is not None and family != "gen-eulerian"):
        return ", ".join(values)
    if family in ROW_FAMILIES:
        return " / ".join(values)
    return "\n".join(f"n={n}: {value}" for n, value in enumerate(values))


def _point(text: Optional[str]):
    return None if text is None else parse_rat(text)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    Path(out).write_text(text, encoding="utf-8")
    logger.info("wrote %s", out)


# ----------------------------------------------------------------------
# Sub-commands
# ----------------------------------------------------------------------


def cmd_audit(args: argparse.Namespace, settings: Settings) -> int:
    registry = apply_overrides(args.expect or [])
    ids = resolve_ids(args.identity, registry)
    auditor = IdentityAuditor(registry, source=FamilySource(args.source), workers=settings.workers)

    started = datetime.now(timezone.utc)
    clock = time.perf_counter()
    verdicts = auditor.audit(ids, settings.n_max)
    elapsed = time.perf_counter() - clock

    generator = ReportGenerator()
    report = generator.generate(verdicts, registry, ids, started, elapsed)
    _emit(generator.render(report, settings.output_format, args.omit_header), args.out)
    logger.info(
        "audit done: %d pass, %d fail, %d deviations in %.2fs",
        report.summary.passed, report.summary.failed, report.summary.deviations, elapsed,
    )
    return EXIT_DEVIATION if report.summary.deviations else EXIT_OK


def cmd_seq(args: argparse.Namespace, settings: Settings) -> int:
    _emit(sequence_text(args.name, settings.n_max, _point(args.a), args.k, args.convention), None)
    return EXIT_OK


def cmd_poly(args: argparse.Namespace, settings: Settings) -> int:
    _emit(family_value(args.family, args.n, _point(args.a), args.k, args.convention), None)
    return EXIT_OK


def cmd_series(args: argparse.Namespace, settings: Settings) -> int:
    gf_id = args.family.replace("-", "_")
    if gf_id not in GF_IDS:
        raise UnknownFamilyError(args.family, GF_IDS)
    values = gf_coefficients(gf_id, settings.n_max, _point(args.a), args.k)
    texts = [v.to_text() if hasattr(v, "to_text") else format_rat(v) for v in values]
    _emit("\n".join(f"c_{n} = {t}" for n, t in enumerate(texts)), None)
    return EXIT_OK


def cmd_padic(args: argparse.Namespace, settings: Settings) -> int:
    rows = witt_table(args.n, args.p, args.levels, cap=settings.padic_cap, workers=settings.workers)
    generator = ReportGenerator()
    lines = [generator.table_text(generator.witt_frame(rows)).rstrip("\n")]
    constant = gap_growth_constant(rows)
    lines.append(f"gap valuations nondecreasing: {gaps_nondecreasing(rows)}")
    lines.append("gap growth constant c: " + ("none (all gaps zero)" if constant is None else str(constant)))
    residual, valuation = check_functional_equation(args.n, args.p, args.levels, settings.padic_cap)
    lines.append(f"functional equation residual at N={args.levels}: {format_rat(residual)} (v_p = {valuation})")
    _emit("\n".join(lines), None)
    return EXIT_OK


def cmd_crosscheck(args: argparse.Namespace, settings: Settings) -> int:
    if args.name not in CATALOG:
        raise UnknownFamilyError(args.name, CATALOG.keys())
    result = crosscheck(args.name, read_bfile(args.bfile), args.offset)
    if result.matched:
        _emit(
            f"{args.name}: full match over {result.compared} entries "
            f"(indices {result.first_index}..{result.last_index})",
            None,
        )
        return EXIT_OK
    _emit(
        f"{args.name}: mismatch at index {result.mismatch_index}: "
        f"b-file {result.expected_value}, computed {result.actual_value}",
        None,
    )
    return EXIT_DEVIATION


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eulerian-audit", description="Exact Eulerian identity audit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (default), ERROR")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("audit", help="Run registry identities and write a report")
    s.add_argument("--identity", default="all", help="'all' or comma-separated identity ids")
    s.add_argument("--n-max", type=int, default=None, help="Largest n audited (default 10)")
    s.add_argument("--format", dest="output_format", default=None, help="json (default) or csv")
    s.add_argument("--out", default=None, help="Report path (default: stdout)")
    s.add_argument("--source", default="recurrence", choices=[f.value for f in FamilySource],
                   help="Route used for the generalized family in as-stated forms")
    s.add_argument("--expect", action="append", metavar="ID:FORM=PATTERN",
                   help="Override a registry expectation (repeatable)")
    s.add_argument("--omit-header", action="store_true", help="Drop the timestamp header from JSON")
    s.add_argument("--workers", type=int, default=None, help="Concurrent audits (default 4)")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("seq", help="Print a family for n = 0..n_max")
    s.add_argument("--name", required=True, help=", ".join(FAMILIES))
    s.add_argument("--n-max", type=int, default=None)
    s.add_argument("--a", default=None, help="Rational evaluation point, e.g. -1/2")
    s.add_argument("--k", type=int, default=None, help="Bernstein index")
    s.add_argument("--convention", default="S", choices=["S", "G"], help="Eulerian fraction convention")
    s.set_defaults(func=cmd_seq)

    s = sub.add_parser("poly", help="Print one member of a family")
    s.add_argument("--family", required=True, help=", ".join(FAMILIES))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--a", default=None, help="Rational evaluation point")
    s.add_argument("--k", type=int, default=None, help="Bernstein index")
    s.add_argument("--convention", default="S", choices=["S", "G"])
    s.set_defaults(func=cmd_poly)

    s = sub.add_parser("series", help="Print factorial-normalized generating-function coefficients")
    s.add_argument("--family", required=True, help=", ".join(GF_IDS))
    s.add_argument("--n-max", type=int, default=None)
    s.add_argument("--a", default=None, help="Rational point instead of the symbol")
    s.add_argument("--k", type=int, default=None, help="Bernstein index")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("padic", help="Fermionic partial sums and Witt-formula gap valuations")
    s.add_argument("--p", type=int, required=True, help="Odd prime")
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--levels", type=int, required=True, help="Largest level N")
    s.add_argument("--cap", type=int, default=None, help="Largest allowed p^N (default 10^7)")
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_padic)

    s = sub.add_parser("crosscheck", help="Compare an integer sequence with a local b-file")
    s.add_argument("--name", required=True, help=", ".join(CATALOG))
    s.add_argument("--bfile", required=True, help="Path to the b-file")
    s.add_argument("--offset", type=int, default=0, help="b-file index of the sequence's first term")
    s.set_defaults(func=cmd_crosscheck)
    return p


def configure_logging(level: str) -> None:
    """One stderr handler on the package logger, replaced on every call."""
    package_logger = logging.getLogger("eulerian_audit")
    for handler in list(package_logger.handlers):
        if getattr(handler, "is_cli_handler", False):
            package_logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.is_cli_handler = True
    package_logger.addHandler(handler)
    package_logger.setLevel(level)


def _settings(args: argparse.Namespace) -> Settings:
    return Settings.from_env(
        n_max=getattr(args, "n_max", None),
        padic_cap=getattr(args, "cap", None),
        workers=getattr(args, "workers", None),
        output_format=getattr(args, "output_format", None),
        log_level=args.log_level,
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = _settings(args)
    except ValueError as e:
        print(f"error: invalid settings: {e}", file=sys.stderr)
        return EXIT_ERROR
    configure_logging(settings.log_level)
    try:
        return args.func(args, settings)
    except (EulerianAuditError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except Exception:
        logger.exception("internal error while running %s", args.cmd)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
