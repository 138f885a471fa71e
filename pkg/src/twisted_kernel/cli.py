"""Command-line front end: every evaluation and verification as a subcommand with a JSON report."""

import argparse
import csv
import io
import logging
import sys
import time
from collections.abc import Callable
from pathlib import Path

from pydantic import ValidationError

from twisted_kernel.analysis import estimate_breakdown, min_level, min_weight, zero_scan
from twisted_kernel.arithmetic import DiscriminantDatum, equal_exact, exp_term, gauss_sum, get_characters_by_index
from twisted_kernel.coefficients import (
    TruncationConfig,
    kernel_coeff_general,
    kernel_spec_from_indices,
    poincare_identity_table,
)
from twisted_kernel.sums import h_sum, k_sum, s_sum
from twisted_kernel.sums.expsums import ExpSumValue
from twisted_kernel.sums.verify import DEFAULT_DISCRIMINANTS, gkz_lemma_grid, s_equals_k_grid
from twisted_kernel.utils import InvariantError, RunReport, TwistedKernelError, dumps
from twisted_kernel.utils import config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERDICT = 2

GAUSS_TOLERANCE = 1e-10
DEFAULT_IDENTITY_TERMS = 512
SCAN_COLUMNS = ("sigma", "coeff_re", "coeff_im", "abs", "err")
# argparse bookkeeping that is not part of a report's inputs
NON_INPUTS = {"handler", "command", "out", "timing", "csv", "log_level"}


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _truncation(args: argparse.Namespace) -> TruncationConfig:
    return config.default_truncation(
        rel_tol=args.rel_tol, n_cap=args.n_cap, allow_unstable=True if args.allow_unstable else None
    )


def _workers(args: argparse.Namespace) -> int:
    return args.workers if args.workers is not None else config.workers


def cmd_gauss_sum(args: argparse.Namespace, report: RunReport) -> None:
    (chi,) = get_characters_by_index(config.character_registry, args.modulus, [args.char_index])
    exact = gauss_sum(chi)
    value = ExpSumValue(exact=exact, value=exact.evaluate())
    report.outputs.update(
        {
            "gauss_sum": value,
            "conductor": chi.conductor,
            "parity": chi.parity,
            "primitive": chi.is_primitive,
            "abs_squared": abs(value.value) ** 2,
        }
    )
    if chi.is_primitive:
        norm = exact * exact.conjugate()
        exact_ok = equal_exact(norm, exp_term(norm.modulus, 0, args.modulus))
        numeric_ok = abs(abs(value.value) ** 2 - args.modulus) <= GAUSS_TOLERANCE
        report.add_verdict("gauss-sum-norm", exact_ok and numeric_ok, f"|G(chi)|^2 = {args.modulus}")


def cmd_expsum_k(args: argparse.Namespace, report: RunReport) -> None:
    report.outputs["K"] = k_sum(args.N, args.n, args.m, args.D)


def cmd_expsum_s(args: argparse.Namespace, report: RunReport) -> None:
    report.outputs["S"] = s_sum(args.N, args.n, args.m, args.D)


def cmd_expsum_h(args: argparse.Namespace, report: RunReport) -> None:
    report.outputs["H"] = h_sum(args.N, args.n, args.D, args.r, args.Dp, args.rp)


def cmd_verify_s_equals_k(args: argparse.Namespace, report: RunReport) -> None:
    summary = s_equals_k_grid(
        N_max=args.N_max,
        multiples=args.multiples,
        m_max=args.m_max,
        discriminants=tuple(args.discriminants),
        workers=_workers(args),
    )
    report.outputs["summary"] = summary
    report.add_verdict("s-equals-k", summary.ok, f"{summary.passed}/{summary.instances} exact")


def cmd_verify_gkz_lemma(args: argparse.Namespace, report: RunReport) -> None:
    summary = gkz_lemma_grid(
        N_max=args.N_max,
        nJ_max=args.nJ_max,
        m_max=args.m_max,
        workers=_workers(args),
    )
    report.outputs["summary"] = summary
    report.add_verdict("gkz-lemma", summary.ok, f"{summary.passed}/{summary.instances} instances agree")


def cmd_verify_waldspurger_kernel(args: argparse.Namespace, report: RunReport) -> None:
    r = args.r if args.r is not None else DiscriminantDatum.first(args.D, args.N).r
    rows = poincare_identity_table(2 * args.k, args.N, args.D, r, args.m_max, _truncation(args), n_terms=args.n_terms)
    report.outputs.update({"r": r, "rows": rows})
    for row in rows:
        detail = (
            f"m={row.m}: |critical-closed|={row.diff_critical_closed:.3e}, "
            f"|closed-via_g|={row.diff_closed_via_g:.3e}, |critical-via_g|={row.diff_critical_via_g:.3e}"
        )
        report.add_verdict(f"poincare-identity m={row.m}", row.agree, detail)


def cmd_kernel_coeff(args: argparse.Namespace, report: RunReport) -> None:
    spec = kernel_spec_from_indices(
        args.k,
        args.N,
        args.psi_index,
        args.chi_modulus,
        args.chi_index,
        complex(args.s_re, args.s_im),
        _truncation(args),
        config.character_registry,
    )
    report.outputs["coefficient"] = kernel_coeff_general(spec, args.m, n_terms=args.n_terms)


def cmd_nonvanishing_estimate(args: argparse.Namespace, report: RunReport) -> None:
    breakdown = estimate_breakdown(args.k, args.N, args.h, args.m, args.delta, args.t0, args.half)
    report.outputs.update({"breakdown": breakdown, "margin": breakdown.margin})


def cmd_nonvanishing_min_weight(args: argparse.Namespace, report: RunReport) -> None:
    result = min_weight(args.t0, args.eps, args.N, args.m, args.h, args.grid_points, args.k_max, args.half)
    report.outputs["threshold"] = result
    report.add_verdict("min-weight-found", result.found, f"searched up to k={result.searched_up_to}")


def cmd_nonvanishing_min_level(args: argparse.Namespace, report: RunReport) -> None:
    result = min_level(args.t0, args.eps, args.k, args.m, args.h, args.grid_points, args.n_max, args.half)
    report.outputs["threshold"] = result
    report.add_verdict("min-level-found", result.found, f"searched up to N={result.searched_up_to}")


def cmd_nonvanishing_scan(args: argparse.Namespace, report: RunReport) -> None:
    registry = config.character_registry
    (psi,) = get_characters_by_index(registry, args.N, [args.psi_index])
    (chi,) = get_characters_by_index(registry, args.chi_modulus, [args.chi_index])
    points = zero_scan(
        args.k,
        args.N,
        psi,
        chi,
        args.m,
        args.t0,
        (args.sigma_lo, args.sigma_hi),
        args.step,
        args.threshold,
        _truncation(args),
        n_terms=args.n_terms,
        workers=_workers(args),
    )
    report.outputs.update({"points": points, "flagged": [p.sigma for p in points if p.flagged]})


def scan_csv(report: RunReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    for point in report.outputs["points"]:
        row = (point.sigma, point.coeff.real, point.coeff.imag, point.abs, point.err)
        writer.writerow([repr(value) for value in row])
    return buffer.getvalue()


def _add_global_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rel-tol", type=float, default=None, help="override TruncationConfig.rel_tol")
    parser.add_argument("--n-cap", type=int, default=None, help="override TruncationConfig.n_cap")
    parser.add_argument(
        "--allow-unstable", action="store_true", help="return flagged partial sums instead of failing at n_cap"
    )
    parser.add_argument("--workers", type=int, default=None, help="processes for grid workloads")
    parser.add_argument("--out", type=Path, default=None, help="write the report to FILE instead of stdout")
    parser.add_argument("--timing", action="store_true", help="record wall-clock time in timing_ms")
    parser.add_argument("--log-level", default=None, help="logging level on stderr (default from the environment)")


def _command(
    subparsers: argparse._SubParsersAction, name: str, command: str, handler: Callable, help_text: str
) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, help=help_text, description=help_text)
    parser.set_defaults(handler=handler, command=command)
    return parser


def _add_character_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--psi-index", type=int, default=0, help="canonical index of psi mod N")
    parser.add_argument("--chi-modulus", type=int, required=True)
    parser.add_argument("--chi-index", type=int, required=True, help="canonical index of chi mod its modulus")


def build_parser() -> CliParser:
    parser = CliParser(
        prog="twisted-kernel",
        description="Kernel coefficients, exponential-sum identities and nonvanishing thresholds.",
    )
    _add_global_flags(parser)
    commands = parser.add_subparsers(dest="subcommand", required=True, metavar="COMMAND")

    p = _command(commands, "gauss-sum", "gauss-sum", cmd_gauss_sum, "exact Gauss sum of a Dirichlet character")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--char-index", type=int, required=True)

    expsum = commands.add_parser("expsum", help="finite exponential sums K, S and H")
    kinds = expsum.add_subparsers(dest="kind", required=True, metavar="KIND")
    for kind, handler in (("k", cmd_expsum_k), ("s", cmd_expsum_s)):
        p = _command(kinds, kind, f"expsum {kind}", handler, f"{kind.upper()}_{{N,n}}(m, D)")
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--D", type=int, required=True)
    p = _command(kinds, "h", "expsum h", cmd_expsum_h, "H_{N,n}(D, r, D', r')")
    for flag in ("--N", "--n", "--D", "--r", "--Dp", "--rp"):
        p.add_argument(flag, type=int, required=True)

    verify = commands.add_parser("verify", help="identity verifications")
    checks = verify.add_subparsers(dest="check", required=True, metavar="CHECK")
    p = _command(checks, "s-equals-k", "verify s-equals-k", cmd_verify_s_equals_k, "exact S = K over a grid")
    p.add_argument("--N-max", dest="N_max", type=int, default=6)
    p.add_argument("--multiples", type=int, default=40)
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--discriminants", type=int, nargs="+", default=list(DEFAULT_DISCRIMINANTS))
    p = _command(checks, "gkz-lemma", "verify gkz-lemma", cmd_verify_gkz_lemma, "S against the H divisor sum")
    p.add_argument("--N-max", dest="N_max", type=int, default=4)
    p.add_argument("--nJ-max", dest="nJ_max", type=int, default=30)
    p.add_argument("--m-max", type=int, default=12)
    p = _command(
        checks,
        "waldspurger-kernel",
        "verify waldspurger-kernel",
        cmd_verify_waldspurger_kernel,
        "kernel coefficient against the Shimura lift of the Jacobi Poincare series",
    )
    p.add_argument("--k", type=int, required=True, help="half the elliptic weight 2k")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--r", type=int, default=None, help="square root of D mod 4N (default: least admissible)")
    p.add_argument("--m-max", type=int, default=6)
    p.add_argument("--n-terms", type=int, default=DEFAULT_IDENTITY_TERMS, help="aligned truncation index")

    p = _command(commands, "kernel-coeff", "kernel-coeff", cmd_kernel_coeff, "m-th coefficient of the kernel")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    _add_character_flags(p)
    p.add_argument("--s-re", type=float, required=True)
    p.add_argument("--s-im", type=float, default=0.0)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n-terms", type=int, default=None, help="fixed truncation instead of stabilization")

    nonvanishing = commands.add_parser("nonvanishing", help="nonvanishing estimate, thresholds and zero scans")
    actions = nonvanishing.add_subparsers(dest="action", required=True, metavar="ACTION")
    p = _command(actions, "estimate", "nonvanishing estimate", cmd_nonvanishing_estimate, "one estimate breakdown")
    for flag in ("--k", "--N", "--h", "--m"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--half", choices=["left", "right"], default="left")
    for name, handler, fixed, limit in (
        ("min-weight", cmd_nonvanishing_min_weight, "--N", "--k-max"),
        ("min-level", cmd_nonvanishing_min_level, "--k", "--n-max"),
    ):
        p = _command(actions, name, f"nonvanishing {name}", handler, f"{name.replace('-', ' ')} threshold")
        p.add_argument("--t0", type=float, default=0.0)
        p.add_argument("--eps", type=float, required=True)
        p.add_argument(fixed, type=int, required=True)
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--h", type=int, required=True)
        p.add_argument("--grid-points", type=int, default=512)
        p.add_argument(limit, type=int, default=10_000)
        p.add_argument("--half", choices=["left", "right"], default="left")
    p = _command(actions, "scan", "nonvanishing scan", cmd_nonvanishing_scan, "kernel coefficient along sigma")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    _add_character_flags(p)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--sigma-lo", type=float, required=True)
    p.add_argument("--sigma-hi", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--threshold", type=float, default=0.0)
    p.add_argument("--n-terms", type=int, default=None)
    p.add_argument("--csv", action="store_true", help="emit the scan table as CSV")
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or config.log_level).upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    inputs = {key: value for key, value in sorted(vars(args).items()) if key not in NON_INPUTS}
    report = RunReport(command=args.command, inputs=inputs)

    start = time.perf_counter()
    try:
        args.handler(args, report)
    except InvariantError as exc:
        logger.error("internal identity failed: %s", exc)
        report.add_verdict("internal-invariant", False, str(exc))
    except (TwistedKernelError, ValidationError) as exc:
        print(f"twisted-kernel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        report.timing_ms = int(round((time.perf_counter() - start) * 1000))

    if getattr(args, "csv", False):
        _emit(scan_csv(report), args.out)
    else:
        _emit(dumps(report), args.out)
    return EXIT_OK if report.all_passed else EXIT_VERDICT


if __name__ == "__main__":
    sys.exit(main())
