import argparse
import logging
import os
import sys
from logging.handlers import RotatingFileHandler

from colorama import Fore, Style, init
from dotenv import load_dotenv

from analysis.indices import compute_index_table, kernel_bases
from analysis.sequence import build_generating_sequence, dense_tph
from assembly.inverse import METHODS, SIGNS, PinvOptions, pinv_tph, pinv_tph_pair
from diagnostics import format_index_table, format_oracle_report, format_result
from errors import TphError
from oracle.verify import is_g_inverse, one_inverse_oracle
from scripts.problem_io import ResultFile, load_matrix, load_problem, save_matrix, write_json

# Initialize colorama for colored console output
init(autoreset=True)

logger = logging.getLogger("tph")

LOG_FORMAT = "[%(asctime)s] %(levelname)s: %(message)s"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
TRUTHY = {"1", "true", "yes", "on"}


def env_flag(name):
    return os.getenv(name, "").strip().lower() in TRUTHY


def _not_echoed(record):
    return not getattr(record, "echoed", False)


def setup_logging(level="WARNING", log_file=None):
    """
    Configure the root logger: stderr always, plus a rotating file when
    ``log_file`` is set. Handlers from an earlier call are replaced.
    Records already printed by InversionManager.log skip the stderr handler.
    """
    root = logging.getLogger()
    for handler in [h for h in root.handlers if getattr(h, "_tph_handler", False)]:
        root.removeHandler(handler)
        handler.close()
    formatter = logging.Formatter(LOG_FORMAT)
    console = logging.StreamHandler(sys.stderr)
    console.addFilter(_not_echoed)
    handlers = [console]
    if log_file:
        handlers.append(RotatingFileHandler(log_file, maxBytes=1024 * 1024, backupCount=5))
    for handler in handlers:
        handler._tph_handler = True
        handler.setFormatter(formatter)
        root.addHandler(handler)
    root.setLevel(level)


class InversionManager:
    """
    Runs the command-line operations on problem and matrix files.

    JSON results go to stdout or the requested file; progress and
    diagnostics go to stderr.
    """

    def __init__(self, options):
        self.options = options

    def log(self, message, color=Fore.CYAN):
        """
        Print a colored message to stderr and mirror it into the log file.

        :param message: The message to print.
        :param color: colorama foreground color.
        """
        print(color + message + Style.RESET_ALL, file=sys.stderr)
        logger.info(message, extra={"echoed": True})

    def analyze(self, path, out=None):
        prob = load_problem(path)
        self.log(f"Analyzing {path} (p={prob.p}, q={prob.q}, n={prob.n}, m={prob.m})")
        seq = build_generating_sequence(prob)
        table = compute_index_table(seq, kernel_bases(seq))
        self.log(format_index_table(table), Fore.RESET)
        write_json(ResultFile.from_table(table).to_dict(), out)
        return 0

    def pinv(self, path, sign, out=None):
        prob = load_problem(path)
        self.log(f"Inverting T {sign} H for {path} ({self.options.method})")
        if sign == "both":
            results = pinv_tph_pair(prob, self.options)
            write_json([ResultFile.from_result(r).to_dict() for r in results], out)
        else:
            results = (pinv_tph(prob, sign, self.options),)
            write_json(ResultFile.from_result(results[0]).to_dict(), out)
        for result in results:
            self.log(format_result(result), Fore.RESET)
        if not all(r.checks_passed for r in results):
            self.log("Self-check failed", Fore.RED)
            return 4
        return 0

    def verify(self, path_a, path_x):
        a, x = load_matrix(path_a), load_matrix(path_x)
        report = is_g_inverse(a, x)
        write_json(report.as_dict())
        self.log(format_oracle_report(report), Fore.RESET)
        if not report.is_g_inverse:
            self.log("X is not a generalized inverse of A", Fore.RED)
            return 4
        return 0

    def oracle(self, path, out=None):
        a = load_matrix(path)
        x = one_inverse_oracle(a)
        report = is_g_inverse(a, x)
        save_matrix(x, out, report=report.as_dict())
        self.log(format_oracle_report(report), Fore.RESET)
        return 0

    def dense(self, path, sign, out=None):
        prob = load_problem(path)
        save_matrix(dense_tph(prob, sign), out)
        return 0


class UsageExitParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = UsageExitParser(
        prog="tph",
        description="Exact generalized inverses of block Toeplitz-plus-Hankel matrices.",
    )
    parser.add_argument("--log-level", choices=LOG_LEVELS, type=str.upper, help="Overrides TPH_LOG_LEVEL.")
    parser.add_argument("--log-file", help="Rotating log file; overrides TPH_LOG_FILE.")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="Report the index table of a problem.")
    analyze.add_argument("problem")
    analyze.add_argument("--out")

    pinv = commands.add_parser("pinv", help="Generalized inverse of T+H and/or T-H.")
    pinv.add_argument("problem")
    pinv.add_argument("--sign", choices=SIGNS + ("both",), default="plus")
    pinv.add_argument("--method", choices=METHODS, default="direct")
    pinv.add_argument("--check", action="store_true", help="Run the self-checks (also forced by TPH_CHECK).")
    pinv.add_argument(
        "--allow-transpose-fallback",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="Retry on the transposed problem when omega > 0; defaults to TPH_ALLOW_TRANSPOSE_FALLBACK.",
    )
    pinv.add_argument("--out")

    verify = commands.add_parser("verify", help="Check AXA = A for two matrix files.")
    verify.add_argument("matrix")
    verify.add_argument("candidate")

    oracle = commands.add_parser("oracle", help="Dense Moore-Penrose inverse of a matrix file.")
    oracle.add_argument("matrix")
    oracle.add_argument("--out")

    dense = commands.add_parser("dense", help="Write the dense T+H or T-H of a problem.")
    dense.add_argument("problem")
    dense.add_argument("--sign", choices=SIGNS, default="plus")
    dense.add_argument("--out")
    return parser


def pinv_options(args):
    fallback = args.allow_transpose_fallback
    if fallback is None:
        fallback = env_flag("TPH_ALLOW_TRANSPOSE_FALLBACK")
    return PinvOptions(
        method=args.method,
        check=args.check or env_flag("TPH_CHECK"),
        allow_transpose_fallback=fallback,
    )


def run_command(manager, args):
    if args.command == "analyze":
        return manager.analyze(args.problem, args.out)
    if args.command == "pinv":
        return manager.pinv(args.problem, args.sign, args.out)
    if args.command == "verify":
        return manager.verify(args.matrix, args.candidate)
    if args.command == "oracle":
        return manager.oracle(args.matrix, args.out)
    return manager.dense(args.problem, args.sign, args.out)


def main(argv=None):
    """
    Entry point of the command line; returns the process exit code.
    """
    # Load environment variables
    load_dotenv()
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1

    level = args.log_level or os.getenv("TPH_LOG_LEVEL", "WARNING").upper()
    if level not in LOG_LEVELS:
        level = "WARNING"
    setup_logging(level, args.log_file or os.getenv("TPH_LOG_FILE") or None)

    options = pinv_options(args) if args.command == "pinv" else PinvOptions()
    manager = InversionManager(options)
    try:
        return run_command(manager, args)
    except TphError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        manager.log(f"{type(exc).__name__}: {exc}", Fore.RED)
        return exc.exit_code


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print(Fore.YELLOW + "Interrupted by user." + Style.RESET_ALL, file=sys.stderr)
        sys.exit(130)
    except Exception as e:
        logger.exception("Unexpected failure")
        print(Fore.RED + f"An error occurred: {e}" + Style.RESET_ALL, file=sys.stderr)
        sys.exit(1)
