"""
Random structural suite.

Draws small random problems and checks, on each one, the mosaic identity, the
Merchant factorization, the agreement of G11/G22 with the direct formula,
blockwise against direct assembly, the generalized-inverse identity, equality
with the dense oracle for nonsingular T +- H, the Delta chain and the
essential-polynomial properties. Right defective instances are skipped and
counted.

    python -m scripts.random_suite --count 200 --seed 7
"""

import argparse
import logging
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from colorama import Fore, Style, init
from dotenv import load_dotenv

from analysis.essentials import essentiality_defects
from analysis.sequence import TphProblem, dense_tph, toeplitz_tk
from assembly.inverse import (
    SIGNS,
    pinv_block_toeplitz,
    pinv_tph_blockwise_from_essentials,
    pinv_tph_from_essentials,
    run_pipeline,
)
from assembly.mosaic import merchant_factor_check, mosaic_g_blocks, mosaic_identity_holds
from errors import DefectUnsupported, TphError, ZeroSequence
from exact.matrix import ExactMatrix
from oracle.verify import is_g_inverse, one_inverse_oracle

# Initialize colorama for colored console output
init(autoreset=True)

logger = logging.getLogger(__name__)

ENTRY_RANGE = (-3, 3)
DENOMINATOR_RANGE = (1, 4)


def random_entry(rng, rational_share):
    low, high = ENTRY_RANGE
    if rng.random() < rational_share:
        return Fraction(rng.randint(low, high), rng.randint(*DENOMINATOR_RANGE))
    return Fraction(rng.randint(low, high))


def random_block(rng, p, q, rational_share):
    return ExactMatrix([[random_entry(rng, rational_share) for _ in range(q)] for _ in range(p)], p, q)


def random_problem(rng, p, q, n, m, rational_share=0.2):
    """Problem with entries uniform in -3..3, a share of them replaced by small random rationals."""
    count = n + m + 1
    a = tuple(random_block(rng, p, q, rational_share) for _ in range(count))
    b = tuple(random_block(rng, p, q, rational_share) for _ in range(count))
    return TphProblem(p, q, n, m, a, b)


def _delta_chain_ok(table):
    n, m = table.n, table.m
    delta = table.delta
    monotone = all(delta[k] <= delta[k + 1] for k in range(-m, n + 1))
    return monotone and delta[-m] == table.alpha and delta[n + 1] == table.s - table.omega


def _complement_dims_ok(table, ess):
    n, m = table.n, table.m
    counts = ess.column_index
    if counts.count(-m - 1) != table.alpha:
        return False
    return all(counts.count(k) == table.delta[k + 1] - table.delta[k] for k in range(-m, n + 1))


def check_instance(prob):
    """
    Every structural check on one problem, as a name -> bool map.

    :raises DefectUnsupported: the problem is right defective.
    :raises ZeroSequence: every generating block vanishes.
    """
    checks = {
        "mosaic_identity": mosaic_identity_holds(prob),
        "merchant_factorization": merchant_factor_check(prob),
    }
    state = run_pipeline(prob)
    seq, table, ess, conf = state.sequence, state.table, state.essentials, state.conformation
    checks["delta_chain"] = _delta_chain_ok(table)
    checks["complement_dims"] = _complement_dims_ok(table, ess)
    checks["essentiality"] = not essentiality_defects(seq, ess)

    ta_pinv = pinv_block_toeplitz(seq, ess, conf, table)
    checks["block_toeplitz_g_inverse"] = is_g_inverse(toeplitz_tk(seq, 0), ta_pinv).is_g_inverse
    g11, _, _, g22 = mosaic_g_blocks(prob, ta_pinv)
    for sign, g_block in zip(SIGNS, (g11, g22)):
        tph = dense_tph(prob, sign)
        direct = pinv_tph_from_essentials(prob, ess, conf, table, sign)
        checks[f"mosaic_block_{sign}"] = g_block == direct
        checks[f"blockwise_{sign}"] = pinv_tph_blockwise_from_essentials(prob, ess, conf, table, sign) == direct
        report = is_g_inverse(tph, direct)
        checks[f"g_inverse_{sign}"] = report.is_g_inverse
        if report.invertible:
            checks[f"oracle_{sign}"] = one_inverse_oracle(tph) == direct
    return checks


@dataclass
class SuiteReport:
    seed: int
    total: int = 0
    passed: int = 0
    skipped_defective: int = 0
    skipped_zero: int = 0
    invertible: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self):
        return not self.failures

    def summary(self):
        return (
            f"{self.total} instances (seed {self.seed}): {self.passed} passed, "
            f"{len(self.failures)} failed, {self.skipped_defective} right defective skipped, "
            f"{self.skipped_zero} zero skipped, {self.invertible} nonsingular checks "
            f"in {self.seconds:.1f}s"
        )


def run_suite(count, seed, rational_share=0.2):
    """
    Run ``count`` random instances with p, q in {1, 2} and n, m in 1..4.

    Returns:
        SuiteReport: counts and, for each failing instance, its position,
        dimensions and the names of the failed checks.
    """
    rng = random.Random(seed)
    report = SuiteReport(seed=seed)
    started = time.perf_counter()
    for position in range(count):
        p, q = rng.choice((1, 2)), rng.choice((1, 2))
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        prob = random_problem(rng, p, q, n, m, rational_share)
        report.total += 1
        dims = (p, q, n, m)
        try:
            checks = check_instance(prob)
        except DefectUnsupported as exc:
            logger.info("instance %d %s skipped: omega = %d", position, dims, exc.omega)
            report.skipped_defective += 1
            continue
        except ZeroSequence:
            report.skipped_zero += 1
            continue
        except TphError as exc:
            logger.warning("instance %d %s raised %s: %s", position, dims, type(exc).__name__, exc)
            report.failures.append((position, dims, [type(exc).__name__]))
            continue
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            logger.warning("instance %d %s failed %s", position, dims, failed)
            report.failures.append((position, dims, failed))
        else:
            report.passed += 1
        report.invertible += sum(name.startswith("oracle_") for name in checks)
    report.seconds = time.perf_counter() - started
    return report


def main(argv=None):
    load_dotenv()
    parser = argparse.ArgumentParser(description="Random structural suite for the T +- H inverses.")
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--rational-share", type=float, default=0.2)
    parser.add_argument("--log-level", default="WARNING", type=str.upper)
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, format="[%(asctime)s] %(levelname)s: %(message)s")

    report = run_suite(args.count, args.seed, args.rational_share)
    color = Fore.GREEN if report.ok else Fore.RED
    print(color + report.summary() + Style.RESET_ALL)
    for position, dims, failed in report.failures:
        print(Fore.RED + f"  #{position} (p, q, n, m) = {dims}: {', '.join(failed)}" + Style.RESET_ALL)
    return 0 if report.ok else 4


if __name__ == "__main__":
    sys.exit(main())
