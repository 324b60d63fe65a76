"""Kernel dimensions, defects and indices of a generating sequence."""

import logging
from dataclasses import dataclass, field
from itertools import groupby

from errors import InternalConsistencyError, ZeroSequence
from exact.matrix import right_kernel_basis
from analysis.sequence import toeplitz_tk

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IndexTable:
    """
    Index data of the sequence A_(-m..n).

    d maps k = -m-1..n+1 to dim N_k; delta maps k = -m..n+1 to d_k - d_(k-1).
    mu lists the 2(p+q) - omega indices in ascending order; distinct pairs
    each index lambda with its multiplicity nu.
    """

    p: int
    q: int
    n: int
    m: int
    d: dict
    delta: dict
    alpha: int
    omega: int
    mu: tuple
    distinct: tuple
    multiplicities: dict = field(default_factory=dict)

    @property
    def s(self):
        return 2 * (self.p + self.q)


def kernel_bases(seq):
    """
    Canonical right kernel bases of T_k for k = -m..n.

    Column vectors stack the coefficients r_0, ..., r_(k+m) of a polynomial in
    N_k, each 2q long.
    """
    bases = {}
    for k in range(-seq.m, seq.n + 1):
        bases[k] = right_kernel_basis(toeplitz_tk(seq, k))
        logger.debug("dim N_%d = %d", k, bases[k].cols)
    return bases


def indices_from_deltas(delta, lo, hi, alpha):
    """
    Indices read off the nondecreasing chain delta[lo..hi].

    Index lo-1 appears alpha times; every k in lo..hi-1 appears
    delta[k+1] - delta[k] times.
    """
    mu = [lo - 1] * alpha
    for k in range(lo, hi):
        jump = delta[k + 1] - delta[k]
        if jump < 0:
            raise InternalConsistencyError(f"Delta decreases between {k} and {k + 1}: {delta}")
        mu.extend([k] * jump)
    return tuple(mu)


def compute_index_table(seq, kernels=None):
    """
    Build the index table of a nonzero sequence.

    :param seq: the ASequence.
    :param kernels: optional output of kernel_bases(seq), to avoid recomputing it.
    :raises ZeroSequence: if every A_j vanishes.
    """
    if seq.is_zero():
        raise ZeroSequence("The generating sequence is identically zero")
    if kernels is None:
        kernels = kernel_bases(seq)
    n, m = seq.n, seq.m
    d = {-m - 1: 0}
    for k in range(-m, n + 1):
        d[k] = kernels[k].cols
    d[n + 1] = 2 * seq.q * (n + m + 2)
    delta = {k: d[k] - d[k - 1] for k in range(-m, n + 2)}
    alpha = delta[-m]
    omega = seq.s - delta[n + 1]
    mu = indices_from_deltas(delta, -m, n + 1, alpha)
    distinct = tuple((lam, len(list(group))) for lam, group in groupby(mu))
    logger.debug("indices %s, alpha %d, omega %d", mu, alpha, omega)
    return IndexTable(
        p=seq.p,
        q=seq.q,
        n=n,
        m=m,
        d=d,
        delta=delta,
        alpha=alpha,
        omega=omega,
        mu=mu,
        distinct=distinct,
        multiplicities=dict(distinct),
    )
