"""
The block T+H problem and its generating sequence.

T has blocks a_(i-j) and H has blocks b_(i+j); both are (n+1)p x (m+1)q. The
generating blocks A_j (2p x 2q, j = -m..n) pack both into one block Toeplitz
family T_k whose right kernels drive the index analysis.
"""

import logging
from dataclasses import dataclass

from errors import IndexRangeError, ShapeMismatch
from exact.laurent import LaurentMatrix
from exact.matrix import ExactMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TphProblem:
    """
    Block sizes and coefficient sequences of T and H.

    ``a`` holds a_(-m), ..., a_n and ``b`` holds b_0, ..., b_(n+m); every
    block is a p x q ExactMatrix.
    """

    p: int
    q: int
    n: int
    m: int
    a: tuple
    b: tuple

    def __post_init__(self):
        if min(self.p, self.q) < 1 or min(self.n, self.m) < 0:
            raise ShapeMismatch(f"Invalid dimensions p={self.p} q={self.q} n={self.n} m={self.m}")
        count = self.n + self.m + 1
        if len(self.a) != count or len(self.b) != count:
            raise ShapeMismatch(
                f"Expected {count} a-blocks and {count} b-blocks, got {len(self.a)} and {len(self.b)}"
            )
        for label, blocks in (("a", self.a), ("b", self.b)):
            for blk in blocks:
                if blk.shape != (self.p, self.q):
                    raise ShapeMismatch(f"Block of {label} is {blk.rows}x{blk.cols}, expected {self.p}x{self.q}")

    @classmethod
    def from_scalars(cls, n, m, a, b):
        """Scalar (p = q = 1) problem from plain number sequences."""
        return cls(
            1, 1, n, m,
            tuple(ExactMatrix([[x]]) for x in a),
            tuple(ExactMatrix([[x]]) for x in b),
        )

    def a_block(self, j):
        if not -self.m <= j <= self.n:
            raise IndexRangeError(f"a_{j} is outside -m..n = {-self.m}..{self.n}")
        return self.a[j + self.m]

    def b_block(self, j):
        if not 0 <= j <= self.n + self.m:
            raise IndexRangeError(f"b_{j} is outside 0..n+m = 0..{self.n + self.m}")
        return self.b[j]

    @property
    def tph_shape(self):
        return (self.n + 1) * self.p, (self.m + 1) * self.q

    @property
    def pinv_shape(self):
        return (self.m + 1) * self.q, (self.n + 1) * self.p


def transpose_problem(prob):
    """Problem whose T, H are the transposes of prob's: a'_k = a_(-k)^T, b'_k = b_k^T."""
    return TphProblem(
        p=prob.q,
        q=prob.p,
        n=prob.m,
        m=prob.n,
        a=tuple(prob.a_block(-k).T for k in range(-prob.n, prob.m + 1)),
        b=tuple(blk.T for blk in prob.b),
    )


def dense_t(prob):
    rows, cols = prob.n + 1, prob.m + 1
    return ExactMatrix.block(
        [[prob.a_block(i - j) for j in range(cols)] for i in range(rows)],
        [prob.p] * rows,
        [prob.q] * cols,
    )


def dense_h(prob):
    rows, cols = prob.n + 1, prob.m + 1
    return ExactMatrix.block(
        [[prob.b_block(i + j) for j in range(cols)] for i in range(rows)],
        [prob.p] * rows,
        [prob.q] * cols,
    )


def dense_tph(prob, sign):
    """Explicit T+H (sign "plus") or T-H (sign "minus")."""
    t, h = dense_t(prob), dense_h(prob)
    if sign == "plus":
        return t + h
    if sign == "minus":
        return t - h
    raise ValueError(f"Unknown sign {sign!r}")


@dataclass(frozen=True)
class ASequence:
    """Generating blocks A_(-m..n) and their Laurent generator A(z)."""

    p: int
    q: int
    n: int
    m: int
    blocks: tuple
    generator: LaurentMatrix

    def block(self, j):
        """A_j, or the zero block outside -m..n."""
        if -self.m <= j <= self.n:
            return self.blocks[j + self.m]
        return ExactMatrix.zeros(2 * self.p, 2 * self.q)

    @property
    def s(self):
        return 2 * (self.p + self.q)

    def is_zero(self):
        return all(blk.is_zero() for blk in self.blocks)


def build_generating_sequence(prob):
    """
    A_j = [[b_(n-j), a_(n-m-j)], [a_j, b_(j+m)]] for j = -m..n.

    :param prob: a TphProblem.
    :return: the ASequence with generator coefficients A_j at z^j.
    """
    n, m = prob.n, prob.m
    blocks = []
    for j in range(-m, n + 1):
        blocks.append(
            ExactMatrix.block(
                [
                    [prob.b_block(n - j), prob.a_block(n - m - j)],
                    [prob.a_block(j), prob.b_block(j + m)],
                ],
                [prob.p, prob.p],
                [prob.q, prob.q],
            )
        )
    generator = LaurentMatrix(
        {j: blocks[j + m] for j in range(-m, n + 1)}, 2 * prob.p, 2 * prob.q
    )
    return ASequence(prob.p, prob.q, n, m, tuple(blocks), generator)


def sigma_r(seq, r):
    """
    sigma_R{R} = sum_j A_(-j) r_j, the z^0 coefficient of A(z)R(z).

    R must have 2q rows and powers within [-n, m].
    """
    if r.rows != 2 * seq.q:
        raise ShapeMismatch(f"sigma_R needs {2 * seq.q} rows, got {r.rows}")
    if not r.is_zero() and (r.lo < -seq.n or r.hi > seq.m):
        raise IndexRangeError(f"Powers {r.lo}..{r.hi} leave the range [-n, m] = [{-seq.n}, {seq.m}]")
    total = ExactMatrix.zeros(2 * seq.p, r.cols)
    for j, coeff in r.items():
        total = total + seq.block(-j) @ coeff
    return total


def toeplitz_tk(seq, k):
    """
    Member T_k of the block Toeplitz family, -m <= k <= n.

    Block (i, j) is A_(k+i-j); the shape is 2p(n-k+1) x 2q(k+m+1).
    """
    if not -seq.m <= k <= seq.n:
        raise IndexRangeError(f"T_{k} is outside the family -m..n = {-seq.m}..{seq.n}")
    rows, cols = seq.n - k + 1, k + seq.m + 1
    return ExactMatrix.block(
        [[seq.block(k + i - j) for j in range(cols)] for i in range(rows)],
        [2 * seq.p] * rows,
        [2 * seq.q] * cols,
    )
