"""The 0/1 selection matrix Pi and its restrictions pi_j to column groups."""

import logging
from dataclasses import dataclass

from exact.matrix import ExactMatrix

logger = logging.getLogger(__name__)


def column_groups(p, q):
    """Column ranges of R(z) of widths q, q, p, p."""
    bounds = [0, q, 2 * q, 2 * q + p, 2 * q + 2 * p]
    return [range(bounds[i], bounds[i + 1]) for i in range(4)]


def index_groups(mu, p, q):
    """d_1..d_4: the column indices mu split along the column groups."""
    return tuple(tuple(mu[i] for i in group) for group in column_groups(p, q))


@dataclass(frozen=True)
class PiStructure:
    """
    Blocks Pi_k (k = -n..m, each s x s diagonal) and the assembled
    (m+1)s x (n+1)s matrix with block (r, c) = Pi_(r-c).

    ``groups`` holds pi_1..pi_4: the same construction applied to the
    indices d_1..d_4 of each column group.
    """

    s: int
    n: int
    m: int
    blocks: dict
    assembled: ExactMatrix
    groups: tuple


def pi_blocks(indices, n, m):
    """
    Diagonal blocks Pi_k for a list of column indices: position i gets a one
    on Pi_(-indices[i]). Indices with -lambda outside [-n, m] contribute nothing.
    """
    diagonals = {k: [0] * len(indices) for k in range(-n, m + 1)}
    for i, lam in enumerate(indices):
        if -n <= -lam <= m:
            diagonals[-lam][i] = 1
        else:
            logger.debug("index %d falls outside the Pi range and is dropped", lam)
    return {k: ExactMatrix.diagonal(values) for k, values in diagonals.items()}


def assemble_pi(blocks, n, m):
    width = blocks[0].rows
    return ExactMatrix.block(
        [[blocks[r - c] for c in range(n + 1)] for r in range(m + 1)],
        [width] * (m + 1),
        [width] * (n + 1),
    )


def pi_from_indices(indices, n, m):
    """pi_j: the assembled Pi-type matrix of one column group with indices d_j."""
    return assemble_pi(pi_blocks(indices, n, m), n, m)


def build_pi(table, dims):
    """
    Place ones on Pi_(-lambda_j) at the positions of the columns with index
    lambda_j.

    :param table: the IndexTable.
    :param dims: (p, q, n, m).
    """
    p, q, n, m = dims
    blocks = pi_blocks(table.mu, n, m)
    assembled = assemble_pi(blocks, n, m)
    groups = tuple(pi_from_indices(d, n, m) for d in index_groups(table.mu, p, q))
    return PiStructure(s=2 * (p + q), n=n, m=m, blocks=blocks, assembled=assembled, groups=groups)
