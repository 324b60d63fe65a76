"""
JSON file formats for problems, dense matrices and results.

Rationals travel as strings ("num/den" or an integer); plain JSON integers are
accepted on input, floating literals never are.
"""

import json
import logging
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from analysis.sequence import TphProblem
from errors import ParseError, ShapeMismatch
from exact.matrix import ExactMatrix, format_rational

logger = logging.getLogger(__name__)

RATIONAL_PATTERN = re.compile(r"^-?[0-9]+(/[0-9]+)?$")


def parse_rational(value, where="entry"):
    """
    Read one exact scalar from a JSON value.

    Args:
        value: a JSON string such as "-3/4" or "7", or a JSON integer.
        where (str): location used in error messages.

    Returns:
        Fraction: the value in lowest terms.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{where}: {value!r} is not an exact rational")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a rational string, got {type(value).__name__}")
    text = value.strip()
    if not RATIONAL_PATTERN.match(text):
        raise ParseError(f"{where}: {value!r} is not of the form num/den")
    numerator, _, denominator = text.partition("/")
    if denominator and int(denominator) == 0:
        raise ParseError(f"{where}: zero denominator in {value!r}")
    return Fraction(int(numerator), int(denominator or 1))


def _natural(data, key):
    value = data.get(key)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(f"Header field {key!r} must be a non-negative integer, got {value!r}")
    return value


def parse_grid(grid, rows, cols, where):
    if not isinstance(grid, list) or len(grid) != rows:
        raise ParseError(f"{where}: expected {rows} rows")
    parsed = []
    for i, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"{where}: row {i} must hold {cols} entries")
        parsed.append([parse_rational(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return ExactMatrix(parsed, rows, cols)


def problem_from_dict(data):
    """Build a TphProblem from the decoded JSON of a problem file."""
    if not isinstance(data, dict):
        raise ParseError("A problem file must hold a JSON object")
    p, q, n, m = (_natural(data, key) for key in ("p", "q", "n", "m"))
    count = n + m + 1
    blocks = {}
    for key, first in (("a", -m), ("b", 0)):
        raw = data.get(key)
        if not isinstance(raw, list) or len(raw) != count:
            raise ParseError(f"Field {key!r} must list {count} blocks")
        blocks[key] = tuple(parse_grid(blk, p, q, f"{key}_{first + idx}") for idx, blk in enumerate(raw))
    try:
        return TphProblem(p, q, n, m, blocks["a"], blocks["b"])
    except ShapeMismatch as exc:
        raise ParseError(str(exc)) from exc


def problem_to_dict(prob):
    return {
        "p": prob.p,
        "q": prob.q,
        "n": prob.n,
        "m": prob.m,
        "a": [blk.to_strings() for blk in prob.a],
        "b": [blk.to_strings() for blk in prob.b],
    }


def matrix_from_dict(data):
    if not isinstance(data, dict):
        raise ParseError("A matrix file must hold a JSON object")
    rows, cols = _natural(data, "rows"), _natural(data, "cols")
    return parse_grid(data.get("entries"), rows, cols, "entries")


def matrix_to_dict(matrix):
    return {"rows": matrix.rows, "cols": matrix.cols, "entries": matrix.to_strings()}


def read_json(path):
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as exc:
        raise ParseError(f"Cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"Invalid JSON in {path}: {exc}") from exc


def write_json(data, path=None):
    """Write ``data`` to ``path``, or to stdout when no path is given."""
    text = json.dumps(data, indent=2)
    if path is None:
        sys.stdout.write(text + "\n")
        return
    Path(path).write_text(text + "\n", encoding="utf-8")
    logger.info("wrote %s", path)


def load_problem(path):
    return problem_from_dict(read_json(path))


def save_problem(prob, path):
    write_json(problem_to_dict(prob), path)


def load_matrix(path):
    return matrix_from_dict(read_json(path))


def save_matrix(matrix, path=None, **extra):
    write_json({**matrix_to_dict(matrix), **extra}, path)


def _int_keys(mapping):
    return {int(k): v for k, v in mapping.items()}


def table_summary(table):
    """Indices, defects and multiplicities of an IndexTable as plain JSON values."""
    return {
        "indices": list(table.mu),
        "alpha": table.alpha,
        "omega": table.omega,
        "distinct": [list(pair) for pair in table.distinct],
    }


@dataclass
class ResultFile:
    """
    Machine-readable outcome of ``analyze`` and ``pinv``.

    ``pinv`` is a grid of rational strings, or None for ``analyze``. The index
    fields describe the problem as given; after the transpose fallback
    ``transposed_table`` summarizes the transposed problem that was solved.
    """

    status: str
    indices: list
    alpha: int
    omega: int
    distinct: list = field(default_factory=list)
    kernel_dims: dict = field(default_factory=dict)
    delta: dict = field(default_factory=dict)
    sign: str = None
    pinv: list = None
    invertible: bool = None
    transposed: bool = False
    det_const: str = None
    checks: dict = field(default_factory=dict)
    transposed_table: dict = None

    @classmethod
    def from_table(cls, table, status="ok"):
        return cls(
            status=status,
            **table_summary(table),
            kernel_dims=dict(table.d),
            delta=dict(table.delta),
        )

    @classmethod
    def from_result(cls, result):
        """ResultFile of a TphResult; the zero short-circuit leaves the index fields empty."""
        status = "ok" if result.checks_passed else "check_failed"
        if result.table is None:
            record = cls(status=status, indices=[], alpha=0, omega=0)
        else:
            record = cls.from_table(result.table, status)
        record.sign = result.sign
        record.pinv = result.pinv.to_strings()
        record.invertible = result.invertible
        record.transposed = result.transposed
        if result.transposed_table is not None:
            record.transposed_table = table_summary(result.transposed_table)
        record.det_const = None if result.det_const is None else format_rational(result.det_const)
        record.checks = dict(result.checks)
        return record

    def to_dict(self):
        return {
            "status": self.status,
            "sign": self.sign,
            "pinv": self.pinv,
            "indices": self.indices,
            "alpha": self.alpha,
            "omega": self.omega,
            "distinct": self.distinct,
            "kernel_dims": {str(k): v for k, v in self.kernel_dims.items()},
            "delta": {str(k): v for k, v in self.delta.items()},
            "invertible": self.invertible,
            "transposed": self.transposed,
            "transposed_table": self.transposed_table,
            "det_const": self.det_const,
            "checks": self.checks,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                status=data["status"],
                indices=list(data["indices"]),
                alpha=data["alpha"],
                omega=data["omega"],
                distinct=[list(pair) for pair in data.get("distinct", [])],
                kernel_dims=_int_keys(data.get("kernel_dims", {})),
                delta=_int_keys(data.get("delta", {})),
                sign=data.get("sign"),
                pinv=data.get("pinv"),
                invertible=data.get("invertible"),
                transposed=data.get("transposed", False),
                transposed_table=data.get("transposed_table"),
                det_const=data.get("det_const"),
                checks=dict(data.get("checks", {})),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"Malformed result file: {exc}") from exc

    @classmethod
    def from_json(cls, text):
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"Invalid JSON: {exc}") from exc

    def pinv_matrix(self):
        """The pinv grid parsed back into an ExactMatrix."""
        rows = len(self.pinv)
        cols = len(self.pinv[0]) if rows else 0
        return parse_grid(self.pinv, rows, cols, "pinv")
