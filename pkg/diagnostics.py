"""Human-readable, colored summaries of index tables, checks and oracle reports."""

from colorama import Fore, Style

from exact.matrix import format_rational


def format_section(title: str) -> str:
    return f"\n{Fore.MAGENTA}{Style.BRIGHT}=== {title} ==={Style.RESET_ALL}"


def format_value(label: str, value) -> str:
    return f"{Fore.BLUE}{label}:{Style.RESET_ALL} {Fore.GREEN}{value}{Style.RESET_ALL}"


def format_flag(label: str, ok: bool) -> str:
    color, word = (Fore.GREEN, "pass") if ok else (Fore.RED, "FAIL")
    return f"{Fore.BLUE}{label}:{Style.RESET_ALL} {color}{word}{Style.RESET_ALL}"


def format_matrix(matrix) -> str:
    cells = [[format_rational(x) for x in row] for row in matrix.entries]
    if not cells:
        return "  []"
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  [ " + " ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def format_index_table(table) -> str:
    lines = [format_section("Indices")]
    lines.append(format_value("alpha", table.alpha))
    lines.append(format_value("omega", table.omega))
    lines.append(format_value("mu", list(table.mu)))
    lines.append(format_value("distinct (lambda, nu)", list(table.distinct)))
    lines.append(format_value("dim N_k", " ".join(f"{k}:{v}" for k, v in sorted(table.d.items()))))
    lines.append(format_value("Delta_k", " ".join(f"{k}:{v}" for k, v in sorted(table.delta.items()))))
    return "\n".join(lines)


def format_checks(checks: dict) -> str:
    if not checks:
        return format_value("checks", "not run")
    lines = [format_section("Checks")]
    lines.extend(format_flag(name, ok) for name, ok in checks.items())
    return "\n".join(lines)


def format_result(result) -> str:
    """Summary of a TphResult: the matrix, invertibility, indices and checks."""
    lines = [format_section(f"T {'+' if result.sign == 'plus' else '-'} H")]
    lines.append(format_matrix(result.pinv))
    lines.append(format_value("invertible", result.invertible))
    if result.transposed:
        lines.append(format_value("solved via", "transposed problem"))
        lines.append(format_value("transposed indices", list(result.transposed_table.mu)))
    if result.det_const is not None:
        lines.append(format_value("det U_-", format_rational(result.det_const)))
    if result.table is not None:
        lines.append(format_index_table(result.table))
    lines.append(format_checks(result.checks))
    return "\n".join(lines)


def format_oracle_report(report) -> str:
    lines = [format_section("Oracle report")]
    labels = ("AXA = A", "XAX = X", "AX symmetric", "XA symmetric")
    lines.extend(format_flag(label, ok) for label, ok in zip(labels, report.satisfies_mp))
    lines.append(format_value("rank", report.rank))
    lines.append(format_value("invertible", report.invertible))
    return "\n".join(lines)
