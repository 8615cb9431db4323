import csv
import io
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..errors import OutputError
from ..models.stats import FrequencyTable
from ..stats.goodness import binomial_sigma, chi_square
from ..stats.tables import COLUMN_LABELS, ComparisonTable

ROUNDS_HEADERS = ["k", "n", "trials", "mean_rounds", "max_rounds", "bound"]
BENCH_HEADERS = ["algorithm", "n", "trials", "seconds", "selections_per_second"]


def _writer(buf: io.StringIO):
    # fixed line endings keep output byte-identical across platforms
    return csv.writer(buf, lineterminator="\n")


def _max_abs_z(table: FrequencyTable, sigma: np.ndarray) -> float:
    """Largest |empirical - F_i| in binomial standard errors over indices with sigma > 0."""
    deviation = np.abs(np.asarray(table.empirical) - table.expected.as_array())
    spread = sigma > 0
    return float((deviation[spread] / sigma[spread]).max()) if spread.any() else 0.0


def _summary_line(label: str, table: FrequencyTable, sigma: np.ndarray,
                  analytic: Optional[np.ndarray] = None) -> str:
    fit = chi_square(table)
    line = (f"# {label}: tv_distance={fit.tv_distance:.6f} chi_square={fit.chi_square:.4f} "
            f"dof={fit.degrees_of_freedom} p_value={fit.p_value:.4g} max_abs_z={_max_abs_z(table, sigma):.3f}")
    if analytic is not None:
        model_tv = 0.5 * float(np.abs(np.asarray(table.empirical) - analytic).sum())
        line += f" tv_from_exact_bias={model_tv:.6f}"
    return line


def render_comparison_csv(table: ComparisonTable) -> str:
    """Rows `i,f_i,F_i,<algorithm columns>` followed by '#' summary lines."""
    labels = [COLUMN_LABELS[name] for name in table.tables]
    freqs = list(table.tables.values())
    rows = len(table.fitness) if table.display_rows is None else min(table.display_rows, len(table.fitness))

    buf = io.StringIO()
    writer = _writer(buf)
    writer.writerow(["i", "f_i", "F_i"] + labels)
    for i in range(rows):
        writer.writerow(
            [i, f"{table.fitness[i]:g}", f"{table.expected.values[i]:.6f}"]
            + [f"{t.empirical[i]:.6f}" for t in freqs]
        )

    trials = freqs[0].trials if freqs else 0
    buf.write(f"# trials={trials} n={len(table.fitness)}\n")
    if not freqs:
        return buf.getvalue()

    # one binomial standard error per row; F_i +- 5 sigma is the agreement band
    sigma = np.asarray(binomial_sigma(freqs[0]))
    buf.write("# sigma: " + ",".join(f"{s:.3e}" for s in sigma[:rows]) + "\n")
    exact_bias = table.independent_expected.as_array() if table.independent_expected is not None else None
    for name, label, t in zip(table.tables, labels, freqs):
        analytic = exact_bias if name == "independent" else None
        buf.write(_summary_line(label, t, sigma, analytic) + "\n")
    return buf.getvalue()


def render_rows_csv(headers: Sequence[str], rows: List[Dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(headers), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def render_rounds_csv(rows: List[Dict[str, Any]]) -> str:
    formatted = [dict(r, mean_rounds=f"{r['mean_rounds']:.4f}") for r in rows]
    return render_rows_csv(ROUNDS_HEADERS, formatted)


def render_bench_csv(rows: List[Dict[str, Any]]) -> str:
    formatted = [
        dict(r, seconds=f"{r['seconds']:.3f}", selections_per_second=f"{r['selections_per_second']:.1f}")
        for r in rows
    ]
    return render_rows_csv(BENCH_HEADERS, formatted)


def write_text(text: str, path: str):
    """Write rendered output; failures surface as OutputError."""
    try:
        with open(Path(path), "w", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"Cannot write output to {path}: {e.strerror or e}", {"path": path})
