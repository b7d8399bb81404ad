"""Per-update metrics rows, the CSV/JSON outputs, and optional figures."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import astuple, dataclass
from fractions import Fraction
from pathlib import Path

COLUMNS = ("update", "op", "chain_length", "arcs_touched", "bucket_moves",
           "max_out_degree", "density_estimate", "recourse")
SCHEMA = 1


@dataclass(frozen=True)
class MetricsRow:
    update: int
    op: str
    chain_length: int
    arcs_touched: int
    bucket_moves: int
    max_out_degree: int
    density_estimate: Fraction
    recourse: int


def metrics_csv(rows: list[MetricsRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow(astuple(row))
    return buf.getvalue()


def read_metrics_csv(text: str) -> list[MetricsRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != COLUMNS:
        raise ValueError(f"expected header {','.join(COLUMNS)}")
    rows = []
    for line, rec in enumerate(reader, 2):
        if len(rec) != len(COLUMNS):
            raise ValueError(f"line {line}: expected {len(COLUMNS)} fields, got {len(rec)}")
        u, op, chain, arcs, moves, top, est, rec_ = rec
        rows.append(MetricsRow(int(u), op, int(chain), int(arcs), int(moves), int(top),
                               Fraction(est), int(rec_)))
    return rows


def _stats(values: list) -> dict[str, str | int]:
    if not values:
        return {"max": 0, "mean": "0", "total": 0}
    total = sum(values)
    mean = Fraction(total) / len(values)
    return {"max": max(values), "mean": f"{float(mean):.6f}", "total": total}


def summarize(rows: list[MetricsRow], **extra) -> dict:
    """Maxima, means and totals of the numeric columns, plus caller fields.

    Means are written with six decimals and estimates as exact fractions so
    that identical runs give identical bytes.
    """
    summary: dict = {"schema": SCHEMA, "updates": len(rows)}
    summary.update(extra)
    summary["columns"] = {
        name: _stats([getattr(r, name) for r in rows])
        for name in ("chain_length", "arcs_touched", "bucket_moves", "max_out_degree",
                     "recourse")
    }
    estimates = [r.density_estimate for r in rows]
    summary["density_estimate"] = {
        "max": str(max(estimates, default=Fraction(0))),
        "final": str(estimates[-1] if estimates else Fraction(0)),
    }
    return summary


def summary_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True) + "\n"


def render_figures(rows: list[MetricsRow], directory: str | Path) -> list[Path]:
    """Write PNG line plots of the per-update columns; returns the paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    x = [r.update for r in rows]
    panels = [
        ("chain_length.png", "chain length", [r.chain_length for r in rows]),
        ("recourse.png", "reoriented arcs", [r.recourse for r in rows]),
        ("density_estimate.png", "max out-degree / b",
         [float(r.density_estimate) for r in rows]),
        ("bucket_moves.png", "bucket moves", [r.bucket_moves for r in rows]),
    ]
    written = []
    for name, label, y in panels:
        fig, ax = plt.subplots(figsize=(7, 3))
        ax.plot(x, y, linewidth=0.8)
        ax.set_xlabel("update")
        ax.set_ylabel(label)
        fig.tight_layout()
        path = out / name
        fig.savefig(path, dpi=100, metadata={"Software": None})
        plt.close(fig)
        written.append(path)
    return written
