from fractions import Fraction

import pytest

from dynorient.report import (
    COLUMNS,
    MetricsRow,
    metrics_csv,
    read_metrics_csv,
    render_figures,
    summarize,
)


def test_header_only_for_empty_run():
    text = metrics_csv([])
    assert text == ",".join(COLUMNS) + "\n"
    assert len(COLUMNS) == 8
    assert summarize([])["updates"] == 0


def test_round_trip():
    rows = [MetricsRow(1, "+", 0, 3, 4, 2, Fraction(1, 2), 0),
            MetricsRow(2, "-", 2, 9, 1, 1, Fraction(1, 4), 2)]
    assert read_metrics_csv(metrics_csv(rows)) == rows
    s = summarize(rows, engine="basic")
    assert s["schema"] == 1 and s["engine"] == "basic"
    assert s["columns"]["recourse"] == {"max": 2, "mean": "1.000000", "total": 2}
    assert s["density_estimate"] == {"max": "1/2", "final": "1/4"}


def test_bad_csv():
    with pytest.raises(ValueError):
        read_metrics_csv("a,b\n")
    with pytest.raises(ValueError):
        read_metrics_csv(",".join(COLUMNS) + "\n1,+,0\n")


def test_figures(tmp_path):
    rows = [MetricsRow(i, "+", i % 3, i, i, i, Fraction(i, 4), i % 2) for i in range(1, 30)]
    paths = render_figures(rows, tmp_path / "figs")
    assert len(paths) == 4
    assert all(p.stat().st_size > 0 for p in paths)
