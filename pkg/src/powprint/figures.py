"""Figure rendering for CLI reports.

Every plotting entry point takes an output path and writes a PNG next to
whatever delimited output the command produced.  Rendering is headless
(Agg) and uses a fixed style so repeated runs produce the same image.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .scenario import GasPriceSeries, ScenarioReport, series_stats

_STYLE = {
    "figure.figsize": (8.0, 4.5),
    "figure.dpi": 110,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 10,
}


def _finish(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def save_revenue_plot(
    path: str | Path,
    blocks: Sequence[int],
    values: Sequence[float],
    *,
    ylabel: str = "Cumulative revenue (USD)",
    title: str | None = None,
) -> Path:
    """Line plot of a per-block value series, e.g. cumulative revenue."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot(blocks, values, lw=1.4, color="#1f6f8b")
        ax.set_xlabel("Block")
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        return _finish(fig, path)


def save_gas_price_plot(path: str | Path, series: GasPriceSeries) -> Path:
    """Day curve of gas prices with the daily average marked."""
    stats = series_stats(series)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot(series.timestamps, series.prices, lw=1.2, color="#2a9d8f")
        ax.axhline(
            stats.average,
            ls="--",
            color="#555555",
            lw=1.0,
            label=f"daily average {stats.average:.2f} Gwei",
        )
        ax.set_xlabel("Time of day (UTC)")
        ax.set_ylabel("Gas price (Gwei)")
        fig.autofmt_xdate()
        ax.legend(loc="upper right")
        return _finish(fig, path)


def save_scenario_plot(path: str | Path, report: ScenarioReport) -> Path:
    """Horizontal bars of per-item emissions for a scenario report."""
    labels = [f"{line.kind} x{line.count}" for line in report.lines]
    values = [line.emissions for line in report.lines]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        positions = range(len(labels))
        ax.barh(list(positions), values, color="#e76f51")
        ax.set_yticks(list(positions), labels)
        ax.invert_yaxis()
        ax.set_xlabel("Emissions (kgCO2eq)")
        ax.set_title(
            f"Total {report.total_emissions:.2f} kgCO2eq "
            f"at {report.gas_price:.2f} Gwei"
        )
        return _finish(fig, path)
