"""Provides figures of benchmark reports.

The figures compare planner time against the optimal plan length found by the
oracle, and the planner plan length against the oracle one.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import matplotlib
import matplotlib.pyplot as plt
import numpy as np
import typer
from rich import print

if TYPE_CHECKING:
    from pathlib import Path

    from matplotlib.figure import Figure

    from causalplan.benchmarks.core.harness import BenchmarkReport


class BenchmarkGraphics:
    """Generate figures from a benchmark report.

    Attributes:
        filetypes (dict[str, str]): A mapping of file extensions to matplotlib backends.
        report (BenchmarkReport): The report to draw.
        output_dir (Path): The directory where the figures are written.
        plot_functions (list): A list of methods responsible for generating plots.

    """

    filetypes = {"png": "AGG", "pdf": "PDF", "svg": "SVG"}

    def __init__(self, report: BenchmarkReport, output_dir: Path | None = None) -> None:
        """Initialize the graphics of a report.

        Args:
            report: The benchmark report.
            output_dir: Where to write figures, the family output directory by default.

        """
        self.report = report
        self.output_dir = output_dir or report.output_dir(report.family)
        self.plot_functions = [self.plot_time_by_length, self.plot_length_agreement]

    def export(self, overwrite: bool, format: str) -> list[Path]:
        """Generate and save the figures to a `_figures` subdirectory.

        Args:
            overwrite: If True, overwrite existing figure files without prompting.
            format: The file format for the exported figures (e.g., "png", "pdf", "svg").

        Returns:
            The paths of the saved figures.

        """
        matplotlib.use(self.filetypes[format])

        saved = []
        for plot_function in self.plot_functions:
            fig = plot_function()
            fig_name = plot_function.__name__.replace("plot_", "")
            fig.set_size_inches(12, 7)

            figure_dir = self.output_dir / "_figures"
            figure_dir.mkdir(exist_ok=True, parents=True)
            figure_path = figure_dir / f"{fig_name}.{format}"
            if figure_path.is_file() and not overwrite:
                if not typer.confirm(f"Found existing figure at {figure_path}, would you like to overwrite?"):
                    print(f"Figure {fig_name} not saved")
                    plt.close(fig)
                    continue

            fig.savefig(figure_path, bbox_inches="tight")
            print(f"Figure {fig_name} saved at {figure_path}")
            saved.append(figure_path)

            plt.close(fig)
        return saved

    def plot_time_by_length(self) -> Figure:
        """Planner wall time against the oracle optimal length."""
        records = [record for record in self.report.records if record.oracle_cost is not None]
        lengths = np.array([record.oracle_cost for record in records], dtype=float)
        times = np.array([record.wall_time for record in records], dtype=float)
        colors = ["tab:green" if record.agrees else "tab:red" for record in records]

        fig, ax = plt.subplots(1, 1, layout="constrained")
        ax.scatter(lengths, times, c=colors)
        ax.set_yscale("log")
        ax.set_xlabel("Optimal plan length (oracle)")
        ax.set_ylabel("Planner wall time (s)")
        fig.suptitle(f"{self.report.family}: planner time by plan length", fontsize=16)
        return fig

    def plot_length_agreement(self) -> Figure:
        """Planner plan length against the oracle optimal length."""
        records = [r for r in self.report.records if r.oracle_cost is not None and r.plan_cost is not None]
        oracle = np.array([record.oracle_cost for record in records], dtype=float)
        planner = np.array([record.plan_cost for record in records], dtype=float)

        fig, ax = plt.subplots(1, 1, layout="constrained")
        top = max([1.0, *oracle, *planner]) + 1
        ax.plot([0, top], [0, top], color="gray", linestyle="--")
        ax.scatter(oracle, planner)
        ax.set_xlabel("Optimal plan length (oracle)")
        ax.set_ylabel("Plan length (planner)")
        fig.suptitle(f"{self.report.family}: {self.report.agreement:.0%} agreement", fontsize=16)
        return fig
