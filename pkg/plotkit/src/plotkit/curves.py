"""Runtime curves from a results CSV.

Input is the harness CSV with header
``benchmark,n,m,k,algo,N,pop_mult,seed,iterations,evaluations,covered``.
A curve is one (algorithm, population-size multiplier) group; its points are
the mean ``evaluations`` per problem size ``n``.  Classic curves are drawn
dashed, balanced curves solid.
"""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

RESULTS_HEADER = "benchmark,n,m,k,algo,N,pop_mult,seed,iterations,evaluations,covered"


class PlotDataError(ValueError):
    """The input CSV cannot be plotted (bad schema or empty filter result)."""


@dataclass(frozen=True)
class PlotSpec:
    input_csv: str
    benchmark: str
    output_path: str
    log_y: bool = False


@dataclass(frozen=True)
class Curve:
    algo: str
    pop_mult: float | None
    pop_size: int | None  # used for the label when no multiplier was recorded
    points: tuple[tuple[int, float], ...]  # (n, mean evaluations), sorted by n

    @property
    def label(self) -> str:
        if self.pop_mult is not None:
            return f"{self.algo} N={self.pop_mult:g}M"
        return f"{self.algo} N={self.pop_size}"

    @property
    def linestyle(self) -> str:
        return "--" if self.algo == "classic" else "-"


def read_rows(input_csv: str) -> list[dict]:
    with open(input_csv, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != RESULTS_HEADER.split(","):
            raise PlotDataError(
                f"unexpected CSV header {reader.fieldnames}; expected {RESULTS_HEADER!r}"
            )
        return list(reader)


def runtime_curves(input_csv: str, benchmark: str) -> list[Curve]:
    """Group the filtered rows into curves of mean evaluations versus n."""
    rows = [r for r in read_rows(input_csv) if r["benchmark"] == benchmark]
    if not rows:
        raise PlotDataError(f"no rows match benchmark filter {benchmark!r}")
    cells: dict[tuple, dict[int, list[int]]] = {}
    sizes: dict[tuple, int] = {}
    for row in rows:
        mult = float(row["pop_mult"]) if row["pop_mult"] else None
        key = (row["algo"], mult)
        cells.setdefault(key, {}).setdefault(int(row["n"]), []).append(int(row["evaluations"]))
        sizes[key] = int(row["N"])
    curves = []
    for (algo, mult) in sorted(cells, key=lambda k: (k[0], k[1] if k[1] is not None else -1.0)):
        by_n = cells[(algo, mult)]
        points = tuple((n, statistics.fmean(by_n[n])) for n in sorted(by_n))
        curves.append(Curve(algo=algo, pop_mult=mult, pop_size=sizes[(algo, mult)], points=points))
    return curves


def plot_runtime_curves(spec: PlotSpec) -> list[Curve]:
    """Render the curves for one benchmark to an SVG (or other matplotlib target)."""
    curves = runtime_curves(spec.input_csv, spec.benchmark)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for curve in curves:
        xs = [n for n, _ in curve.points]
        ys = [mean for _, mean in curve.points]
        ax.plot(xs, ys, linestyle=curve.linestyle, marker="o", label=curve.label)
    ax.set_xlabel("problem size n")
    ax.set_ylabel("average function evaluations")
    ax.set_title(spec.benchmark)
    if spec.log_y:
        ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(spec.output_path)
    plt.close(fig)
    return curves
