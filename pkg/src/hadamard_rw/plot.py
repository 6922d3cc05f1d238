"""
SVG charts of a run table written by :func:`hadamard_rw.experiment.write_csv`.

Output is byte-identical for identical input: the SVG id salt is fixed and
the date metadata is dropped.
"""

import csv
import io
from pathlib import Path
from typing import Dict, Optional, Sequence

import numpy as np

__all__ = ["PlotError", "read_table", "render_svg", "plot_csv"]


class PlotError(ValueError):
    """Input table is missing, empty or lacks the requested columns."""


def read_table(path) -> Dict[str, np.ndarray]:
    """Load a run CSV into ``{column: float array}``."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PlotError(f"cannot read {path}: {exc}") from exc
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    rows = [r for r in reader if r]
    if not header or not rows:
        raise PlotError(f"{path} holds no data rows")
    if header[0] != "site":
        raise PlotError(f"{path}: first column must be 'site', got {header[0]!r}")
    try:
        data = np.array(rows, dtype=np.float64)
    except ValueError as exc:
        raise PlotError(f"{path}: non-numeric entry ({exc})") from exc
    return {name: data[:, i] for i, name in enumerate(header)}


def render_svg(table: Dict[str, np.ndarray], title: Optional[str] = None) -> str:
    """
    Draw one panel per coin state with the quantum-walk curve (thick) under
    the chain-derived curve (thin), plus a panel of chain rows when present.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    site = table["site"]
    panels = []
    for k in (0, 1):
        cols = [c for c in (f"p{k}_qw", f"p{k}_rw") if c in table]
        if cols:
            panels.append((f"|{k}> state distribution", cols))
    rows = [c for c in ("row1", "row2", "row3", "row4") if c in table]
    if rows:
        panels.append(("chain rows", rows))
    if not panels:
        raise PlotError("table has no plottable columns")

    styles = {
        "p0_qw": dict(color="tab:red", lw=4, label="QW"),
        "p1_qw": dict(color="tab:red", lw=4, label="QW"),
        "p0_rw": dict(color="tab:green", lw=2, label="RW"),
        "p1_rw": dict(color="tab:green", lw=2, label="RW"),
        "row1": dict(lw=1.5, label="|0>"),
        "row2": dict(lw=1.5, label="|1>"),
        "row3": dict(lw=1.5, label="-|1>"),
        "row4": dict(lw=1.5, label="-|0>"),
    }
    with matplotlib.rc_context({"svg.hashsalt": "hadamard-rw", "svg.fonttype": "path"}):
        fig, axes = plt.subplots(len(panels), 1, figsize=(7, 2.6 * len(panels)),
                                 sharex=True, squeeze=False)
        for ax, (name, cols) in zip(axes[:, 0], panels):
            for c in cols:
                ax.plot(site, table[c], **styles[c])
            ax.set_title(name)
            ax.grid(True)
            ax.legend(loc="upper right")
        axes[-1, 0].set_xlabel("site")
        if title:
            fig.suptitle(title)
        fig.tight_layout()
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()


def plot_csv(csv_path, svg_path, title: Optional[str] = None) -> None:
    """Render ``csv_path`` to ``svg_path``; nothing is written on error."""
    svg = render_svg(read_table(csv_path), title=title)
    Path(svg_path).write_text(svg)
