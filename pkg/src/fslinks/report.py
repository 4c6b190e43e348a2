"""Delimited output and figure rendering for TV slope series."""

from __future__ import annotations

import json
from pathlib import Path

from fslinks.tqft.tv import TVSeries


def series_tsv(series: TVSeries) -> str:
    lines = ["r\ttv\tslope\ttail_min\ttarget"]
    tgt = "" if series.target is None else f"{series.target:.10f}"
    for p in series.points:
        slope = "" if p.slope is None else f"{p.slope:.10f}"
        tail = "" if p.tail_min is None else f"{p.tail_min:.10f}"
        lines.append(f"{p.r}\t{p.tv:.12e}\t{slope}\t{tail}\t{tgt}")
    return "\n".join(lines) + "\n"


def series_json(series: TVSeries, name: str) -> str:
    return json.dumps(
        {
            "schema_version": 1,
            "name": name,
            "target": series.target,
            "points": [
                {"r": p.r, "tv": p.tv, "slope": p.slope, "tail_min": p.tail_min}
                for p in series.points
            ],
        },
        indent=2,
    ) + "\n"


def render_slope_figure(series: TVSeries, path: Path, title: str) -> None:
    """Slope vs level, with the predicted-volume line when known."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rs = [p.r for p in series.points if p.slope is not None]
    slopes = [p.slope for p in series.points if p.slope is not None]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(rs, slopes, "o-", label="(2pi/r) log TV")
    if series.target is not None:
        ax.axhline(series.target, color="crimson", linestyle="--",
                   label=f"target {series.target:.4f}")
    ax.set_xlabel("level r (odd)")
    ax.set_ylabel("slope")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
