"""Deterministic CSV/JSON report writers and figure rendering.

Floats are rendered with 12 significant digits everywhere, so a rerun
with the same configuration and seed produces byte-identical delimited
output.  Figures are best-effort companions to the delimited data and
are not part of the byte-stability contract.
"""

from __future__ import annotations

import json
from pathlib import Path

__all__ = [
    "format_float",
    "stable_json_dumps",
    "write_csv",
    "write_json",
    "render_convergence_figure",
    "render_deviation_figure",
    "COVER_CSV_COLUMNS",
]

COVER_CSV_COLUMNS = (
    "schedule_param",
    "index",
    "alpha",
    "betti",
    "torsion_order",
    "log_torsion_normalized",
)


def format_float(x):
    """Fixed 12-significant-digit rendering used in all reports."""
    return f"{float(x):.12g}"


def _stabilize(obj):
    if isinstance(obj, float):
        return float(format_float(obj))
    if isinstance(obj, dict):
        return {k: _stabilize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stabilize(v) for v in obj]
    return obj


def stable_json_dumps(obj):
    return json.dumps(_stabilize(obj), sort_keys=True, indent=2) + "\n"


def write_json(path, obj):
    Path(path).write_text(stable_json_dumps(obj), encoding="utf-8")
    return Path(path)


def _cell(v):
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def write_csv(path, columns, rows):
    """Write dict rows under the given column order; header-only when empty."""
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell(row.get(c, "")) for c in columns))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return Path(path)


def _import_pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def render_convergence_figure(rows, target, out_path, *, ylabel="normalized log torsion", title=None):
    """Convergence plot of a per-cover column against its expected limit."""
    plt = _import_pyplot()
    xs = [row["index"] for row in rows]
    ys = [row["log_torsion_normalized"] for row in rows]
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    ax.plot(xs, ys, "o-", ms=4, lw=1.2, label="per-cover value")
    if target is not None:
        ax.axhline(target, color="crimson", lw=1.0, ls="--", label=f"target {target:.6g}")
    ax.set_xlabel("covering index")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150, metadata={"Software": None})
    plt.close(fig)
    return Path(out_path)


def render_deviation_figure(rows, out_path, *, title=None):
    """Scatter of Betti deviations against the index/alpha bound candidate."""
    plt = _import_pyplot()
    xs = [row["bound_candidate"] for row in rows]
    ys = [row["deviation"] for row in rows]
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    ax.scatter(xs, ys, s=14, alpha=0.7)
    lim = max(xs + [1.0])
    ax.plot([0, lim], [0, lim], color="gray", lw=0.8, ls=":", label="deviation = index/alpha")
    ax.set_xlabel("index / alpha")
    ax.set_ylabel("|betti - index * limit rank|")
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150, metadata={"Software": None})
    plt.close(fig)
    return Path(out_path)
