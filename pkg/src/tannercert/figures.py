"""Render experiment report figures to PNG files next to the delimited output."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

DPI = 150


def _cost_histogram(records, path: Path) -> None:
    costs = [float(Fraction(r.c_star)) for r in records if r.c_star]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if costs:
        ax.hist(costs, bins=min(40, max(10, len(costs) // 10)), color="#4878cf",
                edgecolor="white")
    ax.axvline(0.0, color="#d1495b", linewidth=1.2, label="certification threshold")
    ax.set_xlabel("minimum relative tree cost c*")
    ax.set_ylabel("trials")
    ax.set_title("Certificate margin distribution")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def _outcome_bars(records, summary: dict, path: Path) -> None:
    labels = ["trials", "certified", "boundary"]
    values = [summary["trials"], summary["certified"], summary["boundary"]]
    ml_ok = sum(1 for r in records if r.ml_match and r.ml_unique)
    lp_ok = sum(1 for r in records if r.lp_integral and r.lp_unique and r.lp_match)
    labels += ["ML unique match", "LP unique integral", "violations"]
    values += [ml_ok, lp_ok, summary["ml_violations"] + summary["cover_violations"]]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    bars = ax.barh(range(len(labels)), values, color="#6aa84f")
    ax.set_yticks(range(len(labels)), labels)
    ax.invert_yaxis()
    ax.bar_label(bars, padding=3, fontsize=8)
    ax.set_xlabel("count")
    ax.set_title("Trial outcomes")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def _timing_plot(records, path: Path) -> None:
    trials = [r.trial for r in records]
    cert_ms = [r.certifier_ns / 1e6 for r in records]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(trials, cert_ms, ".", markersize=4, label="certifier", color="#4878cf")
    lp_pts = [(r.trial, r.lp_ns / 1e6) for r in records if r.lp_ns]
    if lp_pts:
        ax.plot(*zip(*lp_pts), ".", markersize=4, label="LP decode", color="#e1812c")
    ax.set_yscale("log")
    ax.set_xlabel("trial")
    ax.set_ylabel("wall time [ms]")
    ax.set_title("Per-trial decoder timings")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def render_experiment_figures(records, summary: dict, out_dir: Path) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, renderer in (
        ("cost_histogram.png", lambda p: _cost_histogram(records, p)),
        ("outcomes.png", lambda p: _outcome_bars(records, summary, p)),
        ("timings.png", lambda p: _timing_plot(records, p)),
    ):
        target = out_dir / name
        renderer(target)
        paths.append(target)
    return paths
