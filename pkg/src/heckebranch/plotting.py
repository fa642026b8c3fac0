"""Matplotlib figures for CLI reports, written next to the JSON/CSV output."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "figure.figsize": (6.4, 3.6),
    "figure.dpi": 120,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
    "savefig.bbox": "tight",
}
ZERO_FLOOR = -60.0  # where exact zeros are drawn on the log axis
PASS_COLOR = "#3b7d3b"
FAIL_COLOR = "#b23a3a"


def figure_path(out: Path, tag: str) -> Path:
    return out.with_name(f"{out.stem}_{tag}.png")


def _save(fig, path: Path) -> Path:
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def _log_residual(text: str | None) -> float:
    if text is None:
        return float("nan")
    v = float(text)
    return math.log10(v) if v > 0 else ZERO_FLOOR


def plot_branch(report: dict, out: Path) -> list[Path]:
    with plt.rc_context(STYLE):
        fig, (left, right) = plt.subplots(1, 2, gridspec_kw={"width_ratios": [1, 2]}, layout="constrained")
        blocks = report.get("blocks", [])
        left.bar([b["label"] for b in blocks], [b["dim"] for b in blocks], color="#4a6fa5")
        left.set_title(f"blocks of {report['shape']}")
        left.set_ylabel("dimension")
        numeric = [c for c in report.get("checks", []) if c.get("kind") == "residual"]
        names = [c["name"] for c in numeric]
        vals = [_log_residual(c["value"]) for c in numeric]
        colors = [PASS_COLOR if c["status"] == "pass" else FAIL_COLOR for c in numeric]
        right.scatter(vals, range(len(vals)), c=colors, s=40, zorder=3)
        right.set_ylim(-0.5, max(len(vals), 1) - 0.5)
        right.set_yticks(range(len(vals)), names)
        tol = float(report.get("tolerance", "1e-25"))
        right.axvline(math.log10(tol), color="black", lw=0.8, ls="--", label="tolerance")
        right.set_xlabel(f"log10 residual (exact zero drawn at {ZERO_FLOOR:g})")
        right.legend(loc="lower right")
        fig.suptitle(f"{report['marker']} restriction")
        return [_save(fig, figure_path(out, "blocks"))]


def plot_basic_set(report: dict, out: Path) -> list[Path]:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        fams = sorted({r["family"] for r in report["irreducibles"]})
        for k, fam in enumerate(fams):
            degs = sorted(r["degree"] for r in report["irreducibles"] if r["family"] == fam)
            ax.scatter(degs, [k] * len(degs), s=30, alpha=0.7, label=fam)
        ax.set_yticks(range(len(fams)), fams)
        ax.set_xlabel("degree")
        ax.set_title(f"{report['marker']}, n = {report['n']}: "
                     f"sum deg^2 = {report['sum_deg_sq']} (target {report['target']})")
        return [_save(fig, figure_path(out, "degrees"))]


def plot_ranks(report: dict, out: Path) -> list[Path]:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        keys = ["all", "sharp", "natural", "flat", "dagger"]
        ax.bar(keys, [report["ranks"][k] for k in keys], color="#4a6fa5")
        ax.set_yscale("log")
        ax.set_ylabel("rank")
        ax.set_title(f"normal monomial counts, n = {report['n']}")
        return [_save(fig, figure_path(out, "ranks"))]


def plot_suite(report: dict, out: Path) -> list[Path]:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6.4, 1.8))
        rows = report["criteria"]
        colors = [PASS_COLOR if r["status"] == "pass" else FAIL_COLOR for r in rows]
        ax.bar([str(r["criterion"]) for r in rows], [1] * len(rows), color=colors)
        ax.set_yticks([])
        ax.grid(False)
        ax.set_xlabel("criterion")
        passed = sum(r["status"] == "pass" for r in rows)
        ax.set_title(f"acceptance matrix: {passed}/{len(rows)} pass")
        return [_save(fig, figure_path(out, "suite"))]


PLOTTERS = {
    "branch": plot_branch,
    "basic-set": plot_basic_set,
    "ranks": plot_ranks,
    "suite": plot_suite,
}


def plot_report(verb: str, report: dict, out: Path) -> list[Path]:
    fn = PLOTTERS.get(verb)
    return fn(report, Path(out)) if fn else []
