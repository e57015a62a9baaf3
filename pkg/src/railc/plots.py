"""Figure rendering for campaign outputs (headless matplotlib)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["plot_output_progression", "plot_error_progression", "render_campaign_figures"]


def plot_output_progression(records, r, y_max, title, path) -> None:
    """Output trajectories of every trial, the reference and the bound."""
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    cmap = plt.get_cmap("viridis")
    n = np.arange(len(r))
    for i, rec in enumerate(records):
        color = cmap(i / max(len(records) - 1, 1))
        label = f"trial {rec.j}" if i in (0, len(records) - 1) else None
        ax.plot(n, rec.y, color=color, linewidth=1.0, label=label)
    ax.plot(n, r, "k--", linewidth=1.5, label="reference")
    ax.axhline(y_max, color="crimson", linestyle=":", linewidth=1.5, label="bound")
    ax.axhline(-y_max, color="crimson", linestyle=":", linewidth=1.5)
    ax.set_xlabel("sample")
    ax.set_ylabel("output")
    ax.set_title(title)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_error_progression(summaries: dict, path) -> None:
    """Error norms per trial (log scale) and the reference-scale progression."""
    fig, (ax_err, ax_a) = plt.subplots(
        2, 1, figsize=(7.0, 5.0), sharex=True, height_ratios=[2, 1]
    )
    for label, summary in summaries.items():
        js = [rec.j for rec in summary.per_trial]
        ax_err.semilogy(js, [rec.norm_e2 for rec in summary.per_trial], "o-", label=label)
        ax_a.plot(js, summary.a_progression, "s-", label=label)
    ax_err.set_ylabel(r"$\|e_j\|_2$")
    ax_err.legend(fontsize=8)
    ax_a.set_ylabel(r"$a_j$")
    ax_a.set_xlabel("trial")
    ax_a.set_ylim(-0.05, 1.05)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_campaign_figures(out_dir, cfg, result) -> None:
    out_dir = Path(out_dir)
    if result.railc is not None and result.railc.per_trial:
        plot_output_progression(
            result.railc.per_trial,
            cfg.r,
            cfg.y_max,
            "Output progression (reference-adapting ILC)",
            out_dir / "fig_outputs_railc.png",
        )
    if result.conventional is not None and result.conventional.per_trial:
        plot_output_progression(
            result.conventional.per_trial,
            cfg.r,
            cfg.y_max,
            "Output progression (conventional ILC)",
            out_dir / "fig_outputs_conventional.png",
        )
    summaries = {}
    if result.railc is not None and result.railc.per_trial:
        summaries["railc"] = result.railc
    if result.conventional is not None and result.conventional.per_trial:
        summaries["conventional"] = result.conventional
    if summaries:
        plot_error_progression(summaries, out_dir / "fig_error_norms.png")
