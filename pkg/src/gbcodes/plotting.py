"""Figure rendering for sweep and threshold reports.

Figures are written straight to files (Agg backend) next to the
delimited output they illustrate; the CSV/JSON remains the primary
record.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .sim import SimResult, ThresholdEstimate  # noqa: E402

__all__ = ["plot_sweep", "plot_threshold"]

_MARKERS = "osD^vPX*"


def _grouped(results: list[SimResult]) -> dict[str, list[SimResult]]:
    by_code: dict[str, list[SimResult]] = {}
    for r in results:
        by_code.setdefault(r.code_id, []).append(r)
    for rs in by_code.values():
        rs.sort(key=lambda r: r.p_phys)
    return by_code


def plot_sweep(results: list[SimResult], path: str,
               title: str | None = None) -> None:
    """Log-log logical vs physical error rate, one curve per code, with
    Wilson 95% error bars; zero-failure points are dropped from the log
    axes."""
    by_code = _grouped(results)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    order = sorted(by_code, key=lambda c: (by_code[c][0].d or 0, c))
    for i, code_id in enumerate(order):
        rs = [r for r in by_code[code_id] if r.failures > 0]
        if not rs:
            continue
        ps = [r.p_phys for r in rs]
        pl = [r.p_log for r in rs]
        lo = [max(r.p_log - r.ci_lo, 0.0) for r in rs]
        hi = [max(r.ci_hi - r.p_log, 0.0) for r in rs]
        label = code_id if rs[0].d is None else f"{code_id} (d={rs[0].d})"
        ax.errorbar(ps, pl, yerr=[lo, hi], marker=_MARKERS[i % len(_MARKERS)],
                    ms=4, lw=1, capsize=2, label=label)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(r"physical error rate $p_{\mathrm{phys}}$")
    ax.set_ylabel(r"logical error rate $p_{\mathrm{log}}$")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_threshold(results: list[SimResult], estimate: ThresholdEstimate,
                   path: str, title: str | None = None) -> None:
    """Sweep curves plus the estimated crossing (line) and its bootstrap
    confidence band."""
    by_code = _grouped(results)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    order = sorted(by_code, key=lambda c: (by_code[c][0].d or 0, c))
    for i, code_id in enumerate(order):
        rs = [r for r in by_code[code_id] if r.failures > 0]
        if not rs:
            continue
        label = code_id if rs[0].d is None else f"{code_id} (d={rs[0].d})"
        ax.plot([r.p_phys for r in rs], [r.p_log for r in rs],
                marker=_MARKERS[i % len(_MARKERS)], ms=4, lw=1, label=label)
    ax.axvspan(estimate.ci_lo, estimate.ci_hi, color="gray", alpha=0.25,
               label="95% CI")
    ax.axvline(estimate.value, color="black", lw=1, ls="--",
               label=f"threshold ≈ {estimate.value:.3f}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(r"physical error rate $p_{\mathrm{phys}}$")
    ax.set_ylabel(r"logical error rate $p_{\mathrm{log}}$")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
