"""Figure rendering for sweep reports.

The CSV written by harness.sweep is the canonical artifact; these helpers
draw one PNG per (kind, name, neighborhood) group so a sweep can be eyeballed
without extra tooling: mean ratio against phi with the Hoeffding band, the
theory upper bound dashed, the construction-predicted lower bound dotted.
"""

from __future__ import annotations

import csv
import os
import re

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_NUMERIC = (
    "phi",
    "n",
    "m",
    "trials",
    "seed",
    "mean_ratio",
    "ci_low",
    "ci_high",
    "upper_bound",
    "predicted_lb",
    "event_frequency",
    "fallback_denominators",
)


def read_rows(path: str) -> list[dict]:
    """Read a sweep CSV back into row dicts (blank cells become None)."""
    rows = []
    with open(path, newline="") as handle:
        for raw in csv.DictReader(handle):
            row = dict(raw)
            for key in _NUMERIC:
                value = row.get(key, "")
                row[key] = float(value) if value not in ("", None) else None
            rows.append(row)
    return rows


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "-", text).strip("-").lower()


def render_sweep(rows: list[dict], out_dir: str) -> list[str]:
    """One PNG per (kind, name, neighborhood) group; returns written paths."""
    os.makedirs(out_dir, exist_ok=True)
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        key = (row["kind"], row["name"], row["neighborhood"])
        groups.setdefault(key, []).append(row)
    written = []
    for (kind, name, neighborhood), group in groups.items():
        group = sorted(group, key=lambda r: (r["phi"] is None, r["phi"]))
        xs = [r["phi"] if r["phi"] is not None else i for i, r in enumerate(group)]
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        means = [r["mean_ratio"] for r in group]
        if any(v is not None for v in means):
            ax.plot(xs, means, "o-", label="mean ratio")
            lows = [r["ci_low"] for r in group]
            highs = [r["ci_high"] for r in group]
            if all(v is not None for v in lows + highs):
                ax.fill_between(xs, lows, highs, alpha=0.2, label="Hoeffding CI")
        uppers = [r["upper_bound"] for r in group]
        if all(v is not None for v in uppers):
            ax.plot(xs, uppers, "--", color="tab:red", label="theory upper bound")
        predicted = [r["predicted_lb"] for r in group]
        if all(v is not None for v in predicted):
            ax.plot(xs, predicted, ":", color="tab:green", label="predicted lower bound")
        frequencies = [r["event_frequency"] for r in group]
        if all(v is not None for v in frequencies):
            twin = ax.twinx()
            twin.plot(xs, frequencies, "s-", color="tab:gray", alpha=0.5)
            twin.set_ylabel("event frequency", color="tab:gray")
            twin.set_ylim(0.0, 1.05)
        ax.set_xlabel("phi")
        ax.set_ylabel("makespan ratio")
        ax.set_title(f"{name} ({neighborhood})")
        ax.legend(loc="best", fontsize=8)
        fig.tight_layout()
        path = os.path.join(out_dir, f"{kind}-{_slug(name)}-{_slug(neighborhood)}.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written
