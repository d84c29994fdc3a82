"""Optional SVG charts rendered from experiment CSV text.

Presentation only; nothing here feeds back into the numerics.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path


def _rows(csv_text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(csv_text)))


def plot_payload_sweep(csv_text: str, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = _rows(csv_text)
    labels = [r["config"] for r in rows]
    ratios = [float(r["payload_ratio"]) for r in rows]

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(range(len(labels)), ratios, color="tab:blue")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("payload ratio N / sum(N_p)")
    ax.set_title("Feedback payload ratio per factorization")
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def plot_adr_sweep(csv_text: str, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = _rows(csv_text)
    labels = sorted({r["config"] for r in rows})
    k_grid = sorted({float(r["k_db"]) for r in rows})

    fig, ax = plt.subplots(figsize=(7, 4.5))
    first = labels[0]
    base_cont = [
        float(r["adr_baseline_cont"]) for k in k_grid for r in rows
        if r["config"] == first and float(r["k_db"]) == k
    ]
    base_quant = [
        float(r["adr_baseline_quant"]) for k in k_grid for r in rows
        if r["config"] == first and float(r["k_db"]) == k
    ]
    ax.plot(k_grid, base_cont, "k-", label="baseline (continuous)")
    ax.plot(k_grid, base_quant, "k--", label="baseline (quantized)")
    for label in labels:
        ys = [
            float(r["adr_proposed"]) for k in k_grid for r in rows
            if r["config"] == label and float(r["k_db"]) == k
        ]
        ax.plot(k_grid, ys, marker="o", markersize=3, label=label)
    ax.set_xlabel("Rician factor K (dB)")
    ax.set_ylabel("mean ADR (bps/Hz)")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
