"""Figure rendering for the CLI report paths.

Each report command writes its delimited data first; these helpers add
matplotlib renderings of the same numbers next to it. Rendering is
headless (Agg) so runs work in batch environments.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .analysis import IamkeysDraw, KemesisDraw  # noqa: E402


def save_selection_figure(path: str | Path, title: str,
                          frames: list[int], primary: list[int], fields: list[int],
                          primary_label: str, primary_range: int,
                          field_range: int) -> Path:
    """Scatter of chosen indices per frame, one panel per dimension."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(8, 5), sharex=True)
    ax1.scatter(frames, primary, s=8, color="tab:blue")
    ax1.set_ylabel(primary_label)
    ax1.set_yticks(range(primary_range))
    ax1.set_title(title)
    ax2.scatter(frames, fields, s=8, color="tab:orange")
    ax2.set_ylabel("field index")
    ax2.set_yticks(range(field_range))
    ax2.set_xlabel("frame")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def save_iamkeys_selection_figure(path: str | Path, draws: list[IamkeysDraw],
                                  ref_range: int, field_range: int) -> Path:
    return save_selection_figure(
        path, "Reference frame and field selection (long-haul scheme)",
        [d.frame for d in draws], [d.ref_index for d in draws],
        [d.field_index for d in draws], "reference index", ref_range, field_range,
    )


def save_kemesis_selection_figure(path: str | Path, draws: list[KemesisDraw],
                                  frame_range: int, field_range: int) -> Path:
    return save_selection_figure(
        path, "Dummy frame and field selection (body-side scheme)",
        [d.frame for d in draws], [d.frame_no for d in draws],
        [d.field_no for d in draws], "dummy frame index", frame_range, field_range,
    )


def save_opcount_figure(path: str | Path, rows: list[dict]) -> Path:
    """Grouped bars of encryption/decryption totals per operating scenario."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    labels = [f"{r['scheme']}\n{r['scenario']}" for r in rows]
    enc = [r["encryption"] for r in rows]
    dec = [r["decryption"] for r in rows]
    x = range(len(rows))
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.bar([i - 0.2 for i in x], enc, width=0.4, label="encryption")
    ax.bar([i + 0.2 for i in x], dec, width=0.4, label="decryption")
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels)
    ax.set_ylabel("logical operations per frame")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def save_event_counts_figure(path: str | Path, counts: dict[str, int]) -> Path:
    """Horizontal bars of trace event counts for one scenario run."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    items = sorted(counts.items())
    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.35 * len(items))))
    ax.barh([k for k, _ in items], [v for _, v in items], color="tab:green")
    ax.set_xlabel("events")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
