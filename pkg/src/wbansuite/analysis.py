"""Randomness analysis of the per-frame selection draws.

Replays the exact draw sequences the endpoints use (reference frame,
field, tone for the long-haul scheme; table frame, field, key for the
body-side scheme) and reports coverage plus raw chi-square statistics.
Thresholds are left to callers; the numbers here are judgment-free.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .config import ProtocolConfig, simulation_config
from .iamkeys import ReferenceFrameList, choose_seed, make_dummy_reference_frames
from .kemesis import make_dummy_table
from .rng import new_selector, pick_index, pick_uniform


@dataclass(frozen=True)
class IamkeysDraw:
    frame: int
    ref_index: int
    field_index: int
    tone: int


@dataclass(frozen=True)
class KemesisDraw:
    frame: int
    frame_no: int
    field_no: int
    key_used: int


def run_iamkeys_selection(frames: int, seed: int = 1,
                          config: ProtocolConfig | None = None) -> list[IamkeysDraw]:
    """Draw sequence of a long-haul sender: reference, field, then tone."""
    config = config or simulation_config()
    ref_list = ReferenceFrameList(make_dummy_reference_frames(config))
    selector = new_selector(seed)
    draws = []
    for i in range(1, frames + 1):
        ref_frame, field_no, _seed, selector = choose_seed(ref_list, selector)
        tone_ix, selector = pick_uniform(selector, 5)
        draws.append(IamkeysDraw(i, ref_list.frames.index(ref_frame),
                                 field_no, tone_ix + 1))
    return draws


def run_kemesis_selection(frames: int, seed: int = 1,
                          config: ProtocolConfig | None = None) -> list[KemesisDraw]:
    """Draw sequence of a body-side sender: table frame, field, then key."""
    config = config or simulation_config()
    # The table itself does not influence which indices get drawn, but
    # building it keeps this path aligned with a real endpoint setup.
    make_dummy_table(config)
    selector = new_selector(seed)
    draws = []
    for i in range(1, frames + 1):
        frame_no, selector = pick_index(selector, config.kemesis_frames)
        field_no, selector = pick_index(selector, config.kemesis_fields)
        key_used, selector = pick_uniform(selector, 2)
        draws.append(KemesisDraw(i, frame_no, field_no, key_used))
    return draws


def chi_square(values: list[int], categories: int) -> tuple[float, int]:
    """Raw chi-square statistic of observed counts against uniformity.

    Returns (statistic, degrees of freedom). The caller picks quantiles.
    """
    if categories < 2:
        raise ValueError("chi-square needs at least two categories")
    counts = Counter(values)
    expected = len(values) / categories
    stat = sum(
        (counts.get(i, 0) - expected) ** 2 / expected for i in range(categories)
    )
    return stat, categories - 1


@dataclass(frozen=True)
class SelectionStat:
    label: str
    statistic: float
    df: int
    samples: int
    observed_values: int


def randomness_summary(iamkeys_draws: list[IamkeysDraw],
                       kemesis_draws: list[KemesisDraw],
                       config: ProtocolConfig | None = None) -> list[SelectionStat]:
    """Chi-square per selection dimension; omitted for degenerate samples."""
    config = config or simulation_config()
    stats = []
    dims = [
        ("iamkeys/ref_index", [d.ref_index for d in iamkeys_draws], config.ref_list_size),
        ("iamkeys/field_index", [d.field_index for d in iamkeys_draws], config.hashable_count),
        ("kemesis/frame_no", [d.frame_no for d in kemesis_draws], config.kemesis_frames),
        ("kemesis/field_no", [d.field_no for d in kemesis_draws], config.kemesis_fields),
    ]
    for label, values, categories in dims:
        if len(values) < 2:
            continue
        stat, df = chi_square(values, categories)
        stats.append(SelectionStat(label, stat, df, len(values), len(set(values))))
    return stats


def write_randomness_csv(path: str | Path, iamkeys_draws: list[IamkeysDraw],
                         kemesis_draws: list[KemesisDraw]) -> Path:
    """One row per frame and scheme: chosen indices plus tone or key flag."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fh:
        fh.write("scheme,frame,frame_or_ref_index,field_index,tone_or_key_used\n")
        for d in iamkeys_draws:
            fh.write(f"iamkeys,{d.frame},{d.ref_index},{d.field_index},{d.tone}\n")
        for d in kemesis_draws:
            fh.write(f"kemesis,{d.frame},{d.frame_no},{d.field_no},{d.key_used}\n")
    return path
