"""Selection-draw analysis: coverage, chi-square, CSV output."""

import pytest

from wbansuite.analysis import (
    chi_square,
    randomness_summary,
    run_iamkeys_selection,
    run_kemesis_selection,
    write_randomness_csv,
)
from wbansuite.config import simulation_config

# chi-square 0.999 quantile at 15 degrees of freedom (frozen from tables).
CHI2_Q999_DF15 = 37.697


def test_iamkeys_selection_covers_everything_in_100_frames():
    draws = run_iamkeys_selection(100, seed=1)
    assert len(draws) == 100
    assert {d.ref_index for d in draws} == set(range(5))
    assert {d.field_index for d in draws} == set(range(4))
    assert {d.tone for d in draws} <= set(range(1, 6))


def test_kemesis_selection_covers_everything_in_1000_frames():
    draws = run_kemesis_selection(1000, seed=1)
    assert {d.frame_no for d in draws} == set(range(16))
    assert {d.field_no for d in draws} == set(range(8))
    assert {d.key_used for d in draws} == {0, 1}
    stat, df = chi_square([d.frame_no for d in draws], 16)
    assert df == 15
    assert stat < CHI2_Q999_DF15


def test_chi_square_on_perfectly_uniform_counts():
    stat, df = chi_square([0, 1, 2, 3] * 25, 4)
    assert (stat, df) == (0.0, 3)
    with pytest.raises(ValueError):
        chi_square([0, 0], 1)


def test_summary_reports_all_four_dimensions():
    iam = run_iamkeys_selection(100, seed=2)
    kem = run_kemesis_selection(100, seed=2)
    stats = randomness_summary(iam, kem)
    assert [s.label for s in stats] == [
        "iamkeys/ref_index", "iamkeys/field_index",
        "kemesis/frame_no", "kemesis/field_no",
    ]
    assert [s.df for s in stats] == [4, 3, 15, 7]
    assert all(s.samples == 100 for s in stats)


def test_summary_omits_degenerate_single_frame():
    iam = run_iamkeys_selection(1, seed=2)
    kem = run_kemesis_selection(1, seed=2)
    assert randomness_summary(iam, kem) == []


def test_selection_is_deterministic_per_seed():
    assert run_iamkeys_selection(50, seed=9) == run_iamkeys_selection(50, seed=9)
    assert run_kemesis_selection(50, seed=9) == run_kemesis_selection(50, seed=9)
    assert run_iamkeys_selection(50, seed=9) != run_iamkeys_selection(50, seed=10)


def test_realistic_profile_ranges():
    config = simulation_config("realistic")
    draws = run_kemesis_selection(200, seed=1, config=config)
    assert all(0 <= d.frame_no < 256 for d in draws)
    assert all(0 <= d.field_no < 16 for d in draws)


def test_csv_writer_shape(tmp_path):
    iam = run_iamkeys_selection(5, seed=1)
    kem = run_kemesis_selection(7, seed=1)
    path = write_randomness_csv(tmp_path / "randomness.csv", iam, kem)
    lines = path.read_text().splitlines()
    assert lines[0] == "scheme,frame,frame_or_ref_index,field_index,tone_or_key_used"
    assert len(lines) == 1 + 5 + 7
    assert lines[1].startswith("iamkeys,1,")
    assert lines[6].startswith("kemesis,1,")
