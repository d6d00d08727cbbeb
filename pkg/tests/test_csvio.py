import numpy as np
import pytest

from pairedfda.csvio import (
    paired_csv_text,
    paired_from_csv_text,
    read_paired_csv,
    write_paired_csv,
)
from pairedfda.errors import SchemaError
from pairedfda.simgen import SimConfig, generate_dataset, replicate_rng

HEADER = "subject,condition,s_0.0,s_0.5,s_1.0"


def sample_text(rows):
    return "\n".join([HEADER] + rows) + "\n"


class TestRoundTrip:
    def test_exact_round_trip_with_missing(self, tmp_path):
        cfg = SimConfig(n=9, S=14, rho=0.5, K=30, seed=91, missing_frac=0.12)
        paired = generate_dataset(replicate_rng(91, 0), cfg)
        path = tmp_path / "paired.csv"
        write_paired_csv(paired, path)
        back = read_paired_csv(path)
        for a, b in ((paired.condition0, back.condition0), (paired.condition1, back.condition1)):
            assert np.array_equal(a.values, b.values, equal_nan=True)
            assert np.array_equal(a.missing, b.missing)
            assert a.subject_ids == b.subject_ids
        assert np.array_equal(paired.grid.points, back.grid.points)

    def test_text_round_trip_preserves_order(self):
        rows = [
            "beta,0,1.0,2.0,3.0",
            "beta,1,1.5,2.5,3.5",
            "alpha,0,0.0,0.0,NA",
            "alpha,1,1.0,NA,1.0",
        ]
        paired = paired_from_csv_text(sample_text(rows))
        assert paired.subject_ids == ("beta", "alpha")
        again = paired_from_csv_text(paired_csv_text(paired))
        assert again.subject_ids == ("beta", "alpha")
        assert np.array_equal(
            paired.condition1.missing, again.condition1.missing
        )


class TestSchemaErrors:
    def test_empty_file(self):
        with pytest.raises(SchemaError):
            paired_from_csv_text("")

    def test_bad_header_prefix(self):
        with pytest.raises(SchemaError, match="header"):
            paired_from_csv_text("id,condition,s_0.0,s_1.0\n")

    def test_bad_grid_token(self):
        with pytest.raises(SchemaError, match="column 4"):
            paired_from_csv_text("subject,condition,s_0.0,s_abc\n")

    def test_bad_condition(self):
        text = sample_text(["a,2,1.0,1.0,1.0"])
        with pytest.raises(SchemaError, match="row 2"):
            paired_from_csv_text(text)

    def test_bad_cell_value(self):
        text = sample_text(["a,0,1.0,oops,1.0"])
        with pytest.raises(SchemaError, match="row 2, column 4"):
            paired_from_csv_text(text)

    def test_duplicate_condition(self):
        text = sample_text(["a,0,1,1,1", "a,0,2,2,2"])
        with pytest.raises(SchemaError, match="duplicate"):
            paired_from_csv_text(text)

    def test_missing_condition_row(self):
        text = sample_text(["a,0,1,1,1", "b,0,1,1,1", "b,1,1,1,1"])
        with pytest.raises(SchemaError, match="'a'"):
            paired_from_csv_text(text)

    def test_wrong_field_count(self):
        text = sample_text(["a,0,1,1"])
        with pytest.raises(SchemaError, match="expected 5 fields"):
            paired_from_csv_text(text)
