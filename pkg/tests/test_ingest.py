"""Tests for the plain-text input formats.

Error cases carry 1-based physical line numbers (blank lines and the
header still count), so several tests pin the exact number reported.
"""

import numpy as np
import pytest

from snmfkit.exceptions import (
    AsymmetricConflictError,
    IndexOutOfRangeError,
    NegativeWeightError,
    ParseError,
    RaggedRowsError,
)
from snmfkit.ingest import ingest_adjacency, ingest_points


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestIngestPoints:
    def test_basic_rows(self, tmp_path):
        path = write(tmp_path, "pts.csv", "1.0,2.0\n3.5,-4.0\n")
        ds = ingest_points(path)
        assert np.array_equal(ds.points, [[1.0, 2.0], [3.5, -4.0]])
        assert ds.labels is None

    def test_header_skipped(self, tmp_path):
        path = write(tmp_path, "pts.csv", "x,y\n1,2\n3,4\n")
        ds = ingest_points(path, header=True)
        assert ds.points.shape == (2, 2)
        assert ds.points[0, 0] == 1.0

    def test_header_flag_skips_first_nonblank(self, tmp_path):
        path = write(tmp_path, "pts.csv", "\n\nx,y\n5,6\n")
        ds = ingest_points(path, header=True)
        assert np.array_equal(ds.points, [[5.0, 6.0]])

    def test_labeled_last_column(self, tmp_path):
        path = write(tmp_path, "pts.csv", "0.0,1.0,0\n2.0,3.0,1\n4.0,5.0,1\n")
        ds = ingest_points(path, labeled=True)
        assert ds.points.shape == (3, 2)
        assert ds.labels.tolist() == [0, 1, 1]

    def test_blank_lines_ignored(self, tmp_path):
        path = write(tmp_path, "pts.csv", "\n1,2\n\n\n3,4\n\n")
        assert ingest_points(path).points.shape == (2, 2)

    def test_ragged_row_reports_physical_line(self, tmp_path):
        path = write(tmp_path, "pts.csv", "1,2\n\n3,4,5\n")
        with pytest.raises(RaggedRowsError, match="expected 2 fields, got 3") as info:
            ingest_points(path)
        assert info.value.line == 3  # the blank line still counts

    def test_non_numeric_field(self, tmp_path):
        path = write(tmp_path, "pts.csv", "1,2\n3,oops\n")
        with pytest.raises(ParseError, match="line 2: non-numeric field"):
            ingest_points(path)

    def test_non_integer_label(self, tmp_path):
        path = write(tmp_path, "pts.csv", "1,2,0\n3,4,1.5\n")
        with pytest.raises(ParseError, match="gold label must be an integer"):
            ingest_points(path, labeled=True)

    def test_labeled_needs_a_feature_column(self, tmp_path):
        path = write(tmp_path, "pts.csv", "7\n8\n")
        with pytest.raises(ParseError, match="at least one feature"):
            ingest_points(path, labeled=True)

    def test_empty_file(self, tmp_path):
        path = write(tmp_path, "pts.csv", "")
        with pytest.raises(ParseError, match="no data rows"):
            ingest_points(path)

    def test_header_only_file(self, tmp_path):
        path = write(tmp_path, "pts.csv", "x,y\n\n")
        with pytest.raises(ParseError, match="no data rows"):
            ingest_points(path, header=True)

    def test_single_row(self, tmp_path):
        path = write(tmp_path, "pts.csv", "1,2,3\n")
        assert ingest_points(path).points.shape == (1, 3)


class TestIngestAdjacency:
    def test_round_trip(self, tmp_path):
        path = write(tmp_path, "adj.txt", "3 3\n0 1 0.5\n1 2 0.25\n0 0 2.0\n")
        m = ingest_adjacency(path)
        expected = np.array(
            [[2.0, 0.5, 0.0], [0.5, 0.0, 0.25], [0.0, 0.25, 0.0]]
        )
        assert np.array_equal(m.to_dense(), expected)

    def test_entries_mirror(self, tmp_path):
        path = write(tmp_path, "adj.txt", "2 1\n1 0 0.75\n")
        dense = ingest_adjacency(path).to_dense()
        assert dense[0, 1] == 0.75 and dense[1, 0] == 0.75

    def test_duplicate_equal_statements_accepted(self, tmp_path):
        # (0,1) and (1,0) describe the same entry; equal values are fine
        # and count once against the header
        path = write(tmp_path, "adj.txt", "2 1\n0 1 0.5\n1 0 0.5\n")
        dense = ingest_adjacency(path).to_dense()
        assert dense[0, 1] == 0.5

    def test_conflicting_statements_rejected(self, tmp_path):
        path = write(tmp_path, "adj.txt", "2 1\n0 1 0.5\n1 0 0.6\n")
        with pytest.raises(AsymmetricConflictError, match=r"\(0, 1\) already set") as info:
            ingest_adjacency(path)
        assert info.value.line == 3

    def test_negative_weight(self, tmp_path):
        path = write(tmp_path, "adj.txt", "2 1\n0 1 -0.5\n")
        with pytest.raises(NegativeWeightError, match="negative weight"):
            ingest_adjacency(path)

    def test_index_out_of_range(self, tmp_path):
        path = write(tmp_path, "adj.txt", "2 1\n0 2 0.5\n")
        with pytest.raises(IndexOutOfRangeError, match=r"\(0, 2\) outside \[0, 2\)"):
            ingest_adjacency(path)
        path = write(tmp_path, "adj2.txt", "2 1\n-1 0 0.5\n")
        with pytest.raises(IndexOutOfRangeError):
            ingest_adjacency(path)

    def test_header_must_be_two_tokens(self, tmp_path):
        path = write(tmp_path, "adj.txt", "3\n0 1 0.5\n")
        with pytest.raises(ParseError, match="header must be 'n nnz'"):
            ingest_adjacency(path)

    def test_header_must_be_integers(self, tmp_path):
        path = write(tmp_path, "adj.txt", "three 3\n")
        with pytest.raises(ParseError, match="two integers"):
            ingest_adjacency(path)

    def test_nonsensical_header(self, tmp_path):
        path = write(tmp_path, "adj.txt", "0 3\n")
        with pytest.raises(ParseError, match="nonsensical header"):
            ingest_adjacency(path)
        path = write(tmp_path, "adj2.txt", "3 -1\n")
        with pytest.raises(ParseError, match="nonsensical header"):
            ingest_adjacency(path)

    def test_malformed_triplets(self, tmp_path):
        path = write(tmp_path, "adj.txt", "2 1\n0 1\n")
        with pytest.raises(ParseError, match="expected 'i j value'"):
            ingest_adjacency(path)
        path = write(tmp_path, "adj2.txt", "2 1\n0 x 0.5\n")
        with pytest.raises(ParseError, match="malformed triplet"):
            ingest_adjacency(path)

    def test_non_finite_value(self, tmp_path):
        path = write(tmp_path, "adj.txt", "2 1\n0 1 nan\n")
        with pytest.raises(ParseError, match="non-finite"):
            ingest_adjacency(path)
        path = write(tmp_path, "adj2.txt", "2 1\n0 1 inf\n")
        with pytest.raises(ParseError, match="non-finite"):
            ingest_adjacency(path)

    def test_count_mismatch(self, tmp_path):
        path = write(tmp_path, "adj.txt", "3 3\n0 1 0.5\n1 2 0.5\n")
        with pytest.raises(ParseError, match="promised 3 entries, found 2"):
            ingest_adjacency(path)

    def test_empty_file(self, tmp_path):
        path = write(tmp_path, "adj.txt", "\n\n")
        with pytest.raises(ParseError, match="empty adjacency file"):
            ingest_adjacency(path)

    def test_blank_lines_ignored(self, tmp_path):
        path = write(tmp_path, "adj.txt", "\n2 1\n\n0 1 0.5\n\n")
        assert ingest_adjacency(path).nnz == 2  # mirrored off-diagonal
