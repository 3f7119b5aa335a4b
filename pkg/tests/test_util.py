"""Tests for the shared helpers."""

import os

import numpy as np
import pytest

from snmfkit.util import atomic_write_text, relative_change


class TestRelativeChange:
    def test_basic_ratio(self):
        assert relative_change(np.array([2.0]), np.array([1.0])) == 1.0
        assert relative_change(np.ones((3, 2)), np.ones((3, 2))) == 0.0

    def test_matches_direct_norms(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            cur = rng.standard_normal((4, 3))
            prev = rng.standard_normal((4, 3))
            expected = np.linalg.norm(cur - prev) / np.linalg.norm(prev)
            assert relative_change(cur, prev) == pytest.approx(expected, rel=1e-15)

    def test_still_at_zero_counts_as_converged(self):
        zero = np.zeros((2, 2))
        assert relative_change(zero, zero) == 0.0

    def test_jumping_off_zero_never_converges(self):
        zero = np.zeros((2, 2))
        moved = zero.copy()
        moved[0, 0] = 1e-12
        assert relative_change(moved, zero) == np.inf


class TestAtomicWriteText:
    def test_writes_content(self, tmp_path):
        path = tmp_path / "out.txt"
        atomic_write_text(path, "hello\n")
        assert path.read_text() == "hello\n"

    def test_overwrites_existing(self, tmp_path):
        path = tmp_path / "out.txt"
        path.write_text("old")
        atomic_write_text(path, "new")
        assert path.read_text() == "new"

    def test_leaves_no_temp_files(self, tmp_path):
        path = tmp_path / "out.txt"
        atomic_write_text(path, "data")
        assert os.listdir(tmp_path) == ["out.txt"]
