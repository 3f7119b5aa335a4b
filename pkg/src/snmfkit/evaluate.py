"""Cluster assignment, optimal label matching, and synthetic datasets.

A factor matrix assigns point i to the cluster holding the largest
entry of row i.  Because cluster indices are arbitrary, accuracy against
gold labels is scored under the best cluster-to-class bijection, found
by solving the assignment problem on the label-overlap count matrix:

    AC = 100/n * max_pi sum_i [ gold_i == pi(pred_i) ].

The synthetic generators (gaussian blobs, concentric rings, interleaved
moons) produce labeled desk-scale datasets for the end-to-end tests and
demos; given the same spec and seed they return bitwise-identical data.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .exceptions import DimensionMismatchError, InvalidKError, LengthMismatchError
from .graph import DataSet
from .util import atomic_write_text

_KINDS = ("blobs", "rings", "moons")


@dataclass(frozen=True)
class ClusterAssignment:
    """Hard cluster labels for n points."""

    labels: np.ndarray
    n: int

    def to_csv(self, path):
        """Write the labels as a one-column CSV of integers."""
        atomic_write_text(path, "".join(f"{int(c)}\n" for c in self.labels))


@dataclass(frozen=True)
class AccuracyReport:
    """AC score in [0, 100], the optimal cluster->class mapping, and the
    number of points matched under it."""

    ac: float
    mapping: dict
    matched: int


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for a labeled synthetic dataset.

    kind is one of blobs / rings / moons; the dataset holds
    n_per_cluster points for each of k clusters.  noise is the standard
    deviation of the Gaussian jitter for blobs and moons, and the
    half-width of the uniform radial jitter for rings (rings stay
    disjoint whenever noise < half the unit ring gap).
    """

    kind: str
    n_per_cluster: int
    k: int
    noise: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.k < 1:
            raise InvalidKError(f"k must be >= 1, got {self.k}")
        if self.kind == "moons" and self.k != 2:
            raise InvalidKError("moons datasets have exactly 2 clusters")
        if self.n_per_cluster < 1:
            raise ValueError("n_per_cluster must be >= 1")
        if self.noise < 0.0:
            raise ValueError("noise must be >= 0")


def assign_clusters(l):
    """Row-wise argmax assignment; ties go to the lowest column index."""
    l = np.asarray(l)
    if l.ndim != 2 or l.shape[1] < 1:
        raise DimensionMismatchError(f"expected an n x k factor, got shape {l.shape}")
    labels = np.argmax(l, axis=1).astype(np.int64)  # argmax takes first maximum
    return ClusterAssignment(labels=labels, n=l.shape[0])


def best_mapping(pred, gold):
    """Score predicted labels against gold labels under the best bijection.

    Builds the overlap-count matrix between the two labelings (padded
    with zero rows/columns to square if the label sets differ in size),
    solves the maximum-weight assignment on it, and reports
    AC = 100 * matched / n.  The returned mapping pairs each predicted
    label with its assigned gold label, restricted to labels that
    actually occur on both sides.

    Parameters
    ----------
    pred : ClusterAssignment or integer array, shape (n,)
    gold : integer array, shape (n,)

    Returns
    -------
    AccuracyReport
    """
    pred_labels = pred.labels if isinstance(pred, ClusterAssignment) else pred
    pred_labels = np.asarray(pred_labels)
    gold = np.asarray(gold)
    if pred_labels.shape != gold.shape or pred_labels.ndim != 1:
        raise LengthMismatchError(
            f"label vectors of shapes {pred_labels.shape} and {gold.shape}"
        )
    n = pred_labels.size
    if n == 0:
        raise LengthMismatchError("cannot score empty labelings")
    pred_values, pred_ids = np.unique(pred_labels, return_inverse=True)
    gold_values, gold_ids = np.unique(gold, return_inverse=True)
    if pred_values.size > 64 or gold_values.size > 64:
        raise ValueError("more than 64 distinct labels on one side")
    size = max(pred_values.size, gold_values.size)
    counts = np.zeros((size, size), dtype=np.int64)
    np.add.at(counts, (pred_ids, gold_ids), 1)
    rows, cols = linear_sum_assignment(-counts)  # negate: max-weight matching
    matched = int(counts[rows, cols].sum())
    mapping = {
        int(pred_values[r]): int(gold_values[c])
        for r, c in zip(rows, cols)
        if r < pred_values.size and c < gold_values.size
    }
    return AccuracyReport(ac=100.0 * matched / n, mapping=mapping, matched=matched)


def _blob_centers(k):
    if k == 1:
        return np.zeros((1, 2))
    if k == 2:
        return np.array([[0.0, 0.0], [1.0, 0.0]])
    # regular k-gon with unit side, so the minimum center spacing is 1
    radius = 0.5 / np.sin(np.pi / k)
    angles = 2.0 * np.pi * np.arange(k) / k
    return radius * np.column_stack([np.cos(angles), np.sin(angles)])


def generate(spec):
    """Materialize a :class:`SyntheticSpec` into a labeled DataSet.

    blobs: isotropic Gaussian clusters at centers spaced >= 1 apart.
    rings: concentric circles of radii 1..k with uniform angles and
    uniform radial jitter in [-noise, noise].
    moons: two interleaved half-circles with Gaussian jitter.
    """
    rng = np.random.default_rng(spec.seed)
    per = spec.n_per_cluster
    chunks = []
    if spec.kind == "blobs":
        for center in _blob_centers(spec.k):
            chunks.append(center + spec.noise * rng.standard_normal((per, 2)))
    elif spec.kind == "rings":
        for ring in range(spec.k):
            theta = rng.uniform(0.0, 2.0 * np.pi, per)
            radius = ring + 1.0 + rng.uniform(-spec.noise, spec.noise, per)
            chunks.append(np.column_stack([radius * np.cos(theta), radius * np.sin(theta)]))
    else:  # moons
        for half in range(2):
            t = rng.uniform(0.0, np.pi, per)
            if half == 0:
                arc = np.column_stack([np.cos(t), np.sin(t)])
            else:
                arc = np.column_stack([1.0 - np.cos(t), 0.5 - np.sin(t)])
            chunks.append(arc + spec.noise * rng.standard_normal((per, 2)))
    points = np.concatenate(chunks, axis=0)
    labels = np.repeat(np.arange(spec.k, dtype=np.int64), per)
    return DataSet(points=points, labels=labels)
