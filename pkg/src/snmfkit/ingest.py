"""File ingestion for the command-line tools.

Two plain-text formats are understood: dense points as comma-separated
rows ``f1,f2,...,fm[,label]`` (one point per line, optional single
header line, optional integer gold label in the last column), and
sparse symmetric matrices as whitespace-separated coordinate triplets

    n nnz
    i j value
    ...

with 0-based indices.  Each triplet states one symmetric entry: (i, j)
and (j, i) are the same entry, stated from either side (or both, as long
as the values agree).
"""

import numpy as np

from .exceptions import (
    AsymmetricConflictError,
    IndexOutOfRangeError,
    NegativeWeightError,
    ParseError,
    RaggedRowsError,
)
from .graph import DataSet
from .linalg import SparseSymMatrix


def ingest_points(path, labeled=False, header=False):
    """Parse a points CSV into a :class:`DataSet`.

    Parameters
    ----------
    path : str or Path
    labeled : bool
        Treat the last column as an integer gold label.
    header : bool
        Skip the first non-blank line.

    Raises
    ------
    RaggedRowsError
        When a row's field count disagrees with the first data row.
    ParseError
        On non-numeric fields, non-integer labels, or an empty file;
        carries the offending 1-based line number where applicable.
    """
    rows = []
    labels = []
    width = None
    skip_header = header
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if skip_header:
                skip_header = False
                continue
            fields = line.split(",")
            if width is None:
                width = len(fields)
                if labeled and width < 2:
                    raise ParseError(
                        "labeled rows need at least one feature and a label",
                        line=lineno,
                    )
            elif len(fields) != width:
                raise RaggedRowsError(
                    f"expected {width} fields, got {len(fields)}", line=lineno
                )
            try:
                values = [float(field) for field in fields]
            except ValueError:
                raise ParseError(f"non-numeric field in {line!r}", line=lineno) from None
            if labeled:
                if not values[-1].is_integer():
                    raise ParseError(
                        f"gold label must be an integer, got {values[-1]}",
                        line=lineno,
                    )
                labels.append(int(values[-1]))
                values = values[:-1]
            rows.append(values)
    if not rows:
        raise ParseError(f"no data rows in {path}")
    return DataSet(
        points=np.asarray(rows, dtype=np.float64),
        labels=np.asarray(labels, dtype=np.int64) if labeled else None,
    )


def ingest_adjacency(path):
    """Parse coordinate triplets into a validated :class:`SparseSymMatrix`.

    Raises
    ------
    NegativeWeightError
        On a negative edge value.
    IndexOutOfRangeError
        On an index outside [0, n).
    AsymmetricConflictError
        When (i, j) and (j, i) -- or a repeated (i, j) -- carry
        different values.
    ParseError
        On malformed lines or a triplet count that contradicts the
        header.
    """
    n = None
    expected = None
    entries = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            tokens = line.split()
            if n is None:
                if len(tokens) != 2:
                    raise ParseError(
                        f"header must be 'n nnz', got {line!r}", line=lineno
                    )
                try:
                    n, expected = int(tokens[0]), int(tokens[1])
                except ValueError:
                    raise ParseError(
                        f"header must hold two integers, got {line!r}", line=lineno
                    ) from None
                if n < 1 or expected < 0:
                    raise ParseError(f"nonsensical header {line!r}", line=lineno)
                continue
            if len(tokens) != 3:
                raise ParseError(f"expected 'i j value', got {line!r}", line=lineno)
            try:
                i, j, value = int(tokens[0]), int(tokens[1]), float(tokens[2])
            except ValueError:
                raise ParseError(f"malformed triplet {line!r}", line=lineno) from None
            if not np.isfinite(value):
                raise ParseError(f"non-finite value {value}", line=lineno)
            if value < 0.0:
                raise NegativeWeightError(f"negative weight {value}", line=lineno)
            if not (0 <= i < n and 0 <= j < n):
                raise IndexOutOfRangeError(
                    f"index ({i}, {j}) outside [0, {n})", line=lineno
                )
            key = (min(i, j), max(i, j))
            if key in entries and entries[key] != value:
                raise AsymmetricConflictError(
                    f"entry {key} already set to {entries[key]}, got {value}",
                    line=lineno,
                )
            entries[key] = value
    if n is None:
        raise ParseError(f"empty adjacency file {path}")
    if len(entries) != expected:
        raise ParseError(
            f"header promised {expected} entries, found {len(entries)} distinct"
        )
    rows, cols, values = [], [], []
    for (i, j), value in entries.items():
        rows.append(i)
        cols.append(j)
        values.append(value)
        if i != j:  # mirror off-diagonal entries
            rows.append(j)
            cols.append(i)
            values.append(value)
    return SparseSymMatrix.from_triplets(n, rows, cols, values)
