"""Small shared helpers."""

import os
import tempfile

import numpy as np


def relative_change(current, previous):
    """Frobenius-relative change ``||current - previous|| / ||previous||``.

    A zero previous iterate maps to 0.0 when the current iterate is also
    zero and to +inf otherwise, so "still at zero" counts as converged
    while "jumped off zero" never passes a tolerance test.
    """
    current = np.asarray(current, dtype=np.float64)
    previous = np.asarray(previous, dtype=np.float64)
    denom = np.linalg.norm(previous)
    if denom == 0.0:
        return 0.0 if np.linalg.norm(current) == 0.0 else np.inf
    return float(np.linalg.norm(current - previous) / denom)


def atomic_write_text(path, text):
    """Write ``text`` to ``path`` through a temp file + rename.

    Readers never observe a half-written file; the rename is atomic on
    POSIX filesystems.
    """
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
