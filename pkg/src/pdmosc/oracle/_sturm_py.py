"""Pure numpy Sturm-sequence counts, vectorized across shifts."""

from __future__ import annotations

import numpy as np


def sturm_counts(diag, off2, shifts):
    """Number of eigenvalues below each shift.

    ``off2`` holds the squared off-diagonal entries (length n-1).
    """
    diag = np.asarray(diag, dtype=float)
    off2 = np.asarray(off2, dtype=float)
    x = np.asarray(shifts, dtype=float)
    q = diag[0] - x
    count = (q < 0).astype(np.int64)
    # a pivot near zero makes the next one +-inf, which still carries the right sign
    with np.errstate(over="ignore", divide="ignore"):
        for i in range(1, diag.size):
            q = np.where(q == 0.0, 1e-300, q)
            q = diag[i] - x - off2[i - 1] / q
            count += q < 0
    return count
